#include "syncmat/harness.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace syncmat::golden_data {
extern const char* const kari;
extern const char* const cerny4;
extern const char* const roman;
}  // namespace syncmat::golden_data

namespace syncmat {

Dfa build_cerny(int n) {
  if (n < 2) throw std::invalid_argument("build_cerny: need n >= 2");
  std::vector<State> a(n), b(n);
  for (State s = 1; s <= n; ++s) {
    a[s - 1] = s % n + 1;
    b[s - 1] = (s == 1) ? 2 : s;
  }
  return Dfa(n, "ab", {std::move(a), std::move(b)});
}

Dfa build_kari() {
  // figure states 0..5 shifted to 1..6
  return Dfa(6, "ab",
             {{2, 3, 1, 5, 6, 4},    // a: two 3-cycles
              {4, 2, 3, 1, 5, 1}});  // b: swaps 1 and 4, folds 6 onto 1
}

Dfa build_roman() {
  return Dfa(5, "abc",
             {{3, 1, 1, 4, 5},    // a
              {1, 3, 2, 4, 5},    // b: swaps 2 and 3
              {4, 2, 5, 1, 3}});  // c
}

namespace {

std::vector<std::vector<std::string>> golden_tokens(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  auto flush = [&] {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    if (!toks.empty()) rows.push_back(std::move(toks));
    line.clear();
  };
  for (char c : text) {
    if (c == '\n')
      flush();
    else
      line += c;
  }
  flush();
  return rows;
}

}  // namespace

GoldenTable parse_golden(std::string_view text) {
  GoldenTable table;
  for (const auto& toks : golden_tokens(text)) {
    const std::string& key = toks[0];
    if (key == "golden") {
      if (toks.size() != 2) throw std::runtime_error("golden parse: bad id line");
      table.id = toks[1];
    } else if (key == "n") {
      table.n = std::stoi(toks.at(1));
    } else if (key == "q") {
      table.q = std::stoi(toks.at(1));
    } else if (key == "alphabet") {
      table.alphabet = toks.at(1);
    } else if (key == "sync") {
      table.sync_word = Word(toks.at(1));
    } else if (key == "line") {
      if (toks.size() != 3 && toks.size() != 5)
        throw std::runtime_error("golden parse: bad line arity");
      GoldenLine line;
      line.word = Word(toks[1]);
      line.printed = StateSet::parse(toks[2]);
      if (toks.size() == 5) {
        if (toks[3] == "actual")
          line.actual = StateSet::parse(toks[4]);
        else if (toks[3] == "divergent")
          line.divergent = StateSet::parse(toks[4]);
        else
          throw std::runtime_error("golden parse: unknown annotation " + toks[3]);
      }
      table.lines.push_back(std::move(line));
    } else {
      throw std::runtime_error("golden parse: unknown key " + key);
    }
  }
  if (table.n < 1 || table.q < 1 || table.q > table.n)
    throw std::runtime_error("golden parse: missing or bad n/q");
  for (const auto& line : table.lines)
    if (line.printed.universe() != table.n)
      throw std::runtime_error("golden parse: vector width mismatch");
  return table;
}

std::string serialize_golden(const GoldenTable& table) {
  std::ostringstream out;
  out << "golden " << table.id << '\n';
  out << "n " << table.n << '\n';
  out << "q " << table.q << '\n';
  out << "alphabet " << table.alphabet << '\n';
  out << "sync " << table.sync_word.str() << '\n';
  for (const auto& line : table.lines) {
    out << "line " << line.word.str() << ' ' << line.printed.to_string();
    if (line.actual) out << " actual " << line.actual->to_string();
    if (line.divergent) out << " divergent " << line.divergent->to_string();
    out << '\n';
  }
  return out.str();
}

const GoldenTable& golden_kari() {
  static const GoldenTable table = parse_golden(golden_data::kari);
  return table;
}

const GoldenTable& golden_cerny4() {
  static const GoldenTable table = parse_golden(golden_data::cerny4);
  return table;
}

const GoldenTable& golden_roman() {
  static const GoldenTable table = parse_golden(golden_data::roman);
  return table;
}

ReplayResult replay_golden(const Dfa& dfa, const GoldenTable& table) {
  if (dfa.state_count() != table.n)
    throw std::invalid_argument("replay_golden: automaton size mismatch");
  ReplayResult result;
  const StateSet full = StateSet::full(table.n);
  for (std::size_t i = 0; i < table.lines.size(); ++i) {
    const GoldenLine& line = table.lines[i];
    ++result.lines;
    StateSet computed = apply(dfa, full, line.word);
    if (line.divergent) {
      ++result.divergent;
      if (computed != *line.divergent || computed == line.printed)
        result.failures.push_back(static_cast<int>(i + 1));
      continue;
    }
    const StateSet& expected = line.actual ? *line.actual : line.printed;
    if (computed == expected)
      ++result.verbatim;
    else
      result.failures.push_back(static_cast<int>(i + 1));
  }
  return result;
}

ChainReport independent_chain(const Dfa& dfa, const GoldenTable& table) {
  if (dfa.state_count() != table.n)
    throw std::invalid_argument("independent_chain: automaton size mismatch");
  if (!table.alphabet.empty() && table.alphabet != dfa.alphabet())
    throw std::invalid_argument("independent_chain: alphabet mismatch");
  const StateSet full = StateSet::full(table.n);
  std::vector<std::pair<Word, StateSet>> lines;
  lines.reserve(table.lines.size());
  for (const auto& line : table.lines) {
    StateSet computed = apply(dfa, full, line.word);
    if (line.divergent) {
      if (computed != *line.divergent)
        throw std::invalid_argument("independent_chain: corrected vector is wrong for '" +
                                    line.word.str() + "'");
      lines.emplace_back(line.word, computed);
      continue;
    }
    if (line.actual) {
      // the annotation must match the automaton; containment of the printed
      // substitute is recorded per line by the walker, not enforced here
      if (computed != *line.actual || computed == line.printed)
        throw std::invalid_argument(
            "independent_chain: substitution annotation is wrong for '" +
            line.word.str() + "'");
    } else if (computed != line.printed) {
      throw std::invalid_argument("independent_chain: table vector is wrong for '" +
                                  line.word.str() + "'");
    }
    lines.emplace_back(line.word, line.printed);
  }
  return chain_over_sets(dfa, table.q, table.sync_word, lines);
}

namespace {

constexpr int kCensusMaxStates = 12;

struct ShardState {
  CensusReport report;
};

// Lean census kernel over raw tables: img[l * n + (s-1)] = image - 1.
struct CensusKernel {
  int n, k;
  std::vector<int> img;
  std::vector<int> dist;
  std::vector<std::uint32_t> frontier;
  std::vector<std::vector<int>> state_perms;   // perm[old] = new, 0-based
  std::vector<std::vector<int>> letter_perms;  // 0-based
  bool dedup;

  CensusKernel(int n_, int k_, bool dedup_) : n(n_), k(k_), dedup(dedup_) {
    img.resize(std::size_t(k) * n);
    dist.assign(std::size_t{1} << n, -1);
    if (dedup) {
      std::vector<int> p(n);
      for (int i = 0; i < n; ++i) p[i] = i;
      do
        state_perms.push_back(p);
      while (std::next_permutation(p.begin(), p.end()));
      std::vector<int> lp(k);
      for (int i = 0; i < k; ++i) lp[i] = i;
      do
        letter_perms.push_back(lp);
      while (std::next_permutation(lp.begin(), lp.end()));
    }
  }

  void decode(long long code) {
    for (std::size_t d = 0; d < img.size(); ++d) {
      img[d] = static_cast<int>(code % n);
      code /= n;
    }
  }

  bool strongly_connected() const {
    std::uint32_t fw = 1;
    for (;;) {
      std::uint32_t nf = fw;
      for (int s = 0; s < n; ++s)
        if (fw & (1u << s))
          for (int l = 0; l < k; ++l) nf |= 1u << img[std::size_t(l) * n + s];
      if (nf == fw) break;
      fw = nf;
    }
    if (fw != (1u << n) - 1) return false;
    std::uint32_t bw = 1;
    for (;;) {
      std::uint32_t nb = bw;
      for (int s = 0; s < n; ++s)
        for (int l = 0; l < k; ++l)
          if (bw & (1u << img[std::size_t(l) * n + s])) nb |= 1u << s;
      if (nb == bw) break;
      bw = nb;
    }
    return bw == (1u << n) - 1;
  }

  // shortest reset length or -1
  int shortest_reset() {
    const std::uint32_t full = (1u << n) - 1;
    if (n == 1) return 0;
    std::fill(dist.begin(), dist.end(), -1);
    frontier.clear();
    frontier.push_back(full);
    dist[full] = 0;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      std::uint32_t cur = frontier[head];
      for (int l = 0; l < k; ++l) {
        std::uint32_t im = 0;
        for (int s = 0; s < n; ++s)
          if (cur & (1u << s)) im |= 1u << img[std::size_t(l) * n + s];
        if (dist[im] >= 0) continue;
        dist[im] = dist[cur] + 1;
        if ((im & (im - 1)) == 0) return dist[im];
        frontier.push_back(im);
      }
    }
    return -1;
  }

  // true when this table is the minimum of its isomorphism orbit
  bool is_canonical_form(long long code) {
    std::string self, best;
    self.reserve(img.size());
    for (std::size_t d = 0; d < img.size(); ++d) self += char('0' + img[d]);
    (void)code;
    for (const auto& sp : state_perms)
      for (const auto& lp : letter_perms) {
        std::string enc(img.size(), '0');
        for (int l = 0; l < k; ++l)
          for (int s = 0; s < n; ++s)
            enc[std::size_t(l) * n + sp[s]] =
                char('0' + sp[img[std::size_t(lp[l]) * n + s]]);
        if (best.empty() || enc < best) best = enc;
        if (best < self) return false;
      }
    return best == self;
  }
};

CensusReport census_shard(int n, int k, long long lo, long long hi,
                          const CensusOptions& options) {
  CensusReport r;
  r.n = n;
  r.k = k;
  r.quadratic_bound = (n - 1) * (n - 1);
  r.cubic_bound = (n * n * n - n) / 6;
  CensusKernel kernel(n, k, options.dedup);
  for (long long code = lo; code < hi; ++code) {
    kernel.decode(code);
    ++r.examined;
    if (options.require_strongly_connected && !kernel.strongly_connected())
      continue;
    int len = kernel.shortest_reset();
    if (options.require_synchronizing && len < 0) continue;
    ++r.admitted;
    bool canonical = options.dedup && kernel.is_canonical_form(code);
    if (canonical) ++r.canonical_admitted;
    if (len > r.max_reset_length) {
      r.max_reset_length = len;
      r.max_witness_code = code;
    }
    if (len == r.quadratic_bound) {
      ++r.extremal_tables;
      if (canonical) ++r.extremal_classes;
    }
    if (len > r.quadratic_bound) ++r.over_quadratic;
    if (len > r.cubic_bound) ++r.over_cubic;
  }
  return r;
}

void merge_census(CensusReport& into, const CensusReport& from) {
  into.examined += from.examined;
  into.admitted += from.admitted;
  into.canonical_admitted += from.canonical_admitted;
  into.extremal_tables += from.extremal_tables;
  into.extremal_classes += from.extremal_classes;
  into.over_quadratic += from.over_quadratic;
  into.over_cubic += from.over_cubic;
  if (from.max_reset_length > into.max_reset_length ||
      (from.max_reset_length == into.max_reset_length &&
       into.max_witness_code < 0)) {
    into.max_reset_length = from.max_reset_length;
    into.max_witness_code = from.max_witness_code;
  }
}

}  // namespace

Dfa dfa_from_code(int n, int k, long long code) {
  std::vector<std::vector<State>> delta(k, std::vector<State>(n));
  for (int l = 0; l < k; ++l)
    for (int s = 0; s < n; ++s) {
      delta[l][s] = static_cast<State>(code % n) + 1;
      code /= n;
    }
  std::string alphabet;
  for (int l = 0; l < k; ++l) alphabet += static_cast<char>('a' + l);
  return Dfa(n, std::move(alphabet), std::move(delta));
}

CensusReport audit_small_dfas(int n, int k, const CensusOptions& options) {
  if (n < 1 || n > kCensusMaxStates)
    throw std::invalid_argument("audit_small_dfas: state count out of range");
  if (k < 1 || k > 26)
    throw std::invalid_argument("audit_small_dfas: letter count out of range");

  long long total = 1;
  bool overflow = false;
  const long long guard = std::numeric_limits<long long>::max() / n;
  for (int i = 0; i < k * n; ++i) {
    if (total > guard) {
      overflow = true;
      break;
    }
    total *= n;
  }
  CensusReport result;
  result.n = n;
  result.k = k;
  result.quadratic_bound = (n - 1) * (n - 1);
  result.cubic_bound = (n * n * n - n) / 6;
  result.total_tables = overflow ? -1 : total;
  const long long to_examine = overflow ? options.budget : std::min(total, options.budget);
  result.partial = overflow || to_examine < total;

  int shards = options.shards > 0
                   ? options.shards
                   : std::max(1u, std::thread::hardware_concurrency());
  shards = static_cast<int>(std::min<long long>(shards, std::max<long long>(to_examine, 1)));
  std::vector<std::future<CensusReport>> futures;
  for (int sh = 0; sh < shards; ++sh) {
    long long lo = to_examine * sh / shards;
    long long hi = to_examine * (sh + 1) / shards;
    futures.push_back(std::async(std::launch::async, census_shard, n, k, lo, hi,
                                 options));
  }
  for (auto& f : futures) merge_census(result, f.get());
  return result;
}

SuffixRankReport right_subword_independence(const Dfa& dfa, const Word& s) {
  SuffixRankReport report;
  report.suffix_count = s.length();
  std::set<std::vector<State>> seen;
  std::vector<WordMatrix> family;
  for (int pos = s.length() - 1; pos >= 0; --pos) {
    WordMatrix m = matrix_of_word(dfa, s.suffix_from(pos));
    if (seen.insert(m.row_image()).second) family.push_back(std::move(m));
  }
  report.distinct_count = static_cast<int>(family.size());
  report.rank = rank_of_family(std::span<const WordMatrix>(family));
  return report;
}

std::string census_to_tsv(const CensusReport& r) {
  std::ostringstream out;
  out << "n\t" << r.n << "\nk\t" << r.k << "\ntotal_tables\t" << r.total_tables
      << "\nexamined\t" << r.examined << "\npartial\t" << (r.partial ? 1 : 0)
      << "\nadmitted\t" << r.admitted << "\nmax_reset_length\t"
      << r.max_reset_length << "\nmax_witness_code\t" << r.max_witness_code
      << "\nextremal_tables\t" << r.extremal_tables << "\ncanonical_admitted\t"
      << r.canonical_admitted << "\nextremal_classes\t" << r.extremal_classes
      << "\nquadratic_bound\t" << r.quadratic_bound << "\ncubic_bound\t"
      << r.cubic_bound << "\nover_quadratic\t" << r.over_quadratic
      << "\nover_cubic\t" << r.over_cubic << '\n';
  return out.str();
}

std::string census_to_json(const CensusReport& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["total_tables"] = r.total_tables;
  j["examined"] = r.examined;
  j["partial"] = r.partial;
  j["admitted"] = r.admitted;
  j["max_reset_length"] = r.max_reset_length;
  j["max_witness_code"] = r.max_witness_code;
  j["extremal_tables"] = r.extremal_tables;
  j["canonical_admitted"] = r.canonical_admitted;
  j["extremal_classes"] = r.extremal_classes;
  j["quadratic_bound"] = r.quadratic_bound;
  j["cubic_bound"] = r.cubic_bound;
  j["over_quadratic"] = r.over_quadratic;
  j["over_cubic"] = r.over_cubic;
  return j.dump(2);
}

}  // namespace syncmat
