// syncmat command line front end.
//
// Subcommands: check, sync-word, series, chain, solve, census, basis.
// Global flags: --format tsv|json, --seed <int>. Exit code 0 means every
// assertion the subcommand makes passed.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "syncmat/automaton.hpp"
#include "syncmat/exact_la.hpp"
#include "syncmat/harness.hpp"
#include "syncmat/l_matrix.hpp"
#include "syncmat/series.hpp"
#include "syncmat/word_matrix.hpp"

namespace {

using namespace syncmat;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

StateSet parse_set_arg(const std::string& text, int n) {
  // bit string ("10110") or comma list ("1,3,4")
  if (text.find(',') == std::string::npos &&
      text.find_first_not_of("01()") == std::string::npos) {
    StateSet s = StateSet::parse(text);
    if (s.universe() != n)
      throw std::runtime_error("set width does not match the automaton");
    return s;
  }
  StateSet s(n);
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) s.insert(std::stoi(item));
  return s;
}

struct Options {
  std::string format = "tsv";
  unsigned long long seed = 0;
  bool json() const { return format == "json"; }
};

int cmd_check(const Options& opt, const std::string& path) {
  Dfa dfa = parse_dfa(read_file(path));
  Validation v = validate(dfa);
  bool sync = is_synchronizing(dfa);
  if (opt.json()) {
    nlohmann::json j;
    j["n"] = dfa.state_count();
    j["k"] = dfa.letter_count();
    j["strongly_connected"] = v.strongly_connected;
    j["synchronizing"] = sync;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "n\t" << dfa.state_count() << "\nk\t" << dfa.letter_count()
              << "\nstrongly_connected\t" << (v.strongly_connected ? 1 : 0)
              << "\nsynchronizing\t" << (sync ? 1 : 0) << '\n';
    if (!v.strongly_connected)
      std::cout << "# warning: underlying graph is not strongly connected\n";
  }
  return 0;
}

int cmd_sync_word(const Options& opt, const std::string& path, bool greedy) {
  Dfa dfa = parse_dfa(read_file(path));
  std::optional<Word> word;
  if (greedy) {
    if (!is_synchronizing(dfa)) {
      std::cerr << "not synchronizing\n";
      return 1;
    }
    word = greedy_sync_word(dfa);
  } else {
    word = shortest_sync_word(dfa);
    if (!word) {
      std::cerr << "not synchronizing\n";
      return 1;
    }
  }
  StateSet sink = apply(dfa, StateSet::full(dfa.state_count()), *word);
  if (opt.json()) {
    nlohmann::json j;
    j["word"] = word->str();
    j["length"] = word->length();
    j["mode"] = greedy ? "greedy" : "exact";
    j["sink"] = sink.single();
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "word\t" << word->str() << "\nlength\t" << word->length()
              << "\nsink\t" << sink.single() << '\n';
  }
  return 0;
}

int cmd_series(const Options& opt, const std::string& path,
               const std::string& word_text, const std::string& set_text) {
  Dfa dfa = parse_dfa(read_file(path));
  Word w(word_text);
  StateSet p = parse_set_arg(set_text, dfa.state_count());
  SeriesContext ctx = SeriesContext::over(dfa.state_count(), p);
  WordMatrix m = matrix_of_word(dfa, w);
  long long value = evaluate(ctx, m);
  if (opt.json()) {
    nlohmann::json j;
    j["word"] = w.str();
    j["set"] = p.to_string();
    j["value"] = value;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "value\t" << value << '\n';
  }
  return 0;
}

int emit_chain(const Options& opt, const ChainReport& report, int expected_rank) {
  if (opt.json())
    std::cout << chain_to_json(report) << '\n';
  else
    std::cout << chain_to_tsv(report) << "rank\t" << report.rank << '\n';
  if (expected_rank > 0 && report.rank != expected_rank) {
    std::cerr << "rank assertion failed: " << report.rank << " != "
              << expected_rank << '\n';
    return 1;
  }
  return 0;
}

int cmd_chain(const Options& opt, const std::vector<std::string>& spec) {
  if (spec.empty()) throw CLI::ValidationError("chain", "missing automaton spec");
  const std::string& kind = spec[0];
  if (kind == "kari")
    return emit_chain(opt, independent_chain(build_kari(), golden_kari()), 25);
  if (kind == "roman")
    return emit_chain(opt, independent_chain(build_roman(), golden_roman()), 16);
  if (kind == "cerny") {
    if (spec.size() != 2)
      throw CLI::ValidationError("chain", "usage: chain cerny N");
    int n = std::stoi(spec[1]);
    Dfa dfa = build_cerny(n);
    if (n == 4)
      return emit_chain(opt, independent_chain(dfa, golden_cerny4()), 9);
    auto s = shortest_sync_word(dfa);
    State q = apply(dfa, StateSet::full(n), *s).single();
    return emit_chain(opt, independent_chain(dfa, q, *s), 0);
  }
  // otherwise: a DFA file; prefix chain over its shortest reset word
  Dfa dfa = parse_dfa(read_file(kind));
  auto s = shortest_sync_word(dfa);
  if (!s) {
    std::cerr << "not synchronizing\n";
    return 1;
  }
  State q = apply(dfa, StateSet::full(dfa.state_count()), *s).single();
  return emit_chain(opt, independent_chain(dfa, q, *s), 0);
}

int cmd_solve(const Options& opt, const std::string& path,
              const std::string& u_text) {
  Dfa dfa = parse_dfa(read_file(path));
  auto s = shortest_sync_word(dfa);
  if (!s) {
    std::cerr << "not synchronizing\n";
    return 1;
  }
  const int n = dfa.state_count();
  State q = apply(dfa, StateSet::full(n), *s).single();
  WordMatrix mu = matrix_of_word(dfa, Word(u_text));
  WordMatrix ms = WordMatrix::all_to(n, q);
  LMatrix x = solve_min(mu, ms, q);
  auto solutions = solutions_by_subsumption(x, mu, ms, q);
  if (opt.json()) {
    nlohmann::json j;
    j["q"] = q;
    j["sync_word"] = s->str();
    j["u"] = u_text;
    j["image"] = mu.nonzero_columns().to_string();
    j["minimal"] = x.matrix.to_row_image_string();
    j["series"] = x.series();
    j["solutions"] = solutions.count;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "q\t" << q << "\nsync_word\t" << s->str() << "\nimage\t"
              << mu.nonzero_columns().to_string() << "\nseries\t" << x.series()
              << "\nsolutions\t" << solutions.count << "\nminimal\n"
              << x.matrix.to_grid();
  }
  return 0;
}

int cmd_census(const Options& opt, int n, int k, long long budget, bool dedup,
               int shards) {
  CensusOptions options;
  if (budget > 0) options.budget = budget;
  options.dedup = dedup;
  options.shards = shards;
  CensusReport report = audit_small_dfas(n, k, options);
  if (opt.json())
    std::cout << census_to_json(report) << '\n';
  else
    std::cout << census_to_tsv(report);
  if (report.over_quadratic > 0 || report.over_cubic > 0) {
    std::cerr << "bound assertion failed\n";
    return 1;
  }
  if (report.partial) {
    std::cerr << "partial census: budget exhausted before "
              << (report.total_tables < 0 ? std::string(">budget")
                                          : std::to_string(report.total_tables))
              << " tables\n";
    return 3;
  }
  return 0;
}

int cmd_basis(const Options& opt, int n, int k, int probes) {
  auto basis_matrices = canonical_basis(n, k);
  const int expected = n * (k - 1) + 1;
  int rank = rank_of_family(std::span<const WordMatrix>(basis_matrices));
  bool ok = rank == expected;

  Basis basis(n);
  for (const auto& m : basis_matrices) basis.insert(m);

  // exhaustive span check over all word matrices with columns <= k
  long long total = 1;
  bool spanned = true;
  for (int i = 0; i < n && total <= 20000; ++i) total *= k;
  long long checked = 0;
  if (total <= 20000) {
    std::vector<State> rows(n, 1);
    for (long long code = 0; code < total; ++code) {
      long long c = code;
      for (int i = 0; i < n; ++i) {
        rows[i] = static_cast<State>(c % k) + 1;
        c /= k;
      }
      if (!basis.coordinates(WordMatrix(rows))) spanned = false;
      ++checked;
    }
    ok = ok && spanned;
  }

  // randomized round trips: combinations of members must be recovered exactly
  std::mt19937_64 rng(opt.seed);
  int recovered = 0;
  for (int p = 0; p < probes; ++p) {
    RationalMatrix sum(n);
    std::vector<Rational> coeffs;
    for (const auto& m : basis_matrices) {
      long num = static_cast<long>(rng() % 7) - 3;
      Rational lambda(num, 1 + static_cast<long>(rng() % 4));
      lambda.canonicalize();
      coeffs.push_back(lambda);
      RationalMatrix t = RationalMatrix::from(m);
      t *= lambda;
      sum += t;
    }
    auto coords = basis.coordinates(sum);
    if (coords && *coords == coeffs) ++recovered;
  }
  ok = ok && recovered == probes;

  if (opt.json()) {
    nlohmann::json j;
    j["n"] = n;
    j["k"] = k;
    j["rank"] = rank;
    j["expected"] = expected;
    j["span_checked"] = checked;
    j["probes_recovered"] = recovered;
    j["members"] = nlohmann::json::array();
    for (const auto& m : basis_matrices) j["members"].push_back(m.to_row_image_string());
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "rank\t" << rank << "\nexpected\t" << expected
              << "\nspan_checked\t" << checked << "\nprobes_recovered\t"
              << recovered << '/' << probes << '\n';
    for (const auto& m : basis_matrices) std::cout << m.to_row_image_string() << '\n';
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word-matrix toolkit for synchronizing automata"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  app.add_option("--seed", opt.seed,
                 "seed for randomized verification probes")
      ->capture_default_str();

  std::string path, word_text, set_text, u_text;
  bool exact = false, greedy = false, dedup = false;
  int n = 0, k = 0, probes = 8, shards = 0;
  long long budget = 0;
  std::vector<std::string> chain_spec;

  auto* check = app.add_subcommand("check", "validate a DFA file");
  check->add_option("file", path)->required();

  auto* sync = app.add_subcommand("sync-word", "compute a reset word");
  sync->add_option("file", path)->required();
  auto* exact_flag = sync->add_flag("--exact", exact, "exact shortest word (default)");
  sync->add_flag("--greedy", greedy, "greedy pair-merging word")->excludes(exact_flag);

  auto* series = app.add_subcommand("series", "evaluate the rational series");
  series->add_option("file", path)->required();
  series->add_option("--word", word_text, "word to evaluate")->required();
  series->add_option("--set", set_text, "defining set P (bit string or comma list)")
      ->required();

  auto* chain = app.add_subcommand(
      "chain", "canonical-matrix chain: kari | roman | cerny N | <dfa file>");
  chain->add_option("spec", chain_spec)->expected(1, 2);

  auto* solve = app.add_subcommand("solve", "minimal solution of M_u L = M_s");
  solve->add_option("file", path)->required();
  solve->add_option("--u", u_text, "word u")->required();

  auto* census = app.add_subcommand("census", "sweep all transition tables");
  census->add_option("--n", n, "state count")->required();
  census->add_option("--k", k, "letter count")->required();
  census->add_option("--budget", budget, "max tables to examine");
  census->add_flag("--dedup", dedup, "count canonical forms");
  census->add_option("--shards", shards, "worker count (0 = auto)");

  auto* basis = app.add_subcommand("basis", "canonical generators of n x k word matrices");
  basis->add_option("--n", n, "state count")->required();
  basis->add_option("--k", k, "column count")->required();
  basis->add_option("--probes", probes, "randomized recovery probes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(opt, path);
    if (sync->parsed()) return cmd_sync_word(opt, path, greedy);
    if (series->parsed()) return cmd_series(opt, path, word_text, set_text);
    if (chain->parsed()) return cmd_chain(opt, chain_spec);
    if (solve->parsed()) return cmd_solve(opt, path, u_text);
    if (census->parsed()) return cmd_census(opt, n, k, budget, dedup, shards);
    if (basis->parsed()) return cmd_basis(opt, n, k, probes);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
