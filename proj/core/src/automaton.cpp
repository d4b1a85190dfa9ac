#include "syncmat/automaton.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace syncmat {

Dfa::Dfa(int n, std::string alphabet, std::vector<std::vector<State>> delta)
    : n_(n), alphabet_(std::move(alphabet)), delta_(std::move(delta)) {
  if (n_ < 1) throw std::invalid_argument("Dfa: state count must be >= 1");
  if (alphabet_.empty()) throw std::invalid_argument("Dfa: empty alphabet");
  for (std::size_t i = 0; i < alphabet_.size(); ++i)
    for (std::size_t j = i + 1; j < alphabet_.size(); ++j)
      if (alphabet_[i] == alphabet_[j])
        throw std::invalid_argument(std::string("Dfa: duplicate letter '") +
                                    alphabet_[i] + "'");
  if (delta_.size() != alphabet_.size())
    throw std::invalid_argument("Dfa: incomplete transition table (letter rows)");
  for (auto& row : delta_) {
    if (static_cast<int>(row.size()) != n_)
      throw std::invalid_argument("Dfa: incomplete transition table (state row)");
    for (State img : row)
      if (img < 1 || img > n_)
        throw std::invalid_argument("Dfa: transition image out of range");
  }
}

int Dfa::letter_index(char letter) const {
  auto pos = alphabet_.find(letter);
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

State Dfa::step(State s, char letter) const {
  int li = letter_index(letter);
  if (li < 0)
    throw std::invalid_argument(std::string("Dfa: letter '") + letter +
                                "' not in alphabet");
  if (s < 1 || s > n_) throw std::out_of_range("Dfa: state out of range");
  return delta_[li][s - 1];
}

State Dfa::step_word(State s, const Word& w) const {
  for (char c : w) s = step(s, c);
  return s;
}

bool is_strongly_connected(const Dfa& dfa) {
  const int n = dfa.state_count();
  auto reaches_all = [&](bool reversed) {
    std::vector<std::vector<State>> adj(n + 1);
    for (const auto& row : dfa.table())
      for (State s = 1; s <= n; ++s) {
        State t = row[s - 1];
        if (reversed)
          adj[t].push_back(s);
        else
          adj[s].push_back(t);
      }
    std::vector<bool> seen(n + 1, false);
    std::queue<State> q;
    q.push(1);
    seen[1] = true;
    int visited = 1;
    while (!q.empty()) {
      State v = q.front();
      q.pop();
      for (State w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          ++visited;
          q.push(w);
        }
    }
    return visited == n;
  };
  return reaches_all(false) && reaches_all(true);
}

Validation validate(const Dfa& dfa) {
  return Validation{.strongly_connected = is_strongly_connected(dfa)};
}

StateSet apply_letter(const Dfa& dfa, const StateSet& set, char letter) {
  if (set.universe() != dfa.state_count())
    throw std::invalid_argument("apply: set universe does not match automaton");
  StateSet out(dfa.state_count());
  for (State s = 1; s <= dfa.state_count(); ++s)
    if (set.contains(s)) out.insert(dfa.step(s, letter));
  return out;
}

StateSet apply(const Dfa& dfa, const StateSet& set, const Word& w) {
  StateSet cur = set;
  if (cur.universe() != dfa.state_count())
    throw std::invalid_argument("apply: set universe does not match automaton");
  for (char c : w) cur = apply_letter(dfa, cur, c);
  return cur;
}

namespace {

inline int pair_index(int n, State p, State q) {
  // p < q, both 1-based; dense triangular index
  return (p - 1) * n - (p - 1) * p / 2 + (q - p - 1);
}

}  // namespace

bool is_synchronizing(const Dfa& dfa) {
  const int n = dfa.state_count();
  if (n == 1) return true;
  const int k = dfa.letter_count();
  const int pairs = n * (n - 1) / 2;
  std::vector<char> mergeable(pairs, 0);
  std::vector<std::vector<int>> rev(pairs);
  std::queue<int> worklist;
  for (State p = 1; p <= n; ++p)
    for (State q = p + 1; q <= n; ++q) {
      int idx = pair_index(n, p, q);
      for (int l = 0; l < k; ++l) {
        State pi = dfa.table()[l][p - 1];
        State qi = dfa.table()[l][q - 1];
        if (pi == qi) {
          if (!mergeable[idx]) {
            mergeable[idx] = 1;
            worklist.push(idx);
          }
        } else {
          int img = pair_index(n, std::min(pi, qi), std::max(pi, qi));
          rev[img].push_back(idx);
        }
      }
    }
  int count = 0;
  for (char m : mergeable) count += m;
  while (!worklist.empty()) {
    int cur = worklist.front();
    worklist.pop();
    for (int pre : rev[cur])
      if (!mergeable[pre]) {
        mergeable[pre] = 1;
        ++count;
        worklist.push(pre);
      }
  }
  return count == pairs;
}

namespace {

// Split-table subset image: images of the low and high halves of a mask are
// precomputed per letter, so one BFS step is two lookups and an OR.
struct SubsetStepper {
  int n, k, low_bits;
  std::uint32_t low_mask;
  std::vector<std::vector<std::uint32_t>> low_img, high_img;

  explicit SubsetStepper(const Dfa& dfa)
      : n(dfa.state_count()), k(dfa.letter_count()) {
    low_bits = std::min(n, 12);
    low_mask = (1u << low_bits) - 1;
    int high_bits = n - low_bits;
    low_img.assign(k, std::vector<std::uint32_t>(std::size_t{1} << low_bits, 0));
    high_img.assign(k, std::vector<std::uint32_t>(std::size_t{1} << std::max(high_bits, 0), 0));
    for (int l = 0; l < k; ++l) {
      for (std::uint32_t m = 0; m < (1u << low_bits); ++m) {
        std::uint32_t img = 0;
        for (int b = 0; b < low_bits; ++b)
          if (m & (1u << b)) img |= 1u << (dfa.table()[l][b] - 1);
        low_img[l][m] = img;
      }
      for (std::uint32_t m = 0; m < (1u << std::max(high_bits, 0)); ++m) {
        std::uint32_t img = 0;
        for (int b = 0; b < high_bits; ++b)
          if (m & (1u << b)) img |= 1u << (dfa.table()[l][low_bits + b] - 1);
        high_img[l][m] = img;
      }
    }
  }

  std::uint32_t step(std::uint32_t mask, int letter) const {
    return low_img[letter][mask & low_mask] | high_img[letter][mask >> low_bits];
  }
};

}  // namespace

std::optional<Word> shortest_sync_word(const Dfa& dfa) {
  const int n = dfa.state_count();
  if (n > kSubsetSearchMaxStates)
    throw std::invalid_argument(
        "shortest_sync_word: state count " + std::to_string(n) +
        " exceeds the subset search cap of " +
        std::to_string(kSubsetSearchMaxStates));
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  if (n == 1) return Word{};
  SubsetStepper stepper(dfa);
  const int k = dfa.letter_count();

  std::vector<std::uint8_t> via(std::size_t{1} << n, 0);  // letter index + 1
  std::vector<std::uint32_t> pred(std::size_t{1} << n, 0);
  std::deque<std::uint32_t> queue;
  queue.push_back(full);
  via[full] = 0xFF;  // visited marker for the root

  auto reconstruct = [&](std::uint32_t at) {
    std::string w;
    while (at != full) {
      w += dfa.alphabet()[via[at] - 1];
      at = pred[at];
    }
    std::reverse(w.begin(), w.end());
    return Word(std::move(w));
  };

  while (!queue.empty()) {
    std::uint32_t cur = queue.front();
    queue.pop_front();
    for (int l = 0; l < k; ++l) {
      std::uint32_t img = stepper.step(cur, l);
      if (via[img]) continue;
      via[img] = static_cast<std::uint8_t>(l + 1);
      pred[img] = cur;
      if (std::popcount(img) == 1) return reconstruct(img);
      queue.push_back(img);
    }
  }
  return std::nullopt;
}

namespace {

// Pair-merging distances: dist[pair] = length of the shortest word collapsing
// that pair, with the canonical first letter along an optimal path.
struct PairTable {
  int n;
  std::vector<int> dist;
  std::vector<int> letter;  // index of the canonical optimal letter

  PairTable(const Dfa& dfa) : n(dfa.state_count()) {
    const int k = dfa.letter_count();
    const int pairs = n * (n - 1) / 2;
    dist.assign(pairs, -1);
    letter.assign(pairs, -1);
    std::vector<std::vector<int>> rev(pairs);
    std::queue<int> bfs;
    for (State p = 1; p <= n; ++p)
      for (State q = p + 1; q <= n; ++q) {
        int idx = pair_index(n, p, q);
        for (int l = 0; l < k; ++l) {
          State pi = dfa.table()[l][p - 1];
          State qi = dfa.table()[l][q - 1];
          if (pi == qi) {
            if (dist[idx] < 0) {
              dist[idx] = 1;
              bfs.push(idx);
            }
          } else {
            rev[pair_index(n, std::min(pi, qi), std::max(pi, qi))].push_back(idx);
          }
        }
      }
    while (!bfs.empty()) {
      int cur = bfs.front();
      bfs.pop();
      for (int pre : rev[cur])
        if (dist[pre] < 0) {
          dist[pre] = dist[cur] + 1;
          bfs.push(pre);
        }
    }
    // canonical letter: smallest alphabet index that makes progress
    for (State p = 1; p <= n; ++p)
      for (State q = p + 1; q <= n; ++q) {
        int idx = pair_index(n, p, q);
        if (dist[idx] < 0) continue;
        for (int l = 0; l < k && letter[idx] < 0; ++l) {
          State pi = dfa.table()[l][p - 1];
          State qi = dfa.table()[l][q - 1];
          if (pi == qi) {
            if (dist[idx] == 1) letter[idx] = l;
          } else if (dist[pair_index(n, std::min(pi, qi), std::max(pi, qi))] ==
                     dist[idx] - 1) {
            letter[idx] = l;
          }
        }
      }
  }
};

}  // namespace

Word greedy_sync_word(const Dfa& dfa) {
  const int n = dfa.state_count();
  if (n == 1) return Word{};
  if (!is_synchronizing(dfa))
    throw std::invalid_argument("greedy_sync_word: automaton is not synchronizing");
  PairTable pt(dfa);
  StateSet image = StateSet::full(n);
  Word word;
  while (image.count() > 1) {
    auto members = image.states();
    State bp = 0, bq = 0;
    int best = -1;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        int d = pt.dist[pair_index(n, members[i], members[j])];
        if (best < 0 || d < best) {
          best = d;
          bp = members[i];
          bq = members[j];
        }
      }
    // walk the chosen pair down to a collision, applying letters to the image
    State p = bp, q = bq;
    while (p != q) {
      int l = pt.letter[pair_index(n, std::min(p, q), std::max(p, q))];
      char c = dfa.alphabet()[l];
      word.push_back(c);
      image = apply_letter(dfa, image, c);
      p = dfa.step(p, c);
      q = dfa.step(q, c);
    }
  }
  if (apply(dfa, StateSet::full(n), word).count() != 1)
    throw std::logic_error("greedy_sync_word: produced word does not synchronize");
  return word;
}

Dfa renumber(const Dfa& dfa, const std::vector<State>& perm) {
  const int n = dfa.state_count();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("renumber: permutation size mismatch");
  std::vector<bool> seen(n + 1, false);
  for (State img : perm) {
    if (img < 1 || img > n || seen[img])
      throw std::invalid_argument("renumber: not a bijection on 1..n");
    seen[img] = true;
  }
  std::vector<std::vector<State>> delta(dfa.letter_count(),
                                        std::vector<State>(n));
  for (int l = 0; l < dfa.letter_count(); ++l)
    for (State s = 1; s <= n; ++s)
      delta[l][perm[s - 1] - 1] = perm[dfa.table()[l][s - 1] - 1];
  return Dfa(n, dfa.alphabet(), std::move(delta));
}

std::vector<State> sink_to_front(int n, State q) {
  if (q < 1 || q > n) throw std::out_of_range("sink_to_front: q out of range");
  std::vector<State> perm(n);
  for (State s = 1; s <= n; ++s) perm[s - 1] = s;
  std::swap(perm[0], perm[q - 1]);
  return perm;
}

namespace {

std::vector<std::string> significant_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  auto flush = [&] {
    auto hash = cur.find('#');
    if (hash != std::string::npos) cur.erase(hash);
    bool blank = cur.find_first_not_of(" \t\r") == std::string::npos;
    if (!blank) lines.push_back(cur);
    cur.clear();
  };
  for (char c : text) {
    if (c == '\n')
      flush();
    else
      cur += c;
  }
  flush();
  return lines;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

}  // namespace

Dfa parse_dfa(std::string_view text) {
  auto lines = significant_lines(text);
  if (lines.empty()) throw std::runtime_error("dfa parse: empty input");
  auto header = tokens_of(lines[0]);
  if (header.size() != 3 || header[0] != "dfa")
    throw std::runtime_error("dfa parse: expected header 'dfa <n> <k>'");
  int n = 0, k = 0;
  try {
    n = std::stoi(header[1]);
    k = std::stoi(header[2]);
  } catch (const std::exception&) {
    throw std::runtime_error("dfa parse: bad counts in header");
  }
  if (n < 1 || k < 1) throw std::runtime_error("dfa parse: bad counts in header");
  if (lines.size() < 2) throw std::runtime_error("dfa parse: missing letters line");
  auto letters = tokens_of(lines[1]);
  if (letters.empty() || letters[0] != "letters")
    throw std::runtime_error("dfa parse: expected 'letters <l1> ...'");
  if (static_cast<int>(letters.size()) - 1 != k)
    throw std::runtime_error("dfa parse: letter count does not match header");
  std::string alphabet;
  for (int i = 1; i <= k; ++i) {
    if (letters[i].size() != 1)
      throw std::runtime_error("dfa parse: letter symbols must be single characters");
    alphabet += letters[i][0];
  }

  std::vector<std::vector<State>> delta(k, std::vector<State>(n, 0));
  std::vector<bool> seen(n + 1, false);
  for (std::size_t li = 2; li < lines.size(); ++li) {
    auto toks = tokens_of(lines[li]);
    if (toks.size() < 2 || toks[0] != "state")
      throw std::runtime_error("dfa parse: expected 'state <i>: ...'");
    std::string idx_tok = toks[1];
    if (!idx_tok.empty() && idx_tok.back() == ':') idx_tok.pop_back();
    int s = 0;
    try {
      s = std::stoi(idx_tok);
    } catch (const std::exception&) {
      throw std::runtime_error("dfa parse: bad state index");
    }
    if (s < 1 || s > n) throw std::runtime_error("dfa parse: state index out of range");
    if (seen[s]) throw std::runtime_error("dfa parse: duplicate state row");
    seen[s] = true;
    if (static_cast<int>(toks.size()) - 2 != k)
      throw std::runtime_error("dfa parse: incomplete state row (missing transition)");
    for (int l = 0; l < k; ++l) {
      int img = 0;
      try {
        img = std::stoi(toks[2 + l]);
      } catch (const std::exception&) {
        throw std::runtime_error("dfa parse: bad transition image");
      }
      if (img < 1 || img > n)
        throw std::runtime_error("dfa parse: transition image out of range");
      delta[l][s - 1] = img;
    }
  }
  for (State s = 1; s <= n; ++s)
    if (!seen[s])
      throw std::runtime_error("dfa parse: incomplete table, missing state " +
                               std::to_string(s));
  return Dfa(n, std::move(alphabet), std::move(delta));
}

std::string serialize_dfa(const Dfa& dfa) {
  std::ostringstream out;
  out << "dfa " << dfa.state_count() << ' ' << dfa.letter_count() << '\n';
  out << "letters";
  for (char c : dfa.alphabet()) out << ' ' << c;
  out << '\n';
  for (State s = 1; s <= dfa.state_count(); ++s) {
    out << "state " << s << ':';
    for (int l = 0; l < dfa.letter_count(); ++l) out << ' ' << dfa.table()[l][s - 1];
    out << '\n';
  }
  return out.str();
}

}  // namespace syncmat
