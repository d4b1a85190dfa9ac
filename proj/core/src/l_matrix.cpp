#include "syncmat/l_matrix.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace syncmat {

namespace {

// Two-column index in original coordinates: indices are computed in the
// coordinates where q and 1 are swapped, then mapped back through the same
// transposition.
State off_column_for(int n, int set_size, State q) {
  int i = n - set_size + 1;  // in sink-first coordinates, 2..n
  if (i == q) return 1;
  return i;
}

unsigned long long saturating_mul(unsigned long long a, unsigned long long b) {
  const auto kMax = std::numeric_limits<unsigned long long>::max();
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

}  // namespace

LMatrix l_from_set(int n, const StateSet& column_q_rows, State q) {
  if (column_q_rows.universe() != n)
    throw std::invalid_argument("l_from_set: set universe mismatch");
  if (q < 1 || q > n) throw std::out_of_range("l_from_set: q out of range");
  const int size = column_q_rows.count();
  if (size == 0) throw std::invalid_argument("l_from_set: empty column set");
  if (size == n)
    return LMatrix{WordMatrix::all_to(n, q), q, q, true};
  const State off = off_column_for(n, size, q);
  std::vector<State> rows(n, off);
  for (State s : column_q_rows.states()) rows[s - 1] = q;
  return LMatrix{WordMatrix(std::move(rows)), q, off, false};
}

LMatrix canonical_l(const WordMatrix& m, State q) {
  StateSet units = m.column_units(q);
  const int k = units.count();
  if (k == 0)
    throw std::invalid_argument("canonical_l: column q has no unit");
  if (k == m.size())
    throw std::invalid_argument(
        "canonical_l: no two-column companion for a reset matrix");
  return l_from_set(m.size(), units, q);
}

LMatrix solve_min(const WordMatrix& u_matrix, const WordMatrix& s_matrix, State q) {
  const int n = u_matrix.size();
  if (s_matrix.size() != n)
    throw std::invalid_argument("solve_min: dimension mismatch");
  if (s_matrix != WordMatrix::all_to(n, q))
    throw std::invalid_argument("solve_min: right-hand side must reset onto q");
  LMatrix l = l_from_set(n, u_matrix.nonzero_columns(), q);
  if (u_matrix * l.matrix != s_matrix)
    throw std::logic_error("solve_min: verification failed");
  return l;
}

SolutionEnumeration solutions_by_subsumption(const LMatrix& min_solution,
                                             const WordMatrix& u_matrix,
                                             const WordMatrix& s_matrix, State q,
                                             std::size_t limit) {
  const int n = u_matrix.size();
  StateSet base = min_solution.matrix.column_units(q);
  std::vector<State> free_states;
  for (State s = 1; s <= n; ++s)
    if (!base.contains(s)) free_states.push_back(s);
  SolutionEnumeration out;
  out.count = 1ull;
  for (std::size_t i = 0; i < free_states.size(); ++i)
    out.count = saturating_mul(out.count, 2ull);
  out.enumerated = out.count <= limit;
  if (!out.enumerated) return out;
  const std::size_t combos = static_cast<std::size_t>(out.count);
  for (std::size_t mask = 0; mask < combos; ++mask) {
    StateSet set = base;
    for (std::size_t b = 0; b < free_states.size(); ++b)
      if (mask & (std::size_t{1} << b)) set.insert(free_states[b]);
    LMatrix l = l_from_set(n, set, q);
    if (u_matrix * l.matrix != s_matrix)
      throw std::logic_error("solutions_by_subsumption: superset failed to solve");
    out.solutions.push_back(std::move(l));
  }
  return out;
}

bool is_generalized_inverse(const WordMatrix& source, const WordMatrix& candidate) {
  if (source.size() != candidate.size()) return false;
  for (State j : source.nonzero_columns().states())
    if (source.image(candidate.image(j)) != j) return false;
  return true;
}

InverseEnumeration generalized_inverses(const WordMatrix& m, InversePolicy policy,
                                        std::size_t limit) {
  const int n = m.size();
  StateSet nonzero = m.nonzero_columns();
  std::vector<State> columns = nonzero.states();  // rows of the inverse to pin
  std::vector<std::vector<State>> options;        // unit rows per pinned column
  for (State j : columns) options.push_back(m.column_units(j).states());
  std::vector<State> zero_rows;  // rows of the inverse filled arbitrarily
  for (State s = 1; s <= n; ++s)
    if (!nonzero.contains(s)) zero_rows.push_back(s);

  InverseEnumeration out;
  auto make = [&](const std::vector<State>& picks,
                  const std::vector<State>& fills) {
    std::vector<State> rows(n, 0);
    std::vector<std::pair<State, State>> choices;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      rows[columns[c] - 1] = picks[c];
      choices.emplace_back(columns[c], picks[c]);
    }
    for (std::size_t z = 0; z < zero_rows.size(); ++z)
      rows[zero_rows[z] - 1] = fills[z];
    return GeneralizedInverse{WordMatrix(std::move(rows)), std::move(choices)};
  };

  if (policy == InversePolicy::canonical) {
    std::vector<State> picks;
    StateSet used(n);
    for (auto& opt : options) {
      picks.push_back(opt.front());  // options are ascending
      used.insert(opt.front());
    }
    std::vector<State> fills;
    for (State s = 1; s <= n && fills.size() < zero_rows.size(); ++s)
      if (!used.contains(s)) fills.push_back(s);
    out.inverses.push_back(make(picks, fills));
    out.total = 1;
    return out;
  }

  // full counts
  unsigned long long pick_count = 1;
  for (auto& opt : options) pick_count = saturating_mul(pick_count, opt.size());
  if (policy == InversePolicy::all) {
    out.total = pick_count;
    for (std::size_t z = 0; z < zero_rows.size(); ++z)
      out.total = saturating_mul(out.total, static_cast<unsigned long long>(n));
  } else {
    out.total = pick_count;
    for (std::size_t z = 0; z < zero_rows.size(); ++z)
      out.total = saturating_mul(out.total, z + 1);  // factorial of fills
  }

  // odometer over unit choices
  std::vector<std::size_t> odo(options.size(), 0);
  bool done = false;
  while (!done) {
    std::vector<State> picks;
    picks.reserve(options.size());
    StateSet used(n);
    for (std::size_t c = 0; c < options.size(); ++c) {
      picks.push_back(options[c][odo[c]]);
      used.insert(options[c][odo[c]]);
    }
    if (policy == InversePolicy::all) {
      std::vector<State> fills(zero_rows.size(), 1);
      bool fills_done = zero_rows.empty();
      if (zero_rows.empty()) {
        if (out.inverses.size() < limit) out.inverses.push_back(make(picks, {}));
        else out.truncated = true;
      }
      while (!fills_done) {
        if (out.inverses.size() < limit) out.inverses.push_back(make(picks, fills));
        else { out.truncated = true; break; }
        // advance fills odometer
        std::size_t pos = 0;
        while (pos < fills.size()) {
          if (fills[pos] < n) { ++fills[pos]; break; }
          fills[pos] = 1;
          ++pos;
        }
        if (pos == fills.size()) fills_done = true;
      }
    } else {  // invertible_only: fills are arrangements of the unused columns
      std::vector<State> unused;
      for (State s = 1; s <= n; ++s)
        if (!used.contains(s)) unused.push_back(s);
      std::sort(unused.begin(), unused.end());
      do {
        if (out.inverses.size() < limit) out.inverses.push_back(make(picks, unused));
        else { out.truncated = true; break; }
      } while (std::next_permutation(unused.begin(), unused.end()));
    }
    if (out.truncated) break;
    // advance the unit-choice odometer
    std::size_t pos = 0;
    while (pos < odo.size()) {
      if (odo[pos] + 1 < options[pos].size()) { ++odo[pos]; break; }
      odo[pos] = 0;
      ++pos;
    }
    if (pos == odo.size() || odo.empty()) done = true;
  }
  return out;
}

TransportResult inverse_transport(const WordMatrix& u_matrix,
                                  const WordMatrix& a_matrix,
                                  const WordMatrix& a_inverse, const LMatrix& x,
                                  State q) {
  const int n = u_matrix.size();
  if (a_matrix.size() != n || a_inverse.size() != n || x.matrix.size() != n)
    throw std::invalid_argument("inverse_transport: dimension mismatch");
  if (!is_generalized_inverse(a_matrix, a_inverse))
    throw std::invalid_argument(
        "inverse_transport: candidate is not a generalized inverse");
  const WordMatrix s_matrix = WordMatrix::all_to(n, q);
  if (u_matrix * x.matrix != s_matrix)
    throw std::invalid_argument(
        "inverse_transport: input solution does not solve the equation");

  const WordMatrix round_trip = u_matrix * a_matrix * a_inverse;
  StateSet ru = u_matrix.nonzero_columns();
  for (State col : round_trip.nonzero_columns().states())
    if (!ru.contains(col))
      throw std::invalid_argument(
          "inverse_transport: column " + std::to_string(col) +
          " of the round trip lies outside the nonzero columns of M_u");

  if (round_trip * x.matrix != s_matrix)
    throw std::logic_error("inverse_transport: chain verification failed");

  LMatrix y = solve_min(u_matrix * a_matrix, s_matrix, q);
  bool preserved = y.series() == x.series();
  if (a_matrix.is_permutation() && !preserved)
    throw std::logic_error(
        "inverse_transport: permutation failed to preserve the series value");
  return TransportResult{std::move(y), preserved};
}

ChainReport chain_over_sets(const Dfa& dfa, State q, const Word& s,
                            std::span<const std::pair<Word, StateSet>> lines) {
  const int n = dfa.state_count();
  StateSet target = apply(dfa, StateSet::full(n), s);
  if (target.count() != 1 || target.single() != q)
    throw std::invalid_argument("chain: word does not reset the automaton onto q");
  const WordMatrix s_matrix = WordMatrix::all_to(n, q);

  ChainReport report;
  report.q = q;
  report.sync_word = s;
  report.basis = Basis(n);
  for (const auto& [word, used] : lines) {
    WordMatrix m = matrix_of_word(dfa, word);
    StateSet image = m.nonzero_columns();
    LMatrix l = l_from_set(n, used, q);
    const bool contained = image.subset_of(used);
    const bool solves = m * l.matrix == s_matrix;
    if (contained && !solves)
      throw std::logic_error("chain: covering line fails the equation for '" +
                             word.str() + "'");
    report.basis.insert(l.matrix);
    report.lines.push_back(ChainLine{word, image, used, image != used, contained,
                                     solves, l, l.series(), report.basis.rank()});
  }
  report.rank = report.basis.rank();
  return report;
}

ChainReport independent_chain(const Dfa& dfa, State q, const Word& s) {
  std::vector<std::pair<Word, StateSet>> lines;
  StateSet cur = StateSet::full(dfa.state_count());
  for (int len = 1; len <= s.length(); ++len) {
    cur = apply_letter(dfa, cur, s.at(len - 1));
    lines.emplace_back(s.prefix(len), cur);
  }
  return chain_over_sets(dfa, q, s, lines);
}

std::string chain_to_tsv(const ChainReport& report) {
  std::ostringstream out;
  for (const auto& line : report.lines)
    out << line.word.str() << '\t' << line.used.to_string() << '\t'
        << line.used.count() << '\t' << line.series << '\t' << line.rank_after
        << '\n';
  return out.str();
}

std::string chain_to_json(const ChainReport& report) {
  nlohmann::json j;
  j["q"] = report.q;
  j["sync_word"] = report.sync_word.str();
  j["rank"] = report.rank;
  j["lines"] = nlohmann::json::array();
  for (const auto& line : report.lines)
    j["lines"].push_back({{"word", line.word.str()},
                          {"c", line.used.to_string()},
                          {"image", line.image.to_string()},
                          {"substituted", line.substituted},
                          {"contained", line.contained},
                          {"solves", line.solves},
                          {"r", line.used.count()},
                          {"series", line.series},
                          {"rank", line.rank_after}});
  return j.dump(2);
}

}  // namespace syncmat
