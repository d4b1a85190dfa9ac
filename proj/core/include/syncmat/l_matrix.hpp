#ifndef SYNCMAT_L_MATRIX_HPP
#define SYNCMAT_L_MATRIX_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "syncmat/automaton.hpp"
#include "syncmat/exact_la.hpp"
#include "syncmat/word_matrix.hpp"

namespace syncmat {

/// Canonical two-column word matrix: all units sit in column q plus one other
/// column. The two-column index is taken in the coordinates where q and 1 are
/// swapped, so for q = 1 it is literally the stored off_column. The boundary
/// shape with every unit in column q (a reset matrix) is representable but
/// flagged: it is not a canonical two-column matrix.
struct LMatrix {
  WordMatrix matrix;
  State q = 0;
  State off_column = 0;  // equals q in the boundary case
  bool boundary = false;

  /// Units in column q, minus one.
  long long series() const { return matrix.column_units(q).count() - 1; }
  /// Two-column index in sink-first coordinates: n - series().
  int column_index() const {
    return matrix.size() - static_cast<int>(series());
  }

  friend bool operator==(const LMatrix&, const LMatrix&) = default;
};

/// Builds the canonical matrix whose column-q unit rows are exactly the given
/// set; every other row is sent to the single remaining column determined by
/// the set size. Requires a nonempty set; the full set yields the flagged
/// boundary shape.
LMatrix l_from_set(int n, const StateSet& column_q_rows, State q);

/// Canonical two-column companion of m: copies column q of m and parks every
/// other row in the column fixed by the unit count. Rejects inputs whose
/// column q is full (the reset case has no two-column companion) or empty.
LMatrix canonical_l(const WordMatrix& m, State q);

/// The minimal solution L of  M_u * L = M_s  for a reset matrix M_s with
/// column q: column q of L carries units exactly on the nonzero columns of
/// M_u, which pins the series value to |R(u)| - 1. The product is verified
/// before returning.
LMatrix solve_min(const WordMatrix& u_matrix, const WordMatrix& s_matrix, State q);

struct SolutionEnumeration {
  unsigned long long count = 0;      // number of solutions
  std::vector<LMatrix> solutions;    // filled when enumerated
  bool enumerated = false;
};

/// All canonical solutions of M_u * L = M_s: exactly those whose column-q
/// units contain the minimal solution's. Enumerates up to `limit`, otherwise
/// reports the count only.
SolutionEnumeration solutions_by_subsumption(const LMatrix& min_solution,
                                             const WordMatrix& u_matrix,
                                             const WordMatrix& s_matrix, State q,
                                             std::size_t limit = 4096);

/// Left generalized inverse: for one chosen unit (i, j) per nonzero column j
/// of the source, cell (j, i) of the inverse is set; leftover zero rows are
/// filled with an arbitrary unit.
struct GeneralizedInverse {
  WordMatrix inverse;
  /// (nonzero column j of the source, chosen unit row i), ascending by j.
  std::vector<std::pair<State, State>> choices;
};

enum class InversePolicy {
  canonical,        // smallest unit row per column; zero rows get the
                    // smallest unused columns (always a permutation)
  all,              // every choice of units and fills
  invertible_only,  // permutation inverses only
};

inline constexpr std::size_t kInverseEnumerationCap = 1'000'000;

struct InverseEnumeration {
  std::vector<GeneralizedInverse> inverses;
  unsigned long long total = 0;  // full count even when truncated
  bool truncated = false;
};

InverseEnumeration generalized_inverses(const WordMatrix& m, InversePolicy policy,
                                        std::size_t limit = kInverseEnumerationCap);

bool is_generalized_inverse(const WordMatrix& source, const WordMatrix& candidate);

struct TransportResult {
  LMatrix minimal;         // minimal solution for M_{ua}
  bool series_preserved;   // series value matches the input solution's
};

/// Verifies the transport chain M_u M_a M_a^- L_x = M_{ua} L_y = M_s for a
/// generalized inverse whose round trip keeps the nonzero columns inside
/// R(u), and returns the minimal L_y. A permutation M_a always preserves the
/// series value; that is asserted.
TransportResult inverse_transport(const WordMatrix& u_matrix,
                                  const WordMatrix& a_matrix,
                                  const WordMatrix& a_inverse, const LMatrix& x,
                                  State q);

struct ChainLine {
  Word word;
  StateSet image;      // image set of the word on the automaton
  StateSet used;       // column-q set the matrix was built from
  bool substituted;    // used differs from image
  bool contained;      // image is a subset of used
  bool solves;         // M_word * L equals the reset matrix
  LMatrix l;
  long long series;
  int rank_after;
};

struct ChainReport {
  State q = 0;
  Word sync_word;
  int rank = 0;
  std::vector<ChainLine> lines;
  Basis basis{1};
};

/// Core walker: builds the canonical matrix of each given (word, set) line
/// and tracks the exact rank of the family. Containment of the word's image
/// in the set, and whether the line's matrix solves M_word * L = M_s, are
/// recorded per line rather than enforced: archival tables may carry lines
/// the cross-checks reject.
ChainReport chain_over_sets(const Dfa& dfa, State q, const Word& s,
                            std::span<const std::pair<Word, StateSet>> lines);

/// Prefix chain: one line per nonempty prefix of s, each using the computed
/// image set. Requires s to reset the automaton onto q.
ChainReport independent_chain(const Dfa& dfa, State q, const Word& s);

/// "word <tab> c-vector <tab> |R| <tab> series <tab> rank-so-far" per line.
std::string chain_to_tsv(const ChainReport& report);
std::string chain_to_json(const ChainReport& report);

}  // namespace syncmat

#endif
