#ifndef SYNCMAT_WORD_MATRIX_HPP
#define SYNCMAT_WORD_MATRIX_HPP

#include <string>
#include <string_view>
#include <vector>

#include "syncmat/automaton.hpp"
#include "syncmat/state_set.hpp"

namespace syncmat {

/// n x n 0/1 matrix with exactly one unit per row: the matrix of the mapping a
/// word induces on states. The row-image vector is the source of truth; the
/// dense 0/1 grid is a derived view, so the one-unit-per-row invariant holds
/// by construction.
///
/// The empty word maps to the identity matrix, which is what makes the
/// product law M_u M_v = M_uv hold for all words including the empty one.
class WordMatrix {
 public:
  /// row_image[i-1] = column of row i's unit (1-based).
  explicit WordMatrix(std::vector<State> row_image);

  static WordMatrix identity(int n);
  /// All rows mapped to column q: the shape of a reset word's matrix.
  static WordMatrix all_to(int n, State q);

  int size() const { return static_cast<int>(rows_.size()); }
  State image(State row) const;
  const std::vector<State>& row_image() const { return rows_; }
  bool cell(State row, State col) const { return image(row) == col; }

  /// Boolean matrix product; composition of the row-image maps.
  WordMatrix operator*(const WordMatrix& rhs) const;

  /// R(u): the set of nonzero columns. Equals the image set of the word and
  /// the exact rank of the matrix.
  StateSet nonzero_columns() const;

  /// Rows carrying a unit in the given column.
  StateSet column_units(State col) const;

  bool synchronizing() const { return nonzero_columns().count() == 1; }
  bool is_identity() const;
  bool is_permutation() const;
  /// Inverse of a permutation matrix (throws otherwise).
  WordMatrix inverse_permutation() const;

  /// Dense n-line 0/1 grid.
  std::string to_grid() const;
  /// Compact form: "row-image: j1 j2 ... jn".
  std::string to_row_image_string() const;
  /// Accepts either display form.
  static WordMatrix parse(std::string_view text);

  friend bool operator==(const WordMatrix&, const WordMatrix&) = default;
  friend auto operator<=>(const WordMatrix&, const WordMatrix&) = default;

 private:
  std::vector<State> rows_;
};

/// Matrix of the mapping induced by w on the automaton's states.
WordMatrix matrix_of_word(const Dfa& dfa, const Word& w);

WordMatrix multiply(const WordMatrix& a, const WordMatrix& b);

StateSet nonzero_columns(const WordMatrix& m);

/// Column-q equality of two word matrices.
bool q_equivalent(const WordMatrix& a, const WordMatrix& b, State q);

/// True iff the column-q unit set of b is contained in that of a
/// (a subsumes b at q).
bool q_subsumes(const WordMatrix& a, const WordMatrix& b, State q);

}  // namespace syncmat

#endif
