#ifndef SYNCMAT_EXACT_LA_HPP
#define SYNCMAT_EXACT_LA_HPP

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "syncmat/automaton.hpp"
#include "syncmat/word_matrix.hpp"

namespace syncmat {

/// Exact arbitrary-precision rational scalar. Everything in this module is
/// computed over Q; there is no floating point anywhere.
using Rational = mpq_class;

/// "p/q" string, or just "p" when the denominator is one.
std::string to_fraction_string(const Rational& r);
Rational rational_from_string(const std::string& text);

/// Dense n x n matrix of exact rationals. Word matrices embed by their 0/1
/// entries. Flattening is row-major, fixed; every coefficient vector in this
/// module is reported in that order.
class RationalMatrix {
 public:
  explicit RationalMatrix(int n);
  static RationalMatrix from(const WordMatrix& m);
  static RationalMatrix identity(int n);

  int size() const { return n_; }
  Rational& at(int row, int col);
  const Rational& at(int row, int col) const;
  const std::vector<Rational>& flat() const { return cells_; }

  RationalMatrix& operator+=(const RationalMatrix& rhs);
  RationalMatrix& operator-=(const RationalMatrix& rhs);
  RationalMatrix& operator*=(const Rational& scalar);
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator*(const Rational& s, RationalMatrix m) { return m *= s; }

  bool is_zero() const;
  /// Present when the entries are exactly a 0/1 one-unit-per-row pattern.
  std::optional<WordMatrix> as_word_matrix() const;

  /// Exact rank (Gaussian elimination over Q).
  int rank() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<Rational> cells_;
};

/// Row permutation/selection product: row i of the result is row b(i) of m.
RationalMatrix left_multiply(const WordMatrix& b, const RationalMatrix& m);

/// Incremental basis of flattened n x n matrices kept in reduced echelon
/// form. Members are linearly independent by construction: an insert either
/// grows the rank by one or reports the coefficients of the dependent matrix
/// over the current members.
class Basis {
 public:
  explicit Basis(int n);

  struct Insertion {
    bool independent = false;
    /// Filled when independent == false: coordinates over members(), in
    /// insertion order.
    std::vector<Rational> coefficients;
  };

  Insertion insert(const RationalMatrix& m);
  Insertion insert(const WordMatrix& m);

  /// Span membership without mutation: coordinates over members(), or
  /// std::nullopt when the matrix is independent of the basis.
  std::optional<std::vector<Rational>> coordinates(const RationalMatrix& m) const;
  std::optional<std::vector<Rational>> coordinates(const WordMatrix& m) const;

  int rank() const { return static_cast<int>(rows_.size()); }
  int matrix_size() const { return n_; }
  const std::vector<RationalMatrix>& members() const { return members_; }

 private:
  struct EchelonRow {
    std::vector<Rational> vec;    // length n*n, reduced
    int pivot = -1;
    std::vector<Rational> combo;  // vec as a combination of members_
  };

  // Reduces v in place; combo tracks the members-coordinates of what was
  // subtracted. Returns the pivot column or -1 when v vanished.
  int reduce(std::vector<Rational>& v, std::vector<Rational>& combo) const;

  int n_ = 0;
  std::vector<EchelonRow> rows_;
  std::vector<RationalMatrix> members_;
};

int rank_of_family(std::span<const RationalMatrix> family);
int rank_of_family(std::span<const WordMatrix> family);

std::optional<std::vector<Rational>> in_span(const RationalMatrix& m, const Basis& basis);
std::optional<std::vector<Rational>> in_span(const WordMatrix& m, const Basis& basis);

/// The n(k-1)+1 generators of the space of all n x k word matrices (columns
/// beyond k zero): for each row i and column j < k the matrix with a unit at
/// (i,j) and units at (m,k) for every m != i, followed by the matrix with all
/// units in column k. Requires 1 <= k < n; k = 1 yields the single all-in-k
/// matrix.
std::vector<WordMatrix> canonical_basis(int n, int k);

enum class CombinationKind {
  word_matrix,  // sum is a word matrix; coefficient sum is 1
  zero,         // sum is the zero matrix; coefficient sum is 0
  non_word,     // anything else
};

struct CombinationCheck {
  CombinationKind kind = CombinationKind::non_word;
  Rational coefficient_sum;
  RationalMatrix sum;
  std::optional<WordMatrix> word;  // set when kind == word_matrix
};

/// Classifies sum(lambda_i * M_i). A coefficient sum outside {0, 1} forces a
/// non-word result; that implication is asserted here.
CombinationCheck coefficient_sum_check(std::span<const Rational> coefficients,
                                       std::span<const WordMatrix> matrices);

struct ClosureStep {
  Word word;
  int dimension = 0;  // rank after inserting this word's matrix
};

struct ClosureResult {
  Basis basis;
  std::vector<Word> basis_words;   // one per basis member, same order
  std::vector<ClosureStep> trace;  // dimension growth sequence
  bool fixpoint = false;           // a full pass added nothing
  bool capped = false;             // insertion cap hit; trace is partial
};

/// Grows the span of the seed words' matrices by left letter products:
/// whenever M_{beta w} is independent for a basis word w and letter beta, it
/// is inserted. A fixpoint certifies the span is closed under left
/// multiplication by every word (left products distribute over the span).
/// cap < 0 selects the default of n(n-1)+1 insertions, the dimension ceiling
/// of the whole word-matrix space.
ClosureResult span_left_closure(const Dfa& dfa, std::span<const Word> seeds,
                                int cap = -1);

std::string closure_to_tsv(const ClosureResult& r);
std::string closure_to_json(const ClosureResult& r);

std::string coefficients_to_tsv(std::span<const Rational> coeffs);
std::string coefficients_to_json(std::span<const Rational> coeffs);

}  // namespace syncmat

#endif
