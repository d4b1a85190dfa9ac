#ifndef SYNCMAT_SERIES_HPP
#define SYNCMAT_SERIES_HPP

#include <span>
#include <utility>

#include "syncmat/exact_la.hpp"
#include "syncmat/state_set.hpp"
#include "syncmat/word_matrix.hpp"

namespace syncmat {

/// Evaluation context of the rational series (S,u) = C(M_u - E)P^t, where C
/// is the all-ones row and P^t the characteristic column of the set P. The
/// one-state specialization S_q takes P = {q}.
struct SeriesContext {
  int n = 0;
  StateSet p;

  static SeriesContext over(int n, StateSet set);
  /// P = {q}.
  static SeriesContext sink(int n, State q);
};

/// Exact integer value of the series on a word matrix. For P = {q} this is
/// (number of units in column q) - 1. Columns outside P never contribute.
long long evaluate(const SeriesContext& ctx, const WordMatrix& m);

/// General form over any rational matrix (needed for combination
/// cross-checks; the column-count shortcut above applies to word matrices
/// only).
Rational evaluate(const SeriesContext& ctx, const RationalMatrix& m);

/// sum(lambda_j * (S, u_j)), exact. When the matrix combination itself is a
/// word matrix the result is cross-checked against direct evaluation.
Rational evaluate_linear_combination(
    const SeriesContext& ctx,
    std::span<const std::pair<Rational, WordMatrix>> terms);

}  // namespace syncmat

#endif
