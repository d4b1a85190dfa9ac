#include "syncmat/series.hpp"

#include <stdexcept>

namespace syncmat {

SeriesContext SeriesContext::over(int n, StateSet set) {
  if (set.universe() != n)
    throw std::invalid_argument("SeriesContext: set universe mismatch");
  return SeriesContext{n, std::move(set)};
}

SeriesContext SeriesContext::sink(int n, State q) {
  return over(n, StateSet::singleton(n, q));
}

long long evaluate(const SeriesContext& ctx, const WordMatrix& m) {
  if (m.size() != ctx.n)
    throw std::invalid_argument("series evaluate: dimension mismatch");
  long long total = 0;
  for (State col : ctx.p.states()) total += m.column_units(col).count();
  return total - ctx.p.count();
}

Rational evaluate(const SeriesContext& ctx, const RationalMatrix& m) {
  if (m.size() != ctx.n)
    throw std::invalid_argument("series evaluate: dimension mismatch");
  Rational total(0);
  for (State col : ctx.p.states()) {
    for (int row = 0; row < ctx.n; ++row) total += m.at(row, col - 1);
    total -= 1;  // the E term contributes exactly one unit per column of P
  }
  return total;
}

Rational evaluate_linear_combination(
    const SeriesContext& ctx,
    std::span<const std::pair<Rational, WordMatrix>> terms) {
  Rational total(0);
  RationalMatrix sum(ctx.n);
  for (const auto& [lambda, m] : terms) {
    if (m.size() != ctx.n)
      throw std::invalid_argument("series combination: dimension mismatch");
    total += lambda * static_cast<long>(evaluate(ctx, m));
    RationalMatrix t = RationalMatrix::from(m);
    t *= lambda;
    sum += t;
  }
  if (auto word = sum.as_word_matrix()) {
    Rational direct(static_cast<long>(evaluate(ctx, *word)));
    if (total != direct)
      throw std::logic_error("series combination: direct evaluation disagrees");
  }
  return total;
}

}  // namespace syncmat
