#include "syncmat/exact_la.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace syncmat {

std::string to_fraction_string(const Rational& r) { return r.get_str(); }

Rational rational_from_string(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0)
    throw std::invalid_argument("rational_from_string: bad literal '" + text + "'");
  r.canonicalize();
  return r;
}

RationalMatrix::RationalMatrix(int n) : n_(n), cells_(std::size_t(n) * n, Rational(0)) {
  if (n < 1) throw std::invalid_argument("RationalMatrix: size must be >= 1");
}

RationalMatrix RationalMatrix::from(const WordMatrix& m) {
  RationalMatrix out(m.size());
  for (State row = 1; row <= m.size(); ++row) out.at(row - 1, m.image(row) - 1) = 1;
  return out;
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix out(n);
  for (int i = 0; i < n; ++i) out.at(i, i) = 1;
  return out;
}

Rational& RationalMatrix::at(int row, int col) {
  if (row < 0 || row >= n_ || col < 0 || col >= n_)
    throw std::out_of_range("RationalMatrix: index out of range");
  return cells_[std::size_t(row) * n_ + col];
}

const Rational& RationalMatrix::at(int row, int col) const {
  return const_cast<RationalMatrix*>(this)->at(row, col);
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& rhs) {
  if (n_ != rhs.n_) throw std::invalid_argument("RationalMatrix: dimension mismatch");
  for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] += rhs.cells_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& rhs) {
  if (n_ != rhs.n_) throw std::invalid_argument("RationalMatrix: dimension mismatch");
  for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] -= rhs.cells_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& scalar) {
  for (auto& c : cells_) c *= scalar;
  return *this;
}

bool RationalMatrix::is_zero() const {
  for (const auto& c : cells_)
    if (c != 0) return false;
  return true;
}

std::optional<WordMatrix> RationalMatrix::as_word_matrix() const {
  std::vector<State> rows(n_, 0);
  for (int i = 0; i < n_; ++i) {
    int units = 0;
    for (int j = 0; j < n_; ++j) {
      const Rational& v = at(i, j);
      if (v == 1) {
        rows[i] = j + 1;
        ++units;
      } else if (v != 0) {
        return std::nullopt;
      }
    }
    if (units != 1) return std::nullopt;
  }
  return WordMatrix(std::move(rows));
}

int RationalMatrix::rank() const {
  std::vector<std::vector<Rational>> m(n_, std::vector<Rational>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m[i][j] = at(i, j);
  int rank = 0;
  for (int col = 0; col < n_ && rank < n_; ++col) {
    int piv = -1;
    for (int i = rank; i < n_; ++i)
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    Rational p = m[rank][col];
    for (int j = col; j < n_; ++j) m[rank][j] /= p;
    for (int i = 0; i < n_; ++i) {
      if (i == rank || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (int j = col; j < n_; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

RationalMatrix left_multiply(const WordMatrix& b, const RationalMatrix& m) {
  if (b.size() != m.size())
    throw std::invalid_argument("left_multiply: dimension mismatch");
  RationalMatrix out(m.size());
  for (State row = 1; row <= b.size(); ++row)
    for (int col = 0; col < m.size(); ++col)
      out.at(row - 1, col) = m.at(b.image(row) - 1, col);
  return out;
}

Basis::Basis(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("Basis: matrix size must be >= 1");
}

int Basis::reduce(std::vector<Rational>& v, std::vector<Rational>& combo) const {
  for (const auto& row : rows_) {
    const Rational& f = v[row.pivot];
    if (f == 0) continue;
    Rational factor = f;  // row.vec has a unit pivot
    for (std::size_t j = 0; j < v.size(); ++j)
      if (row.vec[j] != 0) v[j] -= factor * row.vec[j];
    for (std::size_t j = 0; j < row.combo.size(); ++j)
      combo[j] += factor * row.combo[j];
  }
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) return static_cast<int>(j);
  return -1;
}

Basis::Insertion Basis::insert(const RationalMatrix& m) {
  if (m.size() != n_) throw std::invalid_argument("Basis: dimension mismatch");
  std::vector<Rational> v = m.flat();
  std::vector<Rational> combo(members_.size(), Rational(0));
  int pivot = reduce(v, combo);
  if (pivot < 0) return Insertion{false, std::move(combo)};

  // normalize the new row to a unit pivot and back-substitute above
  Rational p = v[pivot];
  for (auto& x : v) x /= p;
  combo.push_back(Rational(0));
  for (auto& c : combo) c /= p;
  // the members-combination of the new reduced row: (m - sum combo*members)/p,
  // so the new member itself carries coefficient 1/p.
  combo.back() = Rational(1) / p;
  for (std::size_t j = 0; j + 1 < combo.size(); ++j) combo[j] = -combo[j];

  for (auto& row : rows_) {
    const Rational f = row.vec[pivot];
    if (f == 0) continue;
    for (std::size_t j = 0; j < row.vec.size(); ++j)
      if (v[j] != 0) row.vec[j] -= f * v[j];
    row.combo.resize(combo.size(), Rational(0));
    for (std::size_t j = 0; j < combo.size(); ++j) row.combo[j] -= f * combo[j];
  }
  for (auto& row : rows_) row.combo.resize(members_.size() + 1, Rational(0));
  rows_.push_back(EchelonRow{std::move(v), pivot, std::move(combo)});
  std::sort(rows_.begin(), rows_.end(),
            [](const EchelonRow& a, const EchelonRow& b) { return a.pivot < b.pivot; });
  members_.push_back(m);
  return Insertion{true, {}};
}

Basis::Insertion Basis::insert(const WordMatrix& m) {
  return insert(RationalMatrix::from(m));
}

std::optional<std::vector<Rational>> Basis::coordinates(const RationalMatrix& m) const {
  if (m.size() != n_) throw std::invalid_argument("Basis: dimension mismatch");
  std::vector<Rational> v = m.flat();
  std::vector<Rational> combo(members_.size(), Rational(0));
  if (reduce(v, combo) >= 0) return std::nullopt;
  return combo;
}

std::optional<std::vector<Rational>> Basis::coordinates(const WordMatrix& m) const {
  return coordinates(RationalMatrix::from(m));
}

int rank_of_family(std::span<const RationalMatrix> family) {
  if (family.empty()) return 0;
  Basis basis(family.front().size());
  for (const auto& m : family) basis.insert(m);
  return basis.rank();
}

int rank_of_family(std::span<const WordMatrix> family) {
  if (family.empty()) return 0;
  Basis basis(family.front().size());
  for (const auto& m : family) basis.insert(m);
  return basis.rank();
}

std::optional<std::vector<Rational>> in_span(const RationalMatrix& m, const Basis& basis) {
  return basis.coordinates(m);
}

std::optional<std::vector<Rational>> in_span(const WordMatrix& m, const Basis& basis) {
  return basis.coordinates(m);
}

std::vector<WordMatrix> canonical_basis(int n, int k) {
  if (n < 2 || k < 1 || k >= n)
    throw std::invalid_argument("canonical_basis: need 1 <= k < n and n >= 2");
  std::vector<WordMatrix> out;
  for (State i = 1; i <= n; ++i)
    for (State j = 1; j < k; ++j) {
      std::vector<State> rows(n, k);
      rows[i - 1] = j;
      out.emplace_back(std::move(rows));
    }
  out.push_back(WordMatrix::all_to(n, k));
  return out;
}

CombinationCheck coefficient_sum_check(std::span<const Rational> coefficients,
                                       std::span<const WordMatrix> matrices) {
  if (coefficients.size() != matrices.size())
    throw std::invalid_argument("coefficient_sum_check: length mismatch");
  if (matrices.empty())
    throw std::invalid_argument("coefficient_sum_check: empty combination");
  const int n = matrices.front().size();
  CombinationCheck out{CombinationKind::non_word, Rational(0), RationalMatrix(n), std::nullopt};
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    if (matrices[i].size() != n)
      throw std::invalid_argument("coefficient_sum_check: dimension mismatch");
    RationalMatrix term = RationalMatrix::from(matrices[i]);
    term *= coefficients[i];
    out.sum += term;
    out.coefficient_sum += coefficients[i];
  }
  if (out.sum.is_zero()) {
    out.kind = CombinationKind::zero;
    if (out.coefficient_sum != 0)
      throw std::logic_error("coefficient_sum_check: zero sum with nonzero coefficient sum");
  } else if (auto w = out.sum.as_word_matrix()) {
    out.kind = CombinationKind::word_matrix;
    out.word = std::move(w);
    if (out.coefficient_sum != 1)
      throw std::logic_error("coefficient_sum_check: word-matrix sum with coefficient sum != 1");
  } else {
    out.kind = CombinationKind::non_word;
  }
  return out;
}

ClosureResult span_left_closure(const Dfa& dfa, std::span<const Word> seeds, int cap) {
  const int n = dfa.state_count();
  if (cap < 0) cap = n * (n - 1) + 1;
  ClosureResult result{Basis(n), {}, {}, false, false};

  auto try_insert = [&](const Word& w) {
    WordMatrix m = matrix_of_word(dfa, w);
    if (result.basis.rank() >= cap) {
      // only an insert that would grow the basis breaches the cap
      if (!result.basis.coordinates(m)) result.capped = true;
      return false;
    }
    auto ins = result.basis.insert(m);
    if (ins.independent) {
      result.basis_words.push_back(w);
      result.trace.push_back(ClosureStep{w, result.basis.rank()});
      return true;
    }
    return false;
  };

  for (const Word& seed : seeds) {
    for (char c : seed)
      if (!dfa.has_letter(c))
        throw std::invalid_argument("span_left_closure: seed word uses a foreign letter");
    try_insert(seed);
    if (result.capped) return result;
  }

  const long max_passes = 4L * cap + 4;
  for (long pass = 0; pass < max_passes; ++pass) {
    bool grew = false;
    const std::size_t snapshot = result.basis_words.size();
    for (std::size_t wi = 0; wi < snapshot; ++wi)
      for (char beta : dfa.alphabet()) {
        Word w = beta + result.basis_words[wi];
        if (try_insert(w)) grew = true;
        if (result.capped) return result;
      }
    if (!grew) {
      result.fixpoint = true;
      break;
    }
  }
  return result;
}

std::string closure_to_tsv(const ClosureResult& r) {
  std::ostringstream out;
  out << "step\tword\tdimension\n";
  for (std::size_t i = 0; i < r.trace.size(); ++i)
    out << i + 1 << '\t' << r.trace[i].word.str() << '\t' << r.trace[i].dimension
        << '\n';
  out << "# fixpoint=" << (r.fixpoint ? "yes" : "no")
      << " capped=" << (r.capped ? "yes" : "no") << " rank=" << r.basis.rank()
      << '\n';
  return out.str();
}

std::string closure_to_json(const ClosureResult& r) {
  nlohmann::json j;
  j["rank"] = r.basis.rank();
  j["fixpoint"] = r.fixpoint;
  j["capped"] = r.capped;
  j["trace"] = nlohmann::json::array();
  for (const auto& step : r.trace)
    j["trace"].push_back({{"word", step.word.str()}, {"dimension", step.dimension}});
  return j.dump(2);
}

std::string coefficients_to_tsv(std::span<const Rational> coeffs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out << '\t';
    out << to_fraction_string(coeffs[i]);
  }
  out << '\n';
  return out.str();
}

std::string coefficients_to_json(std::span<const Rational> coeffs) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : coeffs) j.push_back(to_fraction_string(c));
  return j.dump();
}

}  // namespace syncmat
