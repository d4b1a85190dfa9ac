#include "syncmat/word_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace syncmat {

WordMatrix::WordMatrix(std::vector<State> row_image) : rows_(std::move(row_image)) {
  if (rows_.empty()) throw std::invalid_argument("WordMatrix: empty row image");
  const int n = size();
  for (State img : rows_)
    if (img < 1 || img > n)
      throw std::invalid_argument("WordMatrix: row image out of range");
}

WordMatrix WordMatrix::identity(int n) {
  std::vector<State> rows(n);
  for (int i = 0; i < n; ++i) rows[i] = i + 1;
  return WordMatrix(std::move(rows));
}

WordMatrix WordMatrix::all_to(int n, State q) {
  if (q < 1 || q > n) throw std::out_of_range("WordMatrix::all_to: q out of range");
  return WordMatrix(std::vector<State>(n, q));
}

State WordMatrix::image(State row) const {
  if (row < 1 || row > size())
    throw std::out_of_range("WordMatrix: row out of range");
  return rows_[row - 1];
}

WordMatrix WordMatrix::operator*(const WordMatrix& rhs) const {
  if (size() != rhs.size())
    throw std::invalid_argument("WordMatrix: dimension mismatch in product");
  std::vector<State> rows(size());
  for (int i = 0; i < size(); ++i) rows[i] = rhs.rows_[rows_[i] - 1];
  return WordMatrix(std::move(rows));
}

StateSet WordMatrix::nonzero_columns() const {
  StateSet s(size());
  for (State img : rows_) s.insert(img);
  return s;
}

StateSet WordMatrix::column_units(State col) const {
  if (col < 1 || col > size())
    throw std::out_of_range("WordMatrix: column out of range");
  StateSet s(size());
  for (int i = 0; i < size(); ++i)
    if (rows_[i] == col) s.insert(i + 1);
  return s;
}

bool WordMatrix::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (rows_[i] != i + 1) return false;
  return true;
}

bool WordMatrix::is_permutation() const {
  return nonzero_columns().count() == size();
}

WordMatrix WordMatrix::inverse_permutation() const {
  if (!is_permutation())
    throw std::logic_error("WordMatrix: inverse of a non-permutation matrix");
  std::vector<State> inv(size());
  for (int i = 0; i < size(); ++i) inv[rows_[i] - 1] = i + 1;
  return WordMatrix(std::move(inv));
}

std::string WordMatrix::to_grid() const {
  std::string out;
  for (int i = 0; i < size(); ++i) {
    for (int j = 1; j <= size(); ++j) out += (rows_[i] == j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string WordMatrix::to_row_image_string() const {
  std::ostringstream out;
  out << "row-image:";
  for (State img : rows_) out << ' ' << img;
  return out.str();
}

WordMatrix WordMatrix::parse(std::string_view text) {
  // compact form first
  std::string str(text);
  std::istringstream in(str);
  std::string first;
  in >> first;
  if (first == "row-image:") {
    std::vector<State> rows;
    State v;
    while (in >> v) rows.push_back(v);
    if (rows.empty()) throw std::runtime_error("matrix parse: empty row image");
    return WordMatrix(std::move(rows));
  }
  // dense grid: one line of 0/1 per row
  std::vector<std::string> lines;
  {
    std::istringstream li(str);
    std::string line;
    while (std::getline(li, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
        line.pop_back();
      if (!line.empty()) lines.push_back(line);
    }
  }
  if (lines.empty()) throw std::runtime_error("matrix parse: empty input");
  const int n = static_cast<int>(lines.size());
  std::vector<State> rows(n, 0);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(lines[i].size()) != n)
      throw std::runtime_error("matrix parse: grid is not square");
    int units = 0;
    for (int j = 0; j < n; ++j) {
      char c = lines[i][j];
      if (c == '1') {
        rows[i] = j + 1;
        ++units;
      } else if (c != '0') {
        throw std::runtime_error("matrix parse: grid cells must be 0 or 1");
      }
    }
    if (units != 1)
      throw std::runtime_error("matrix parse: each row needs exactly one unit");
  }
  return WordMatrix(std::move(rows));
}

WordMatrix matrix_of_word(const Dfa& dfa, const Word& w) {
  std::vector<State> rows(dfa.state_count());
  for (State s = 1; s <= dfa.state_count(); ++s) rows[s - 1] = dfa.step_word(s, w);
  return WordMatrix(std::move(rows));
}

WordMatrix multiply(const WordMatrix& a, const WordMatrix& b) { return a * b; }

StateSet nonzero_columns(const WordMatrix& m) { return m.nonzero_columns(); }

bool q_equivalent(const WordMatrix& a, const WordMatrix& b, State q) {
  if (a.size() != b.size())
    throw std::invalid_argument("q_equivalent: dimension mismatch");
  return a.column_units(q) == b.column_units(q);
}

bool q_subsumes(const WordMatrix& a, const WordMatrix& b, State q) {
  if (a.size() != b.size())
    throw std::invalid_argument("q_subsumes: dimension mismatch");
  return b.column_units(q).subset_of(a.column_units(q));
}

}  // namespace syncmat
