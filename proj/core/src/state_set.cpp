#include "syncmat/state_set.hpp"

#include <bit>
#include <stdexcept>

namespace syncmat {

namespace {
constexpr int kBits = 64;
}

StateSet::StateSet(int universe) : n_(universe) {
  if (universe < 0) throw std::invalid_argument("StateSet: negative universe");
  bits_.assign((universe + kBits - 1) / kBits, 0);
}

StateSet StateSet::full(int universe) {
  StateSet s(universe);
  for (State i = 1; i <= universe; ++i) s.insert(i);
  return s;
}

StateSet StateSet::singleton(int universe, State st) {
  StateSet s(universe);
  s.insert(st);
  return s;
}

StateSet StateSet::of(int universe, std::initializer_list<State> states) {
  StateSet s(universe);
  for (State st : states) s.insert(st);
  return s;
}

StateSet StateSet::parse(std::string_view text) {
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')')
    text = text.substr(1, text.size() - 2);
  StateSet s(static_cast<int>(text.size()));
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '1')
      s.insert(static_cast<State>(i + 1));
    else if (c != '0')
      throw std::invalid_argument("StateSet: bad character in bit string");
  }
  return s;
}

int StateSet::count() const {
  int c = 0;
  for (auto w : bits_) c += std::popcount(w);
  return c;
}

void StateSet::check_state(State s) const {
  if (s < 1 || s > n_) throw std::out_of_range("StateSet: state out of range");
}

bool StateSet::contains(State s) const {
  check_state(s);
  return (bits_[(s - 1) / kBits] >> ((s - 1) % kBits)) & 1u;
}

void StateSet::insert(State s) {
  check_state(s);
  bits_[(s - 1) / kBits] |= std::uint64_t{1} << ((s - 1) % kBits);
}

void StateSet::erase(State s) {
  check_state(s);
  bits_[(s - 1) / kBits] &= ~(std::uint64_t{1} << ((s - 1) % kBits));
}

State StateSet::single() const {
  if (count() != 1) throw std::logic_error("StateSet: not a singleton");
  return states().front();
}

bool StateSet::subset_of(const StateSet& other) const {
  if (n_ != other.n_) throw std::invalid_argument("StateSet: universe mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~other.bits_[i]) return false;
  return true;
}

bool StateSet::proper_subset_of(const StateSet& other) const {
  return subset_of(other) && *this != other;
}

StateSet StateSet::union_with(const StateSet& other) const {
  if (n_ != other.n_) throw std::invalid_argument("StateSet: universe mismatch");
  StateSet out(n_);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    out.bits_[i] = bits_[i] | other.bits_[i];
  return out;
}

StateSet StateSet::intersect(const StateSet& other) const {
  if (n_ != other.n_) throw std::invalid_argument("StateSet: universe mismatch");
  StateSet out(n_);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    out.bits_[i] = bits_[i] & other.bits_[i];
  return out;
}

std::vector<State> StateSet::states() const {
  std::vector<State> out;
  for (State s = 1; s <= n_; ++s)
    if (contains(s)) out.push_back(s);
  return out;
}

std::uint64_t StateSet::mask() const {
  if (n_ > kBits) throw std::logic_error("StateSet: universe too large for mask");
  return bits_.empty() ? 0 : bits_[0];
}

StateSet StateSet::from_mask(int universe, std::uint64_t mask) {
  StateSet s(universe);
  for (State i = 1; i <= universe; ++i)
    if ((mask >> (i - 1)) & 1u) s.insert(i);
  return s;
}

std::string StateSet::to_string() const {
  std::string out(n_, '0');
  for (State s = 1; s <= n_; ++s)
    if (contains(s)) out[s - 1] = '1';
  return out;
}

}  // namespace syncmat
