#ifndef SYNCMAT_STATE_SET_HPP
#define SYNCMAT_STATE_SET_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace syncmat {

/// States are 1-based throughout; state 1 is the conventional sink slot.
using State = int;

/// Fixed-universe set of states backed by a bit vector. Immutable in spirit:
/// the algebra layers treat values as frozen once built.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(int universe);

  static StateSet full(int universe);
  static StateSet singleton(int universe, State s);
  static StateSet of(int universe, std::initializer_list<State> states);

  /// Parses a characteristic bit string such as "101011" (leftmost bit is
  /// state 1). Surrounding parentheses are tolerated.
  static StateSet parse(std::string_view text);

  int universe() const { return n_; }
  int count() const;
  bool empty() const { return count() == 0; }
  bool is_full() const { return count() == n_; }

  bool contains(State s) const;
  void insert(State s);
  void erase(State s);

  /// The single member; requires count() == 1.
  State single() const;

  bool subset_of(const StateSet& other) const;
  bool proper_subset_of(const StateSet& other) const;

  StateSet union_with(const StateSet& other) const;
  StateSet intersect(const StateSet& other) const;

  std::vector<State> states() const;

  /// Bit mask with state s at bit (s-1); requires universe() <= 64.
  std::uint64_t mask() const;
  static StateSet from_mask(int universe, std::uint64_t mask);

  /// Characteristic string, e.g. "101011".
  std::string to_string() const;

  friend bool operator==(const StateSet&, const StateSet&) = default;

 private:
  void check_state(State s) const;

  int n_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace syncmat

#endif
