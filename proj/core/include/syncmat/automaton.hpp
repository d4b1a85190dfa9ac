#ifndef SYNCMAT_AUTOMATON_HPP
#define SYNCMAT_AUTOMATON_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "syncmat/state_set.hpp"

namespace syncmat {

/// A finite word over an automaton's alphabet. Letters are single characters;
/// the empty word is allowed everywhere.
class Word {
 public:
  Word() = default;
  explicit Word(std::string letters) : letters_(std::move(letters)) {}
  Word(const char* letters) : letters_(letters) {}

  const std::string& str() const { return letters_; }
  int length() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  char at(int i) const { return letters_.at(i); }

  Word prefix(int len) const { return Word(letters_.substr(0, len)); }
  /// Suffix starting at 0-based position pos (pos == length() gives the empty word).
  Word suffix_from(int pos) const { return Word(letters_.substr(pos)); }

  Word operator+(const Word& rhs) const { return Word(letters_ + rhs.letters_); }
  Word operator+(char c) const { return Word(letters_ + c); }
  friend Word operator+(char c, const Word& w) { return Word(c + w.letters_); }
  void push_back(char c) { letters_.push_back(c); }

  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::string letters_;
};

/// Complete deterministic automaton: every (state, letter) pair has exactly
/// one image. States are 1..n; the alphabet order is significant (it fixes
/// exploration order and therefore every canonical witness word).
class Dfa {
 public:
  /// delta[letter_index][state-1] = image state. Throws on structural
  /// violations: empty alphabet, duplicate letters, bad table shape,
  /// out-of-range images.
  Dfa(int n, std::string alphabet, std::vector<std::vector<State>> delta);

  int state_count() const { return n_; }
  const std::string& alphabet() const { return alphabet_; }
  int letter_count() const { return static_cast<int>(alphabet_.size()); }

  /// Index of a letter in the alphabet, or -1.
  int letter_index(char letter) const;
  bool has_letter(char letter) const { return letter_index(letter) >= 0; }

  State step(State s, char letter) const;
  State step_word(State s, const Word& w) const;

  const std::vector<std::vector<State>>& table() const { return delta_; }

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  int n_ = 0;
  std::string alphabet_;
  std::vector<std::vector<State>> delta_;
};

struct Validation {
  bool strongly_connected = false;
};

/// Structural checks run at construction; this reports the strongly-connected
/// flag (a warning-level property: all of the matrix algebra stays valid
/// without it).
Validation validate(const Dfa& dfa);

bool is_strongly_connected(const Dfa& dfa);

/// Image of a state set under a word, letter by letter. apply(dfa, full, w)
/// is the characteristic set c_w of the word's image.
StateSet apply(const Dfa& dfa, const StateSet& set, const Word& w);

/// One-letter image.
StateSet apply_letter(const Dfa& dfa, const StateSet& set, char letter);

/// Pair-merging criterion: true iff some word maps all states to one state.
/// Backward closure over unordered state pairs, O(n^2 * k).
bool is_synchronizing(const Dfa& dfa);

/// Maximum state count accepted by the exact subset search.
inline constexpr int kSubsetSearchMaxStates = 24;

/// Exact shortest reset word by breadth-first search over subset images,
/// exploring letters in alphabet order so the witness is canonical.
/// Returns std::nullopt when the automaton is not synchronizing.
/// Throws when state_count() > kSubsetSearchMaxStates.
std::optional<Word> shortest_sync_word(const Dfa& dfa);

/// Greedy reset word: repeatedly appends a shortest word merging some pair of
/// the current image set (the closest pair, ties broken canonically). The
/// result is verified to synchronize before returning; never shorter than the
/// exact optimum. Throws if the automaton is not synchronizing.
Word greedy_sync_word(const Dfa& dfa);

/// Renumbers states: perm[old-1] = new index. Must be a bijection on 1..n.
Dfa renumber(const Dfa& dfa, const std::vector<State>& perm);

/// The transposition that renames q to 1 (and 1 to q), as a perm vector.
std::vector<State> sink_to_front(int n, State q);

/// Line-oriented text format:
///   dfa <n> <k>
///   letters <l1> <l2> ...
///   state <i>: <image under l1> <image under l2> ...
/// '#' starts a comment. Serialization round-trips bit-exactly.
Dfa parse_dfa(std::string_view text);
std::string serialize_dfa(const Dfa& dfa);

}  // namespace syncmat

#endif
