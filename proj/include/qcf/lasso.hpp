#pragma once

// Ultimately periodic traces prefix . loop^omega over a small alphabet.
// A letter is a bitmask over the (sorted) alphabet, so at most 64 atoms.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace qcf {

using Letter = std::uint64_t;
inline constexpr std::size_t kMaxAlphabet = 64;

class Alphabet {
 public:
  Alphabet() = default;
  /// Sorts and deduplicates; throws Error on invalid names or more than 64 atoms.
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::optional<std::size_t> index(std::string_view name) const;
  /// Bitmask of the given atoms; throws Error on an unknown name.
  Letter mask(const std::vector<std::string>& atoms) const;
  Letter full_mask() const;
  bool contains_all(const Alphabet& other) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }
  friend bool operator!=(const Alphabet& a, const Alphabet& b) { return !(a == b); }

 private:
  std::vector<std::string> names_;
};

class LassoTrace {
 public:
  /// The empty-alphabet word {}^omega.
  LassoTrace() : loop_{0} {}
  LassoTrace(Alphabet alphabet, std::vector<Letter> prefix, std::vector<Letter> loop);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Letter>& prefix() const { return prefix_; }
  const std::vector<Letter>& loop() const { return loop_; }
  std::size_t prefix_length() const { return prefix_.size(); }
  std::size_t loop_length() const { return loop_.size(); }

  /// Letter at any position n of the infinite word.
  Letter at(std::size_t n) const;
  bool holds(std::size_t atom, std::size_t n) const { return (at(n) >> atom) & 1U; }

  /// Primitive loop, rolled back as far as possible.
  LassoTrace canonical() const;
  bool is_canonical() const;
  /// The same word with exactly the given shape. Requires p >= prefix_length()
  /// and l a multiple of loop_length().
  LassoTrace reshaped(std::size_t p, std::size_t l) const;
  /// The same word over a larger alphabet (new atoms never hold).
  LassoTrace with_alphabet(const Alphabet& bigger) const;

  /// Same infinite word (compared canonically).
  bool same_word(const LassoTrace& other) const;

  friend bool operator==(const LassoTrace& a, const LassoTrace& b) {
    return a.alphabet_ == b.alphabet_ && a.prefix_ == b.prefix_ && a.loop_ == b.loop_;
  }
  friend bool operator<(const LassoTrace& a, const LassoTrace& b) {
    if (a.prefix_ != b.prefix_) return a.prefix_ < b.prefix_;
    return a.loop_ < b.loop_;
  }

 private:
  Alphabet alphabet_;
  std::vector<Letter> prefix_;
  std::vector<Letter> loop_;
};

/// Parses `{b,u}{m,d} | {b,u}{m,d}`. Without `|` the letters form a pure loop.
/// When `alphabet` is absent the atoms mentioned in the text are used.
LassoTrace parse_lasso(std::string_view text, const std::optional<Alphabet>& alphabet = std::nullopt);
std::string render_letter(const Alphabet& alphabet, Letter letter);
std::string render_lasso(const LassoTrace& t);

struct Alignment {
  std::size_t prefix = 0;
  std::size_t loop = 1;
  std::vector<LassoTrace> traces;
};

/// Common shape (max prefix, lcm of loops); throws Error on alphabet mismatch.
Alignment align_lassos(const std::vector<LassoTrace>& ts);

/// Position-wise X-difference pattern of t against the reference, over
/// positions [0, P+L) of the aligned shape, flattened to P+L blocks of |X| bits.
boost::dynamic_bitset<> difference_pattern(const LassoTrace& reference, const LassoTrace& t,
                                           Letter x_mask, std::size_t p, std::size_t l);

/// t1 <=_ref(X) t2: every X-difference of t1 is also a difference of t2.
bool subset_similarity(const LassoTrace& reference, const LassoTrace& t1, const LassoTrace& t2,
                       const std::vector<std::string>& x);

}  // namespace qcf
