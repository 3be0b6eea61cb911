#pragma once

// Symbolic addresses over the alphabet {1, ..., m}: finite words and
// eventually periodic infinite words u (v)^inf, with the CSST identification
// of the three addresses of each junction f_u(0).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace csst {

using Letter = std::uint8_t;

inline constexpr int kCsstAlphabet = 3;

class FiniteWord {
 public:
  FiniteWord() = default;
  explicit FiniteWord(std::vector<Letter> letters, int alphabet = kCsstAlphabet);

  /// Digits only, e.g. "" or "312".
  static FiniteWord parse(std::string_view text, int alphabet = kCsstAlphabet);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter back() const { return letters_.back(); }
  const std::vector<Letter>& letters() const { return letters_; }
  int alphabet() const { return alphabet_; }

  FiniteWord prefix(std::size_t n) const;
  FiniteWord suffix_from(std::size_t n) const;
  FiniteWord with(Letter k) const;
  bool starts_with(const FiniteWord& prefix) const;

  std::string str() const;

  friend bool operator==(const FiniteWord& a, const FiniteWord& b) {
    return a.letters_ == b.letters_;
  }
  /// Shortlex: shorter words first, then lexicographic.
  friend bool operator<(const FiniteWord& a, const FiniteWord& b);

 private:
  std::vector<Letter> letters_;
  int alphabet_ = kCsstAlphabet;
};

FiniteWord concat(const FiniteWord& u, const FiniteWord& v);

/// preperiod (period)^inf. The constructor normalizes: the period is
/// primitive and the preperiod is as short as possible, so equality of
/// addresses is structural.
class PeriodicWord {
 public:
  PeriodicWord(FiniteWord preperiod, FiniteWord period);

  /// "1(2)", "(31)", "33(1)".
  static PeriodicWord parse(std::string_view text, int alphabet = kCsstAlphabet);

  const FiniteWord& preperiod() const { return preperiod_; }
  const FiniteWord& period() const { return period_; }
  int alphabet() const { return period_.alphabet(); }

  /// Letter at 0-based position i.
  Letter at(std::size_t i) const;
  /// Drops the first n letters.
  PeriodicWord drop(std::size_t n) const;
  /// u followed by this word.
  PeriodicWord prepend(const FiniteWord& u) const;

  std::string str() const;

  friend bool operator==(const PeriodicWord& a, const PeriodicWord& b) {
    return a.preperiod_ == b.preperiod_ && a.period_ == b.period_;
  }
  friend bool operator<(const PeriodicWord& a, const PeriodicWord& b);

 private:
  FiniteWord preperiod_;
  FiniteWord period_;
};

/// Normal form of preperiod (period)^inf as a (preperiod, period) pair.
std::pair<FiniteWord, FiniteWord> normal_form(const FiniteWord& preperiod, const FiniteWord& period);

/// Re-derives the normal form; idempotent.
PeriodicWord normalize(const PeriodicWord& w);

/// Tail w_2 w_3 ...
PeriodicWord shift(const PeriodicWord& w);

/// The u with w in {u1(2), u2(1), u3(1)}, when w addresses a junction f_u(0).
std::optional<FiniteWord> junction_prefix(const PeriodicWord& w);

/// All addresses of the point pi(w): one word, or the three junction words.
std::vector<PeriodicWord> representatives(const PeriodicWord& w);

/// True when v and w address the same point of the CSST.
bool equivalent(const PeriodicWord& v, const PeriodicWord& w);

struct CommonPrefixSplit {
  FiniteWord prefix;
  PeriodicWord tail_a;
  PeriodicWord tail_b;
};

/// Over all representative pairs, the one with the longest common prefix.
/// Throws EquivalentInputs when a and b address the same point.
CommonPrefixSplit max_common_prefix_pair(const PeriodicWord& a, const PeriodicWord& b);

/// Length of the common prefix of two distinct words.
std::size_t common_prefix_length(const PeriodicWord& a, const PeriodicWord& b);

/// Letter source for arbitrary (not necessarily periodic) infinite words.
using LetterStream = std::function<Letter(std::size_t)>;

LetterStream stream_of(const PeriodicWord& w);

/// Uniform letters, preperiod length in [0, max_pre], period length in [1, max_per].
PeriodicWord random_periodic_word(std::mt19937_64& rng, std::size_t max_pre = 12,
                                  std::size_t max_per = 6, int alphabet = kCsstAlphabet);

/// All finite words of length n in lexicographic order.
std::vector<FiniteWord> all_words(std::size_t n, int alphabet = kCsstAlphabet);

}  // namespace csst
