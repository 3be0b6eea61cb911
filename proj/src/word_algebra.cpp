#include "csst/word_algebra.hpp"

#include <algorithm>
#include <numeric>

#include "csst/exact.hpp"

namespace csst {

namespace {

void check_alphabet(int alphabet) {
  if (alphabet < 2 || alphabet > 9) {
    throw Error(ErrorCode::InvalidArgument, "alphabet size must lie in 2..9");
  }
}

void require_csst(const PeriodicWord& w) {
  if (w.alphabet() != kCsstAlphabet) {
    throw Error(ErrorCode::InvalidArgument, "operation is defined for the 3-letter alphabet only");
  }
}

}  // namespace

FiniteWord::FiniteWord(std::vector<Letter> letters, int alphabet)
    : letters_(std::move(letters)), alphabet_(alphabet) {
  check_alphabet(alphabet);
  for (Letter k : letters_) {
    if (k < 1 || k > alphabet) {
      throw Error(ErrorCode::BadLetter, "letter " + std::to_string(int(k)) + " outside 1.." +
                                            std::to_string(alphabet));
    }
  }
}

FiniteWord FiniteWord::parse(std::string_view text, int alphabet) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::ParseError, "bad character in word '" + std::string(text) + "'");
    }
    letters.push_back(static_cast<Letter>(c - '0'));
  }
  return FiniteWord(std::move(letters), alphabet);
}

FiniteWord FiniteWord::prefix(std::size_t n) const {
  FiniteWord out;
  out.alphabet_ = alphabet_;
  out.letters_.assign(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(std::min(n, size())));
  return out;
}

FiniteWord FiniteWord::suffix_from(std::size_t n) const {
  FiniteWord out;
  out.alphabet_ = alphabet_;
  if (n < size()) out.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(n), letters_.end());
  return out;
}

FiniteWord FiniteWord::with(Letter k) const {
  std::vector<Letter> letters = letters_;
  letters.push_back(k);
  return FiniteWord(std::move(letters), alphabet_);
}

bool FiniteWord::starts_with(const FiniteWord& p) const {
  return p.size() <= size() && std::equal(p.letters_.begin(), p.letters_.end(), letters_.begin());
}

std::string FiniteWord::str() const {
  std::string out;
  out.reserve(size());
  for (Letter k : letters_) out.push_back(static_cast<char>('0' + k));
  return out;
}

bool operator<(const FiniteWord& a, const FiniteWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.letters_ < b.letters_;
}

FiniteWord concat(const FiniteWord& u, const FiniteWord& v) {
  std::vector<Letter> letters = u.letters();
  letters.insert(letters.end(), v.letters().begin(), v.letters().end());
  return FiniteWord(std::move(letters), std::max(u.alphabet(), v.alphabet()));
}

std::pair<FiniteWord, FiniteWord> normal_form(const FiniteWord& preperiod, const FiniteWord& period) {
  if (period.empty()) throw Error(ErrorCode::InvalidArgument, "period must be nonempty");
  std::vector<Letter> per = period.letters();
  std::vector<Letter> pre = preperiod.letters();
  const std::size_t q = per.size();
  for (std::size_t d = 1; d < q; ++d) {
    if (q % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < q && repeats; ++i) repeats = per[i] == per[i - d];
    if (repeats) {
      per.resize(d);
      break;
    }
  }
  while (!pre.empty() && pre.back() == per.back()) {
    std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
    pre.pop_back();
  }
  const int alphabet = std::max(preperiod.alphabet(), period.alphabet());
  return {FiniteWord(std::move(pre), alphabet), FiniteWord(std::move(per), alphabet)};
}

PeriodicWord::PeriodicWord(FiniteWord preperiod, FiniteWord period) {
  auto [pre, per] = normal_form(preperiod, period);
  preperiod_ = std::move(pre);
  period_ = std::move(per);
}

PeriodicWord PeriodicWord::parse(std::string_view text, int alphabet) {
  auto open = text.find('(');
  if (open == std::string_view::npos || text.size() < open + 3 || text.back() != ')' ||
      text.find('(', open + 1) != std::string_view::npos) {
    throw Error(ErrorCode::ParseError, "expected 'prefix(period)', got '" + std::string(text) + "'");
  }
  auto pre = text.substr(0, open);
  auto per = text.substr(open + 1, text.size() - open - 2);
  if (per.find(')') != std::string_view::npos) {
    throw Error(ErrorCode::ParseError, "malformed word '" + std::string(text) + "'");
  }
  return PeriodicWord(FiniteWord::parse(pre, alphabet), FiniteWord::parse(per, alphabet));
}

Letter PeriodicWord::at(std::size_t i) const {
  if (i < preperiod_.size()) return preperiod_[i];
  return period_[(i - preperiod_.size()) % period_.size()];
}

PeriodicWord PeriodicWord::drop(std::size_t n) const {
  if (n <= preperiod_.size()) return PeriodicWord(preperiod_.suffix_from(n), period_);
  std::vector<Letter> per = period_.letters();
  std::rotate(per.begin(), per.begin() + static_cast<std::ptrdiff_t>((n - preperiod_.size()) % per.size()),
              per.end());
  return PeriodicWord(FiniteWord({}, alphabet()), FiniteWord(std::move(per), alphabet()));
}

PeriodicWord PeriodicWord::prepend(const FiniteWord& u) const {
  return PeriodicWord(concat(u, preperiod_), period_);
}

std::string PeriodicWord::str() const { return preperiod_.str() + "(" + period_.str() + ")"; }

bool operator<(const PeriodicWord& a, const PeriodicWord& b) {
  if (!(a.preperiod_ == b.preperiod_)) return a.preperiod_ < b.preperiod_;
  return a.period_ < b.period_;
}

PeriodicWord normalize(const PeriodicWord& w) { return PeriodicWord(w.preperiod(), w.period()); }

PeriodicWord shift(const PeriodicWord& w) { return w.drop(1); }

std::optional<FiniteWord> junction_prefix(const PeriodicWord& w) {
  require_csst(w);
  const auto& pre = w.preperiod();
  const auto& per = w.period();
  if (per.size() != 1 || pre.empty()) return std::nullopt;
  const Letter last = pre.back();
  const bool form_12 = per[0] == 2 && last == 1;
  const bool form_21_31 = per[0] == 1 && (last == 2 || last == 3);
  if (!form_12 && !form_21_31) return std::nullopt;
  return pre.prefix(pre.size() - 1);
}

std::vector<PeriodicWord> representatives(const PeriodicWord& w) {
  auto u = junction_prefix(w);
  if (!u) return {w};
  const FiniteWord one({1}), two({2});
  return {PeriodicWord(u->with(1), two), PeriodicWord(u->with(2), one), PeriodicWord(u->with(3), one)};
}

bool equivalent(const PeriodicWord& v, const PeriodicWord& w) {
  require_csst(v);
  require_csst(w);
  if (v == w) return true;
  auto uv = junction_prefix(v);
  auto uw = junction_prefix(w);
  return uv && uw && *uv == *uw;
}

std::size_t common_prefix_length(const PeriodicWord& a, const PeriodicWord& b) {
  const std::size_t bound = std::max(a.preperiod().size(), b.preperiod().size()) +
                            std::lcm(a.period().size(), b.period().size());
  for (std::size_t i = 0; i < bound; ++i) {
    if (a.at(i) != b.at(i)) return i;
  }
  throw Error(ErrorCode::InvalidArgument, "identical words have no finite common prefix");
}

CommonPrefixSplit max_common_prefix_pair(const PeriodicWord& a, const PeriodicWord& b) {
  if (equivalent(a, b)) {
    throw Error(ErrorCode::EquivalentInputs, a.str() + " and " + b.str() + " name the same point");
  }
  const auto reps_a = representatives(a);
  const auto reps_b = representatives(b);
  const PeriodicWord* best_a = nullptr;
  const PeriodicWord* best_b = nullptr;
  std::size_t best = 0;
  for (const auto& ra : reps_a) {
    for (const auto& rb : reps_b) {
      std::size_t len = common_prefix_length(ra, rb);
      if (best_a == nullptr || len > best) {
        best = len;
        best_a = &ra;
        best_b = &rb;
      }
    }
  }
  std::vector<Letter> prefix;
  for (std::size_t i = 0; i < best; ++i) prefix.push_back(best_a->at(i));
  return {FiniteWord(std::move(prefix), a.alphabet()), best_a->drop(best), best_b->drop(best)};
}

LetterStream stream_of(const PeriodicWord& w) {
  return [w](std::size_t i) { return w.at(i); };
}

PeriodicWord random_periodic_word(std::mt19937_64& rng, std::size_t max_pre, std::size_t max_per,
                                  int alphabet) {
  std::uniform_int_distribution<std::size_t> pre_len(0, max_pre);
  std::uniform_int_distribution<std::size_t> per_len(1, std::max<std::size_t>(1, max_per));
  std::uniform_int_distribution<int> letter(1, alphabet);
  auto draw = [&](std::size_t n) {
    std::vector<Letter> out(n);
    for (auto& k : out) k = static_cast<Letter>(letter(rng));
    return FiniteWord(std::move(out), alphabet);
  };
  const std::size_t p = pre_len(rng);
  const std::size_t q = per_len(rng);
  FiniteWord pre = draw(p);
  FiniteWord per = draw(q);
  return PeriodicWord(std::move(pre), std::move(per));
}

std::vector<FiniteWord> all_words(std::size_t n, int alphabet) {
  std::vector<FiniteWord> out;
  std::vector<Letter> cur(n, 1);
  while (true) {
    out.emplace_back(cur, alphabet);
    std::size_t i = n;
    while (i > 0 && cur[i - 1] == alphabet) {
      cur[i - 1] = 1;
      --i;
    }
    if (i == 0) break;
    ++cur[i - 1];
  }
  return out;
}

}  // namespace csst
