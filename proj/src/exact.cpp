#include "csst/exact.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

namespace csst {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadLetter: return "BadLetter";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotContracting: return "NotContracting";
    case ErrorCode::PointOutsideHull: return "PointOutsideHull";
    case ErrorCode::EquivalentInputs: return "EquivalentInputs";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::NotABranchPoint: return "NotABranchPoint";
    case ErrorCode::NoBranchPoint: return "NoBranchPoint";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::InvalidExcursion: return "InvalidExcursion";
    case ErrorCode::NotMValent: return "NotMValent";
    case ErrorCode::NotALeaf: return "NotALeaf";
    case ErrorCode::DepthUnavailable: return "DepthUnavailable";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::MatchFailed: return "MatchFailed";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
  }
  return "Unknown";
}

std::string to_string(const Rational& r) { return r.get_str(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorCode::ParseError, "not a number: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_number(text);
    mpz_class n{std::string(num)}, d{std::string(den)};
    if (d == 0) bad_number(text);
    value = Rational(n, d);
    value.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) bad_number(text);
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      auto whole = s.substr(0, dot);
      auto frac = s.substr(dot + 1);
      if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
          (whole.empty() && frac.empty())) {
        bad_number(text);
      }
      digits = std::string(whole) + std::string(frac);
      exponent -= static_cast<long>(frac.size());
    } else {
      if (!all_digits(s)) bad_number(text);
      digits = std::string(s);
    }
    mpz_class mantissa(digits);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    value = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
    value.canonicalize();
  }
  return negative ? Rational(-value) : value;
}

std::string to_decimal(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", r.get_d());
  std::string out(buf);
  if (out.find_first_of(".eni") == std::string::npos) out += ".0";
  return out;
}

std::string format_length(const Rational& r) { return to_string(r) + " (= " + to_decimal(r) + ")"; }

Rational pow2(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(std::labs(e)));
  if (e >= 0) return Rational(p);
  Rational out(mpz_class(1), p);
  return out;
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite value");
  Rational r;
  mpq_set_d(r.get_mpq_t(), x);
  return r;
}

double Point::abs() const { return std::hypot(x.get_d(), y.get_d()); }

bool operator<(const Point& a, const Point& b) {
  if (int c = cmp(a.x, b.x); c != 0) return c < 0;
  return cmp(a.y, b.y) < 0;
}

double euclid(const Point& a, const Point& b) { return (a - b).abs(); }

Rational exact_distance(const Point& a, const Point& b) {
  Point d = a - b;
  if (d.x == 0) return abs(d.y);
  if (d.y == 0) return abs(d.x);
  Rational sq = d.norm2();
  mpz_class num = sq.get_num(), den = sq.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational out(rn, rd);
    out.canonicalize();
    return out;
  }
  return from_double(std::sqrt(sq.get_d()));
}

std::string to_string(const Point& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }

namespace {

std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_size(z.get_mpz_t())) * 0x9e3779b97f4a7c15ULL;
  h ^= static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
  std::size_t limbs = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < limbs && i < 4; ++i) {
    h = (h ^ static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i)))) *
        0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::size_t PointHash::operator()(const Point& p) const noexcept {
  std::size_t h = hash_mpz(p.x.get_num());
  h = h * 31 + hash_mpz(p.x.get_den());
  h = h * 31 + hash_mpz(p.y.get_num());
  h = h * 31 + hash_mpz(p.y.get_den());
  return h;
}

}  // namespace csst
