#pragma once

// Exact rational scalars and Gaussian-rational points, plus the library's
// single error type.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace csst {

using Rational = mpq_class;

enum class ErrorCode {
  BadLetter,
  ParseError,
  InvalidArgument,
  NotContracting,
  PointOutsideHull,
  EquivalentInputs,
  UnknownVertex,
  NotABranchPoint,
  NoBranchPoint,
  DegenerateInput,
  NotATree,
  InvalidExcursion,
  NotMValent,
  NotALeaf,
  DepthUnavailable,
  AlphabetMismatch,
  MatchFailed,
  OutOfDomain,
  IndexOutOfRange,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Canonical "p/q" (or "p" for integers).
std::string to_string(const Rational& r);

/// Parses "p/q", "p", or a finite decimal such as "0.001" / "1e-3" exactly.
Rational parse_rational(std::string_view text);

/// Twelve significant digits, always with a decimal point ("2.0", "1.33333333333").
std::string to_decimal(const Rational& r);

/// "p/q (= d)" as printed by the CLI.
std::string format_length(const Rational& r);

/// 2^e for any integer e.
Rational pow2(long e);

/// Exact conversion; every finite double is a dyadic rational.
Rational from_double(double x);

/// Points of the complex plane with rational coordinates.
struct Point {
  Rational x;
  Rational y;

  Point() = default;
  Point(Rational re, Rational im) : x(std::move(re)), y(std::move(im)) {}
  Point(long re, long im) : x(re), y(im) {}

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(const Point& a, const Point& b) {
    return {a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x};
  }
  friend Point operator*(const Rational& s, const Point& a) { return {s * a.x, s * a.y}; }

  Point conj() const { return {x, -y}; }
  Rational norm2() const { return x * x + y * y; }
  double abs() const;
};

/// Lexicographic (x, then y); usable as a map key.
bool operator<(const Point& a, const Point& b);

/// Euclidean distance in double precision.
double euclid(const Point& a, const Point& b);

/// Exact length when the squared distance is a rational square; otherwise the
/// nearest double, converted exactly.
Rational exact_distance(const Point& a, const Point& b);

/// "(x, y)" with exact rationals.
std::string to_string(const Point& p);

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept;
};

}  // namespace csst
