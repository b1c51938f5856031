#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational scalar used throughout the library.
 *
 * Every quantity the library computes (slopes, invariants, bound values)
 * is a rational number, and every identity is checked with zero tolerance,
 * so the universal scalar is an arbitrary-precision fraction:
 *   - denominator always positive, gcd(|num|, den) = 1 after normalization
 *   - arithmetic is exact; division by zero throws
 *   - literal grammar: -?[0-9]+(/[1-9][0-9]*)?
 *
 * Values are immutable in spirit (all operations return new values) and
 * safe to share across threads once constructed.
 */

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fibslope {

/// Parse or validation failure anywhere in the library.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class Rat {
 public:
  Rat() : value_(0) {}
  template <std::integral T>
  Rat(T n) : value_(make_int(static_cast<long long>(n))) {}  // NOLINT: implicit by design
  Rat(long num, long den);

  static Rat from_int(long long n) { return Rat(n); }

  const mpq_class& raw() const { return value_; }

  Rat operator-() const;
  Rat operator+(const Rat& o) const { return Rat(mpq_class(value_ + o.value_)); }
  Rat operator-(const Rat& o) const { return Rat(mpq_class(value_ - o.value_)); }
  Rat operator*(const Rat& o) const { return Rat(mpq_class(value_ * o.value_)); }
  Rat operator/(const Rat& o) const;

  Rat& operator+=(const Rat& o) { value_ += o.value_; return *this; }
  Rat& operator-=(const Rat& o) { value_ -= o.value_; return *this; }
  Rat& operator*=(const Rat& o) { value_ *= o.value_; return *this; }
  Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

  bool operator==(const Rat& o) const { return value_ == o.value_; }
  bool operator!=(const Rat& o) const { return value_ != o.value_; }
  bool operator<(const Rat& o) const { return value_ < o.value_; }
  bool operator<=(const Rat& o) const { return value_ <= o.value_; }
  bool operator>(const Rat& o) const { return value_ > o.value_; }
  bool operator>=(const Rat& o) const { return value_ >= o.value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  /// Largest integer <= value, as a Rat.
  Rat floor() const;

  /// Integer value of an integral Rat; throws when a fraction remains.
  long long to_int() const;

  std::string str() const;

 private:
  explicit Rat(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }
  static mpq_class make_int(long long n);

  friend Rat parse_rational(std::string_view text);

  mpq_class value_;
};

/// Parse a rational literal `-?[0-9]+(/[1-9][0-9]*)?`; result is normalized.
Rat parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when q = 1); round-trips with parse_rational.
std::string format_rational(const Rat& x);

inline Rat operator+(long a, const Rat& b) { return Rat(a) + b; }
inline Rat operator-(long a, const Rat& b) { return Rat(a) - b; }
inline Rat operator*(long a, const Rat& b) { return Rat(a) * b; }
inline Rat operator/(long a, const Rat& b) { return Rat(a) / b; }

}  // namespace fibslope
