#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "kakeya/errors.hpp"

namespace kakeya {

// Exact rational scalar. Thin wrapper over GMP's mpq_class; always kept
// canonical (reduced, positive denominator). All geometry, measures and
// predicates in this library run on Rat — floating point never enters a
// certified value.
class Rat {
public:
  Rat() : v_(0) {}
  Rat(int n) : v_(n) {}                // NOLINT(google-explicit-constructor)
  Rat(long n) : v_(static_cast<long int>(n)) {}  // NOLINT
  Rat(long long n);                    // NOLINT
  Rat(long long num, long long den);
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rat(const mpz_class& num, const mpz_class& den);

  // Parses "p/q" or "p" (optional leading '-'). Throws InvalidInput on
  // malformed text or zero denominator.
  static Rat parse(const std::string& text);
  static std::optional<Rat> try_parse(const std::string& text);

  // 2^-e for e >= 0.
  static Rat pow2(long e);

  std::string str() const;  // "p/q", or "p" when q == 1

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  Rat abs() const { return Rat(mpq_class(::abs(v_))); }

  // True when the denominator is a power of two; *exponent receives log2(den).
  bool is_dyadic(unsigned* exponent = nullptr) const;

  // Exact conversion to num * 2^exp2 / 1 scaled integer: returns
  // round-free value of (*this) * 2^exp2 if it is an integer that fits
  // int64, otherwise nullopt. Used by the integer sweep fast path.
  std::optional<std::int64_t> scaled_int64(unsigned exp2) const;

  double to_double() const { return v_.get_d(); }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
  friend Rat operator/(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
  mpq_class v_;
};

inline Rat min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a >= b ? a : b; }

// floor(z^(1/root) * scale) for z >= 0, as an exact integer. scale is a
// positive integer (typically a power of ten); used to render p-th roots
// of rational measures as truncated decimals without floating point.
mpz_class floor_root_scaled(const Rat& z, unsigned long root, const mpz_class& scale);

// Truncated decimal rendering of z^(invExpNum/invExpDen) with `digits`
// fractional digits. Requires z >= 0.
std::string root_decimal(const Rat& z, unsigned long invExpNum, unsigned long invExpDen,
                         unsigned digits);

}  // namespace kakeya
