#include "kakeya/rational.hpp"

#include <cctype>
#include <ostream>

namespace kakeya {

namespace {

mpz_class mpz_from_ll(long long n) {
  // mpz_class has no long long constructor on LP64-agnostic paths; go via
  // decimal text to stay portable.
  return mpz_class(std::to_string(n));
}

bool valid_int_text(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat::Rat(long long n) : v_(mpz_from_ll(n)) {}

Rat::Rat(long long num, long long den) {
  if (den == 0) raise(Errc::InvalidInput, "rational with zero denominator");
  v_ = mpq_class(mpz_from_ll(num), mpz_from_ll(den));
  v_.canonicalize();
}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) raise(Errc::InvalidInput, "rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat Rat::parse(const std::string& text) {
  auto r = try_parse(text);
  if (!r) raise(Errc::InvalidInput, "malformed rational '" + text + "'");
  return *r;
}

std::optional<Rat> Rat::try_parse(const std::string& text) {
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    if (!valid_int_text(text)) return std::nullopt;
    return Rat(mpq_class(mpz_class(text)));
  }
  std::string numText = text.substr(0, slash);
  std::string denText = text.substr(slash + 1);
  if (!valid_int_text(numText) || !valid_int_text(denText)) return std::nullopt;
  mpz_class den(denText);
  if (den == 0) return std::nullopt;
  Rat r;
  r.v_ = mpq_class(mpz_class(numText), den);
  r.v_.canonicalize();
  return r;
}

Rat Rat::pow2(long e) {
  if (e < 0) raise(Errc::InvalidInput, "pow2 of negative exponent");
  mpz_class d(1);
  mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  return Rat(mpz_class(1), d);
}

std::string Rat::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat operator/(const Rat& a, const Rat& b) {
  if (b.v_ == 0) raise(Errc::InvalidInput, "division by zero rational");
  return Rat(mpq_class(a.v_ / b.v_));
}

bool Rat::is_dyadic(unsigned* exponent) const {
  const mpz_class& d = v_.get_den();
  // d is positive and canonical; power of two iff popcount == 1.
  if (mpz_popcount(d.get_mpz_t()) != 1) return false;
  if (exponent) *exponent = static_cast<unsigned>(mpz_scan1(d.get_mpz_t(), 0));
  return true;
}

std::optional<std::int64_t> Rat::scaled_int64(unsigned exp2) const {
  mpz_class scaled = v_.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), exp2);
  if (!mpz_divisible_p(scaled.get_mpz_t(), v_.get_den().get_mpz_t())) return std::nullopt;
  mpz_class q = scaled / v_.get_den();
  if (!q.fits_slong_p()) return std::nullopt;
  long l = q.get_si();
  return static_cast<std::int64_t>(l);
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

mpz_class floor_root_scaled(const Rat& z, unsigned long root, const mpz_class& scale) {
  if (z.sign() < 0) raise(Errc::InvalidInput, "root of negative rational");
  if (root == 0) raise(Errc::InvalidInput, "zeroth root");
  // floor((z * scale^root)^(1/root)) equals floor(z^(1/root) * scale) up to
  // the floor applied before the root; the result is a truncated rendering
  // either way and is deterministic.
  mpz_class scalePow;
  mpz_pow_ui(scalePow.get_mpz_t(), scale.get_mpz_t(), root);
  mpz_class num = z.num() * scalePow;
  mpz_class quotient = num / z.den();  // floor; num >= 0
  mpz_class r;
  mpz_root(r.get_mpz_t(), quotient.get_mpz_t(), root);
  return r;
}

std::string root_decimal(const Rat& z, unsigned long invExpNum, unsigned long invExpDen,
                         unsigned digits) {
  // z^(invExpNum/invExpDen) = (z^invExpNum)^(1/invExpDen)
  mpq_class p;
  mpz_pow_ui(mpq_numref(p.get_mpq_t()), z.num().get_mpz_t(), invExpNum);
  mpz_pow_ui(mpq_denref(p.get_mpq_t()), z.den().get_mpz_t(), invExpNum);
  p.canonicalize();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class scaled = floor_root_scaled(Rat(p), invExpDen, scale);
  std::string s = scaled.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return s;
}

}  // namespace kakeya
