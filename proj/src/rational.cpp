#include "fibslope/rational.hpp"

#include <cctype>

namespace fibslope {

mpq_class Rat::make_int(long long n) {
  bool neg = n < 0;
  unsigned long long m = neg ? 0ULL - static_cast<unsigned long long>(n)
                             : static_cast<unsigned long long>(n);
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(m), 0, 0, &m);
  if (neg) z = -z;
  return mpq_class(z);
}

Rat::Rat(long num, long den) : value_(0) {
  if (den == 0) throw ValidationError("rational: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rat Rat::operator-() const { return Rat(mpq_class(-value_)); }

Rat Rat::operator/(const Rat& o) const {
  if (o.is_zero()) throw ValidationError("rational: division by zero");
  return Rat(mpq_class(value_ / o.value_));
}

Rat Rat::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return Rat(mpq_class(q));
}

long long Rat::to_int() const {
  if (!is_integer()) throw ValidationError("rational: " + str() + " is not an integer");
  mpz_class n = value_.get_num();
  if (!n.fits_slong_p()) throw ValidationError("rational: integer out of range: " + str());
  return n.get_si();
}

std::string Rat::str() const { return format_rational(*this); }

Rat parse_rational(std::string_view text) {
  auto malformed = [&]() -> ValidationError {
    return ValidationError("rational: malformed literal '" + std::string(text) + "'");
  };
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    if (text[i] == '+') throw malformed();  // grammar allows '-' only
    ++i;
  }
  std::size_t num_begin = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_begin) throw malformed();
  std::string num(text.substr(0, i));
  std::string den = "1";
  if (i < text.size()) {
    if (text[i] != '/') throw malformed();
    ++i;
    std::size_t den_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_begin || i != text.size()) throw malformed();
    den = std::string(text.substr(den_begin));
    if (den[0] == '0') throw malformed();  // covers the zero denominator too
  }
  mpz_class num_z(num), den_z(den);
  mpq_class v(num_z, den_z);
  v.canonicalize();
  return Rat(std::move(v));
}

std::string format_rational(const Rat& x) { return x.raw().get_str(); }

}  // namespace fibslope
