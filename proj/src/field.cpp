#include "cychom/field.hpp"

namespace cychom {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t f = 5; f * f <= n; f += 6) {
    if (n % f == 0 || n % (f + 2) == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime_field(std::uint64_t p) {
  if (!is_prime_u64(p)) {
    throw FieldError("prime field modulus " + std::to_string(p) + " is not prime");
  }
  return FieldSpec(p);
}

FieldSpec FieldSpec::parse(const std::string& text) {
  if (text == "rat" || text == "rationals") return rationals();
  if (text.rfind("fp:", 0) == 0) {
    const std::string digits = text.substr(3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw FieldError("malformed field spec '" + text + "'");
    }
    return prime_field(std::stoull(digits));
  }
  throw FieldError("unknown field spec '" + text + "' (expected rat or fp:<p>)");
}

std::string FieldSpec::to_string() const {
  if (kind_ == Kind::Rationals) return "rationals";
  return "fp:" + std::to_string(p_);
}

Rational FieldSpec::reduce(const Rational& x) const {
  if (kind_ == Kind::Rationals) {
    Rational r = x;
    r.canonicalize();
    return r;
  }
  mpz_class p(static_cast<unsigned long>(p_));
  mpz_class num = x.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = x.get_den() % p;
  if (den == 0) throw FieldError("denominator divisible by p in " + to_string());
  mpz_class den_inv;
  if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0) {
    throw FieldError("denominator not invertible in " + to_string());
  }
  mpz_class res = (num * den_inv) % p;
  if (res < 0) res += p;
  return Rational(res);
}

Rational FieldSpec::add(const Rational& a, const Rational& b) const {
  return reduce(Rational(a + b));
}

Rational FieldSpec::sub(const Rational& a, const Rational& b) const {
  return reduce(Rational(a - b));
}

Rational FieldSpec::mul(const Rational& a, const Rational& b) const {
  return reduce(Rational(a * b));
}

Rational FieldSpec::neg(const Rational& a) const {
  return reduce(Rational(-a));
}

Rational FieldSpec::inv(const Rational& a) const {
  Rational r = reduce(a);
  if (r == 0) throw FieldError("division by zero in " + to_string());
  if (kind_ == Kind::Rationals) return Rational(1) / r;
  mpz_class p(static_cast<unsigned long>(p_));
  mpz_class res;
  mpz_invert(res.get_mpz_t(), mpz_class(r.get_num()).get_mpz_t(), p.get_mpz_t());
  if (res < 0) res += p;
  return Rational(res);
}

Rational FieldSpec::div(const Rational& a, const Rational& b) const {
  return mul(a, inv(b));
}

std::string scalar_to_string(const Rational& x) {
  return x.get_str();
}

Rational scalar_from_string(const std::string& text) {
  if (text.empty()) throw FieldError("empty scalar literal");
  Rational r;
  if (r.set_str(text, 10) != 0) {
    throw FieldError("malformed scalar literal '" + text + "'");
  }
  if (r.get_den() == 0) throw FieldError("zero denominator in scalar literal '" + text + "'");
  r.canonicalize();
  return r;
}

}  // namespace cychom
