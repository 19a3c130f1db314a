#ifndef CYCHOM_FIELD_HPP
#define CYCHOM_FIELD_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cychom {

// All arithmetic in the library is exact. Scalars are stored as GMP
// rationals; over a prime field the stored value is the canonical
// residue in [0, p) with denominator 1.
using Rational = mpq_class;

struct FieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact scalar domain: the rationals or a prime field F_p.
class FieldSpec {
 public:
  enum class Kind { Rationals, PrimeField };

  FieldSpec() : kind_(Kind::Rationals), p_(0) {}

  static FieldSpec rationals() { return FieldSpec(); }

  static FieldSpec prime_field(std::uint64_t p);

  // Accepts "rat", "rationals", or "fp:<p>".
  static FieldSpec parse(const std::string& text);

  Kind kind() const { return kind_; }
  std::uint64_t prime() const { return p_; }

  bool operator==(const FieldSpec& other) const {
    return kind_ == other.kind_ && p_ == other.p_;
  }
  bool operator!=(const FieldSpec& other) const { return !(*this == other); }

  std::string to_string() const;

  // Canonical form of a scalar in this field. Over F_p the rational
  // a/b is mapped to a * b^{-1} mod p.
  Rational reduce(const Rational& x) const;

  Rational add(const Rational& a, const Rational& b) const;
  Rational sub(const Rational& a, const Rational& b) const;
  Rational mul(const Rational& a, const Rational& b) const;
  Rational neg(const Rational& a) const;
  // Throws FieldError on division by zero.
  Rational inv(const Rational& a) const;
  Rational div(const Rational& a, const Rational& b) const;

  Rational from_int(long n) const { return reduce(Rational(n)); }

  // In-place canonicalization; no-op over the rationals.
  void normalize(Rational& x) const {
    if (kind_ == Kind::PrimeField) x = reduce(x);
  }

 private:
  explicit FieldSpec(std::uint64_t p) : kind_(Kind::PrimeField), p_(p) {}

  Kind kind_;
  std::uint64_t p_;
};

bool is_prime_u64(std::uint64_t n);

// Exact decimal-free rendering: integers as-is, fractions as "p/q".
std::string scalar_to_string(const Rational& x);

// Parses "p", "-p", or "p/q". Throws FieldError on malformed input.
Rational scalar_from_string(const std::string& text);

}  // namespace cychom

#endif  // CYCHOM_FIELD_HPP
