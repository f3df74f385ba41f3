#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace reedy {

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_prime(std::uint64_t n);

struct Field {
  enum class Kind { Prime, Rational };

  Kind kind = Kind::Rational;
  std::uint32_t p = 0;

  static Field gf(std::uint64_t p);
  static Field rationals() { return Field{}; }

  bool is_prime_field() const { return kind == Kind::Prime; }
  bool operator==(const Field&) const = default;
  std::string describe() const;
};

// Modular inverse by the extended Euclidean algorithm. Requires gcd(a, p) = 1.
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

// A field element tagged with its field. Prime-field elements live in
// `fp` in canonical range [0, p); rationals live in `q`.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Field& f, long v);
  Scalar(const Field& f, const mpq_class& v);

  static Scalar zero(const Field& f) { return Scalar(f, 0L); }
  static Scalar one(const Field& f) { return Scalar(f, 1L); }
  // n/d mapped into the field; throws if d vanishes in it.
  static Scalar fraction(const Field& f, const mpz_class& n, const mpz_class& d);

  const Field& field() const { return field_; }
  std::uint32_t fp() const { return fp_; }
  const mpq_class& q() const { return q_; }

  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;
  bool operator==(const Scalar& o) const;

  std::string str() const;

 private:
  Field field_;
  std::uint32_t fp_ = 0;
  mpq_class q_;
};

}  // namespace reedy
