#include "reedy/field.hpp"

namespace reedy {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::gf(std::uint64_t p) {
  if (p >= (1ULL << 31)) throw FieldError("prime must be below 2^31: " + std::to_string(p));
  if (!is_prime(p)) throw FieldError("not a prime: " + std::to_string(p));
  Field f;
  f.kind = Kind::Prime;
  f.p = static_cast<std::uint32_t>(p);
  return f;
}

std::string Field::describe() const {
  return is_prime_field() ? "GF(" + std::to_string(p) + ")" : "Q";
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t r0 = p, r1 = a % p, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw FieldError("element not invertible mod " + std::to_string(p));
  s0 %= static_cast<std::int64_t>(p);
  if (s0 < 0) s0 += p;
  return static_cast<std::uint32_t>(s0);
}

Scalar::Scalar(const Field& f, long v) : field_(f) {
  if (f.is_prime_field()) {
    long r = v % static_cast<long>(f.p);
    if (r < 0) r += f.p;
    fp_ = static_cast<std::uint32_t>(r);
  } else {
    q_ = v;
  }
}

Scalar::Scalar(const Field& f, const mpq_class& v) : field_(f) {
  if (f.is_prime_field()) {
    *this = fraction(f, v.get_num(), v.get_den());
  } else {
    q_ = v;
    q_.canonicalize();
  }
}

Scalar Scalar::fraction(const Field& f, const mpz_class& n, const mpz_class& d) {
  if (f.is_prime_field()) {
    mpz_class P = f.p;
    mpz_class nn = n % P, dd = d % P;
    if (nn < 0) nn += P;
    if (dd < 0) dd += P;
    if (dd == 0) throw FieldError("denominator vanishes in " + f.describe());
    Scalar s(f, 0L);
    std::uint64_t prod = static_cast<std::uint64_t>(nn.get_ui()) *
                         inverse_mod(static_cast<std::uint32_t>(dd.get_ui()), f.p);
    s.fp_ = static_cast<std::uint32_t>(prod % f.p);
    return s;
  }
  if (d == 0) throw FieldError("zero denominator");
  Scalar s(f, 0L);
  s.q_ = mpq_class(n, d);
  s.q_.canonicalize();
  return s;
}

bool Scalar::is_zero() const { return field_.is_prime_field() ? fp_ == 0 : q_ == 0; }
bool Scalar::is_one() const { return field_.is_prime_field() ? fp_ == 1 : q_ == 1; }

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r = *this;
  if (field_.is_prime_field())
    r.fp_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(fp_) + o.fp_) % field_.p);
  else
    r.q_ += o.q_;
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r = *this;
  if (field_.is_prime_field())
    r.fp_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(fp_) * o.fp_) % field_.p);
  else
    r.q_ *= o.q_;
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (field_.is_prime_field())
    r.fp_ = fp_ == 0 ? 0 : field_.p - fp_;
  else
    r.q_ = -q_;
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw FieldError("division by zero");
  Scalar r = *this;
  if (field_.is_prime_field())
    r.fp_ = inverse_mod(fp_, field_.p);
  else
    r.q_ = 1 / q_;
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  return field_.is_prime_field() ? fp_ == o.fp_ : q_ == o.q_;
}

std::string Scalar::str() const {
  return field_.is_prime_field() ? std::to_string(fp_) : q_.get_str();
}

}  // namespace reedy
