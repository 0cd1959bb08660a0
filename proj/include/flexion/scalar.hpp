#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace flexion {

struct DivisionByZero : std::domain_error {
  using std::domain_error::domain_error;
};

struct ContextMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

// Exact rational, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const mpz_class& n) : v_(n) {}
  Rational(const mpz_class& n, const mpz_class& d);
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Accepts "p", "-p", "p/q".
  static Rational parse(const std::string& text);

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational inv() const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

  std::string str() const;

 private:
  mpq_class v_;
};

inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

bool is_prime_u64(std::uint64_t n);

// Modulus of the evaluation backend: FLEXION_PRIME if set, else 2^61 - 1.
std::uint64_t default_prime();
// Overrides the modulus for subsequently created contexts (CLI flag).
void set_default_prime(std::uint64_t p);

// Element of Z/pZ. The modulus travels with the value so that mixing
// contexts is detected instead of silently producing garbage.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {}
  static Fp from_int(std::int64_t n, std::uint64_t p);
  static Fp from_rational(const Rational& q, std::uint64_t p);

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_, Raw{}); }
  Fp inv() const;
  Fp pow(std::uint64_t e) const;

  Fp& operator+=(const Fp& o);
  Fp& operator-=(const Fp& o);
  Fp& operator*=(const Fp& o);
  Fp& operator/=(const Fp& o) { return *this *= o.inv(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_ && a.p_ == b.p_; }

 private:
  struct Raw {};
  Fp(std::uint64_t v, std::uint64_t p, Raw) : v_(v), p_(p) {}
  void check(const Fp& o) const {
    if (p_ != o.p_) throw ContextMismatch("prime field elements from different moduli");
  }

  std::uint64_t v_ = 0;
  std::uint64_t p_ = kMersenne61;
};

// a + b*eps with eps^2 = 0, over any commutative ring T.
template <class T>
struct Dual {
  T a{}, b{};
  Dual() = default;
  Dual(T re, T eps) : a(std::move(re)), b(std::move(eps)) {}

  Dual operator-() const { return {-a, -b}; }
  Dual& operator+=(const Dual& o) { a += o.a; b += o.b; return *this; }
  Dual& operator-=(const Dual& o) { a -= o.a; b -= o.b; return *this; }
  Dual& operator*=(const Dual& o) {
    T nb = a * o.b + b * o.a;
    a *= o.a;
    b = std::move(nb);
    return *this;
  }
  friend Dual operator+(Dual x, const Dual& y) { return x += y; }
  friend Dual operator-(Dual x, const Dual& y) { return x -= y; }
  friend Dual operator*(Dual x, const Dual& y) { return x *= y; }
  friend bool operator==(const Dual& x, const Dual& y) { return x.a == y.a && x.b == y.b; }
};

}  // namespace flexion
