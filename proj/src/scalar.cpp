#include "flexion/scalar.hpp"

#include <cstdlib>
#include <optional>

namespace flexion {

Rational::Rational(const mpz_class& n, const mpz_class& d) {
  if (d == 0) throw DivisionByZero("rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(text, 10));
    return Rational(mpz_class(text.substr(0, slash), 10), mpz_class(text.substr(slash + 1), 10));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
}

Rational Rational::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of 0");
  return Rational(mpq_class(1 / v_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero("division by 0");
  v_ /= o.v_;
  return *this;
}

std::string Rational::str() const { return v_.get_str(); }

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  u128 x = static_cast<u128>(a) * b;
  if (p == kMersenne61) {
    std::uint64_t r = static_cast<std::uint64_t>(x & p) + static_cast<std::uint64_t>(x >> 61);
    r = (r & p) + (r >> 61);
    return r >= p ? r - p : r;
  }
  return static_cast<std::uint64_t>(x % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::optional<std::uint64_t>& prime_override() {
  static std::optional<std::uint64_t> p;
  return p;
}

void validate_modulus(std::uint64_t p) {
  if (p < (std::uint64_t{1} << 60) || p >= (std::uint64_t{1} << 63) || !is_prime_u64(p))
    throw std::invalid_argument("evaluation modulus must be a prime in [2^60, 2^63): " +
                                std::to_string(p));
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all 64-bit n.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t default_prime() {
  auto& over = prime_override();
  if (over) return *over;
  static const std::uint64_t from_env = [] {
    const char* env = std::getenv("FLEXION_PRIME");
    if (!env || !*env) return kMersenne61;
    std::uint64_t p = std::stoull(env);
    validate_modulus(p);
    return p;
  }();
  return from_env;
}

void set_default_prime(std::uint64_t p) {
  validate_modulus(p);
  prime_override() = p;
}

Fp Fp::from_int(std::int64_t n, std::uint64_t p) {
  if (n >= 0) return Fp(static_cast<std::uint64_t>(n), p);
  std::uint64_t m = static_cast<std::uint64_t>(-(n + 1)) + 1;  // |n| without overflow
  return -Fp(m, p);
}

Fp Fp::from_rational(const Rational& q, std::uint64_t p) {
  mpz_class pz;
  mpz_import(pz.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  auto reduce = [&](const mpz_class& z) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), pz.get_mpz_t());
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, r.get_mpz_t());
    return Fp(out, p);
  };
  return reduce(q.num()) / reduce(q.den());
}

Fp Fp::inv() const {
  if (v_ == 0) throw DivisionByZero("inverse of 0 in F_p");
  return Fp(powmod(v_, p_ - 2, p_), p_, Raw{});
}

Fp Fp::pow(std::uint64_t e) const { return Fp(powmod(v_, e, p_), p_, Raw{}); }

Fp& Fp::operator+=(const Fp& o) {
  check(o);
  v_ += o.v_;
  if (v_ >= p_) v_ -= p_;
  return *this;
}

Fp& Fp::operator-=(const Fp& o) {
  check(o);
  v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + (p_ - o.v_);
  return *this;
}

Fp& Fp::operator*=(const Fp& o) {
  check(o);
  v_ = mulmod(v_, o.v_, p_);
  return *this;
}

}  // namespace flexion
