#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flexion/scalar.hpp"

namespace flexion {

// Longest word a component may have; variables are u1,v1,...,uR,vR.
inline constexpr int kMaxLength = 8;
inline constexpr int kMaxVars = 2 * kMaxLength;

struct SubstitutionCollapse : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VarIndex {
  enum Axis : std::uint8_t { U, V };
  Axis axis;
  int position;  // 1-based

  int flat() const { return 2 * (position - 1) + (axis == V ? 1 : 0); }
  static VarIndex from_flat(int k) { return {k % 2 ? V : U, k / 2 + 1}; }
  std::string name() const { return (axis == U ? "u" : "v") + std::to_string(position); }
};

inline int u_var(int i) { return 2 * (i - 1); }
inline int v_var(int i) { return 2 * (i - 1) + 1; }

struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};

  int degree() const;
  bool is_one() const { return degree() == 0; }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  std::string str() const;
};

// Graded lexicographic with u1 > v1 > u2 > v2 > ...; "a before b" in printing order.
bool mono_before(const Monomial& a, const Monomial& b);

struct MonoOrder {
  bool operator()(const Monomial& a, const Monomial& b) const { return mono_before(a, b); }
};

struct MonoHash {
  std::size_t operator()(const Monomial& m) const;
};

class LinearForm;

// Polynomial with integer coefficients; terms kept sorted in canonical order.
class Polynomial {
 public:
  struct Term {
    Monomial m;
    mpz_class c;
  };

  Polynomial() = default;
  static Polynomial constant(const mpz_class& c);
  static Polynomial variable(int k);
  static Polynomial from_terms(std::vector<Term> terms);  // merges and sorts

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  bool is_linear() const;  // homogeneous of degree one
  int total_degree() const { return terms_.empty() ? -1 : terms_[0].m.degree(); }
  int degree_in(int k) const;
  int max_var() const;  // -1 for constants
  const mpz_class& leading_coeff() const { return terms_.front().c; }
  mpz_class content() const;

  Polynomial operator-() const;
  Polynomial& operator*=(const mpz_class& c);
  Polynomial divided_by(const mpz_class& c) const;  // exact
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  // Primitive with positive leading coefficient; returns the factor removed.
  Polynomial normalized(mpz_class* unit = nullptr) const;

  Fp eval(const std::vector<Fp>& point) const;
  Rational eval(const std::vector<Rational>& point) const;
  Polynomial substitute(const std::vector<LinearForm>& args) const;

  std::string str() const;

 private:
  std::vector<Term> terms_;
};

// Exact quotient a/b if b divides a.
bool divide_exact(const Polynomial& a, const Polynomial& b, Polynomial* q);
// Normalized gcd over Z[u,v].
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// Integer linear combination of variables with no constant term.
class LinearForm {
 public:
  LinearForm() { c_.fill(0); }
  static LinearForm var(int k);
  static LinearForm u(int i) { return var(u_var(i)); }
  static LinearForm v(int i) { return var(v_var(i)); }

  std::int64_t coeff(int k) const { return c_[k]; }
  bool is_zero() const;
  LinearForm operator-() const;
  LinearForm& operator+=(const LinearForm& o);
  LinearForm& operator-=(const LinearForm& o);
  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
  friend bool operator==(const LinearForm& a, const LinearForm& b) { return a.c_ == b.c_; }

  Polynomial to_polynomial() const;
  std::size_t hash() const;
  std::string str() const;

 private:
  std::array<std::int64_t, kMaxVars> c_;
};

// Rational function scale * num / prod(f_i^e_i), kept in lowest terms.
// Denominator factors are primitive, have positive leading coefficient and
// are pairwise coprime; num is primitive with positive leading coefficient.
class RatFun {
 public:
  using Factor = std::pair<Polynomial, int>;

  RatFun() = default;
  RatFun(long n) : RatFun(Rational(n)) {}  // NOLINT(google-explicit-constructor)
  RatFun(const Rational& q);               // NOLINT(google-explicit-constructor)
  explicit RatFun(const Polynomial& p);
  static RatFun fraction(const Polynomial& num, const Polynomial& den);
  static RatFun var(int k) { return RatFun(Polynomial::variable(k)); }
  // Parses the canonical text format, e.g. "1 / (u1^2*u2 + u1*u2^2)".
  static RatFun parse(const std::string& text);

  bool is_zero() const { return scale_.is_zero(); }
  const Rational& scale() const { return scale_; }
  const Polynomial& primitive_numerator() const { return num_; }
  const std::vector<Factor>& denominator_factors() const { return den_; }
  Polynomial numerator() const;    // expanded, integer, gcd 1 with denominator()
  Polynomial denominator() const;  // expanded, leading coefficient > 0
  std::string canonical_string() const;
  std::string factored_string() const;

  RatFun operator-() const;
  RatFun inv() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inv(); }
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  friend bool operator==(const RatFun& a, const RatFun& b);

  // args[k] replaces variable k (u1,v1,u2,v2,...).
  RatFun substitute_linear(const std::vector<LinearForm>& args) const;
  Fp eval(const std::vector<Fp>& point) const;
  Rational eval(const std::vector<Rational>& point) const;
  int max_var() const;

 private:
  void reduce();

  Rational scale_;
  Polynomial num_;
  std::vector<Factor> den_;
};

// Compiled form of a RatFun for repeated evaluation in one prime field.
class FpEvaluator {
 public:
  FpEvaluator() = default;
  FpEvaluator(const RatFun& f, std::uint64_t p);
  std::uint64_t modulus() const { return p_; }
  Fp operator()(const Fp* point) const;  // point indexed by flat variable

 private:
  struct Poly {
    std::vector<std::pair<std::uint64_t, Monomial>> terms;
    int nvars = 0;
  };
  static Poly compile(const Polynomial& q, std::uint64_t p);
  Fp eval(const Poly& q, const Fp* point) const;

  std::uint64_t p_ = 0;
  Fp scale_;
  Poly num_;
  std::vector<std::pair<Poly, int>> den_;
};

}  // namespace flexion
