#pragma once

#include <map>
#include <memory>
#include <vector>

#include "flexion/units.hpp"

namespace flexion {

// x + a_1 x^2 + ... + a_N x^(N+1), truncated above x^(N+1). a[0] = 1 always.
struct PowerSeries {
  std::vector<Rational> a;

  PowerSeries() : a{Rational(1)} {}
  explicit PowerSeries(int order) : a(static_cast<std::size_t>(order) + 1) { a[0] = 1; }
  // coeffs are a_1, ..., a_N.
  static PowerSeries from_coeffs(const std::vector<Rational>& coeffs);
  static PowerSeries identity(int order) { return PowerSeries(order); }

  int order() const { return static_cast<int>(a.size()) - 1; }
  Rational coeff(int r) const { return r < static_cast<int>(a.size()) ? a[r] : Rational(0); }
  friend bool operator==(const PowerSeries& f, const PowerSeries& g) { return f.a == g.a; }
};

// sum_{r=1..N} eps_r x^(r+1) d/dx. e[0] is unused and kept zero.
struct Derivation {
  std::vector<Rational> e;

  Derivation() : e(1) {}
  explicit Derivation(int order) : e(static_cast<std::size_t>(order) + 1) {}
  static Derivation from_coeffs(const std::vector<Rational>& coeffs);
  // x^(r+1) d/dx
  static Derivation basis(int r, int order);

  int order() const { return static_cast<int>(e.size()) - 1; }
  Rational coeff(int r) const { return r < static_cast<int>(e.size()) ? e[r] : Rational(0); }
  friend bool operator==(const Derivation& x, const Derivation& y) { return x.e == y.e; }
};

PowerSeries ps_compose(const PowerSeries& f, const PowerSeries& g);  // f(g(x))
PowerSeries ps_inverse(const PowerSeries& f);
Derivation diff_bracket(const Derivation& a, const Derivation& b);
PowerSeries giff_exp(const Derivation& d);
Derivation giff_log(const PowerSeries& f);
// x - f/f' as sum gamma_r x^(r+1).
Derivation dilator(const PowerSeries& f);

// re(x) = 1 - e^(-x) and its inverse -log(1 - x).
PowerSeries re_series(int order);
PowerSeries re_inverse_series(int order);
PowerSeries random_series(std::uint64_t seed, int order);

// Terms u_r (x) u_{m_1} ... u_{m_r} of the coproduct of u_N, u_n being the
// coefficient of x^n.
struct CoproductTerm {
  int r;
  std::vector<int> m;
};
std::vector<CoproductTerm> giff_coproduct(int n);
// <Delta(u_N), f (x) g>, which is the coefficient of x^N in f(g(x)).
Rational coproduct_pairing(const std::vector<CoproductTerm>& terms, const PowerSeries& f, const PowerSeries& g);

// re_r and dro_r for one unit, backend and truncation, built on first use.
template <class T>
class ReFamily {
 public:
  ReFamily(const typename T::Ctx& ctx, FlexionUnit unit, int trunc);

  const FlexionUnit& unit() const { return unit_; }
  const typename T::Ctx& ctx() const { return ctx_; }
  int trunc() const { return trunc_; }
  const Bimould<T>& e() const { return e_; }
  const Bimould<T>& o() const { return o_; }
  const Bimould<T>& oz() const { return oz_; }

  // re_1 = E, re_(r+1) = arit(re_r)(E), restricted to length r+1.
  const Bimould<T>& re(int r) const;
  // swap(re_r).
  const Bimould<T>& dro(int r) const;
  // sum over w = a w_i b of (r+1-i) oz(a|w_i) O(|a w_i|b) oz(|w_i b).
  const Bimould<T>& dro_closed(int r) const;

 private:
  typename T::Ctx ctx_;
  FlexionUnit unit_;
  int trunc_;
  Bimould<T> e_, o_, oz_;
  mutable std::map<int, Bimould<T>> re_, dro_, dro_closed_;
};

template <class T>
Bimould<T> he_map(const ReFamily<T>& fam, const Derivation& d);
// expari(He(giff_log f)).
template <class T>
Bimould<T> se_map(const ReFamily<T>& fam, const PowerSeries& f);
// He(dilator f).
template <class T>
Bimould<T> te_map(const ReFamily<T>& fam, const PowerSeries& f);
// 1 + sum (r+1) a_r leng_r(oz).
template <class T>
Bimould<T> o_star(const ReFamily<T>& fam, const PowerSeries& f);

// The S with S(empty) = 1 and der(S) = preari(S, D), solved length by length.
template <class T>
Bimould<T> integrate_dilator(const Bimould<T>& d);

enum class Secondary { ess, oss, dess, doss };
std::string to_string(Secondary s);

// ess = Se(re) for E, oss = Se(re) for O, doss = swap(ess), dess = swap(oss).
template <class T>
Bimould<T> secondary(const typename T::Ctx& ctx, const FlexionUnit& unit, Secondary which, int trunc);

}  // namespace flexion
