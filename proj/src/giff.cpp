#include "flexion/giff.hpp"

#include <functional>
#include <random>

namespace flexion {

namespace {

using Poly = std::vector<Rational>;  // dense, index = power of x

Poly mul(const Poly& p, const Poly& q, std::size_t max_deg) {
  Poly out(max_deg + 1);
  for (std::size_t i = 0; i < p.size() && i <= max_deg; ++i) {
    if (p[i].is_zero()) continue;
    for (std::size_t j = 0; j < q.size() && i + j <= max_deg; ++j)
      if (!q[j].is_zero()) out[i + j] += p[i] * q[j];
  }
  return out;
}

Poly to_poly(const PowerSeries& f) {
  Poly p(f.a.size() + 1);
  for (std::size_t k = 0; k < f.a.size(); ++k) p[k + 1] = f.a[k];
  return p;
}

PowerSeries from_poly(const Poly& p, int order) {
  PowerSeries f(order);
  for (int k = 1; k <= order; ++k) f.a[k] = k + 1 < static_cast<int>(p.size()) ? p[k + 1] : Rational(0);
  return f;
}

// D(p) for D = sum eps_r x^(r+1) d/dx.
Poly apply(const Derivation& d, const Poly& p, std::size_t max_deg) {
  Poly out(max_deg + 1);
  for (std::size_t j = 1; j < p.size(); ++j) {
    if (p[j].is_zero()) continue;
    Rational dp = p[j] * Rational(static_cast<long>(j));  // x^(j-1) coefficient of p'
    for (int r = 1; r <= d.order(); ++r) {
      std::size_t deg = j - 1 + static_cast<std::size_t>(r) + 1;
      if (deg > max_deg) break;
      if (!d.e[r].is_zero()) out[deg] += d.e[r] * dp;
    }
  }
  return out;
}

// p / q as a power series to degree max_deg; q[0] must be nonzero.
Poly divide(const Poly& p, const Poly& q, std::size_t max_deg) {
  Poly out(max_deg + 1);
  Rational inv0 = q.at(0).inv();
  for (std::size_t k = 0; k <= max_deg; ++k) {
    Rational s = k < p.size() ? p[k] : Rational(0);
    for (std::size_t j = 1; j <= k && j < q.size(); ++j) s -= q[j] * out[k - j];
    out[k] = s * inv0;
  }
  return out;
}

PowerSeries padded(const PowerSeries& f, int order) {
  if (f.order() >= order) return f;
  PowerSeries g(order);
  for (int k = 1; k <= f.order(); ++k) g.a[k] = f.a[k];
  return g;
}

}  // namespace

PowerSeries PowerSeries::from_coeffs(const std::vector<Rational>& coeffs) {
  PowerSeries f(static_cast<int>(coeffs.size()));
  for (std::size_t k = 0; k < coeffs.size(); ++k) f.a[k + 1] = coeffs[k];
  return f;
}

Derivation Derivation::from_coeffs(const std::vector<Rational>& coeffs) {
  Derivation d(static_cast<int>(coeffs.size()));
  for (std::size_t k = 0; k < coeffs.size(); ++k) d.e[k + 1] = coeffs[k];
  return d;
}

Derivation Derivation::basis(int r, int order) {
  Derivation d(order);
  if (r >= 1 && r <= order) d.e[r] = 1;
  return d;
}

PowerSeries ps_compose(const PowerSeries& f, const PowerSeries& g) {
  const int n = std::min(f.order(), g.order());
  const auto max_deg = static_cast<std::size_t>(n) + 1;
  Poly gp = to_poly(g);
  Poly power = gp;
  Poly out(max_deg + 1);
  for (int k = 0; k <= n; ++k) {
    if (k > 0) power = mul(power, gp, max_deg);
    for (std::size_t j = 0; j <= max_deg && j < power.size(); ++j) out[j] += f.a[k] * power[j];
  }
  return from_poly(out, n);
}

PowerSeries ps_inverse(const PowerSeries& f) {
  PowerSeries h(f.order());
  for (int k = 1; k <= f.order(); ++k) h.a[k] = -ps_compose(f, h).a[k];
  return h;
}

Derivation diff_bracket(const Derivation& a, const Derivation& b) {
  const int n = std::min(a.order(), b.order());
  Derivation out(n);
  for (int r = 1; r <= n; ++r)
    for (int s = 1; r + s <= n; ++s) out.e[r + s] += Rational(r - s) * a.e[r] * b.e[s];
  return out;
}

PowerSeries giff_exp(const Derivation& d) {
  const int n = d.order();
  const auto max_deg = static_cast<std::size_t>(n) + 1;
  Poly term(max_deg + 1), sum(max_deg + 1);
  term[1] = sum[1] = 1;
  for (std::size_t k = 1; k <= max_deg; ++k) {
    term = apply(d, term, max_deg);
    Rational inv_k = Rational(static_cast<long>(k)).inv();
    for (auto& c : term) c *= inv_k;
    for (std::size_t j = 0; j <= max_deg; ++j) sum[j] += term[j];
  }
  return from_poly(sum, n);
}

Derivation giff_log(const PowerSeries& f) {
  Derivation d(f.order());
  for (int k = 1; k <= f.order(); ++k) d.e[k] = f.a[k] - giff_exp(d).a[k];
  return d;
}

Derivation dilator(const PowerSeries& f) {
  const int n = f.order();
  Poly big_f(n + 1), big_g(n + 1);  // f = x F, f' = G
  for (int r = 0; r <= n; ++r) {
    big_f[r] = f.a[r];
    big_g[r] = f.a[r] * Rational(r + 1);
  }
  Poly q = divide(big_f, big_g, static_cast<std::size_t>(n));
  Derivation d(n);
  for (int r = 1; r <= n; ++r) d.e[r] = -q[r];
  return d;
}

PowerSeries re_series(int order) {
  PowerSeries f(order);
  mpz_class fact = 1;
  for (int r = 1; r <= order; ++r) {
    fact *= r + 1;
    f.a[r] = Rational(mpz_class(r % 2 ? -1 : 1), fact);
  }
  return f;
}

PowerSeries re_inverse_series(int order) {
  PowerSeries f(order);
  for (int r = 1; r <= order; ++r) f.a[r] = Rational(mpz_class(1), mpz_class(r + 1));
  return f;
}

PowerSeries random_series(std::uint64_t seed, int order) {
  std::mt19937_64 g(point_seed(seed, order, 0, 0));
  PowerSeries f(order);
  for (int r = 1; r <= order; ++r) {
    auto num = static_cast<long>(uniform_below(g, 11)) - 5;
    auto den = static_cast<long>(uniform_below(g, 4)) + 1;
    f.a[r] = Rational(mpz_class(num), mpz_class(den));
  }
  return f;
}

std::vector<CoproductTerm> giff_coproduct(int n) {
  if (n < 1) throw std::invalid_argument("coproduct degree must be at least 1");
  std::vector<CoproductTerm> out;
  std::vector<int> m;
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      out.push_back({static_cast<int>(m.size()), m});
      return;
    }
    for (int k = 1; k <= left; ++k) {
      m.push_back(k);
      rec(left - k);
      m.pop_back();
    }
  };
  rec(n);
  return out;
}

Rational coproduct_pairing(const std::vector<CoproductTerm>& terms, const PowerSeries& f, const PowerSeries& g) {
  Rational s;
  for (const auto& t : terms) {
    Rational p = f.coeff(t.r - 1);
    for (int mi : t.m) p *= g.coeff(mi - 1);
    s += p;
  }
  return s;
}

// ------------------------------------------------------------------ ReFamily

namespace {

template <class T>
Bimould<T> only_length(const Bimould<T>& a, int r) {
  auto z = a.constant(0);
  return Bimould<T>(a.trunc(), a.ctx(), [a, r, z](const Node<T>&, const Word<typename T::Lin>& w) {
    return static_cast<int>(w.size()) == r ? a(w) : z;
  });
}

}  // namespace

template <class T>
ReFamily<T>::ReFamily(const typename T::Ctx& ctx, FlexionUnit unit, int trunc)
    : ctx_(ctx),
      unit_(std::move(unit)),
      trunc_(trunc),
      e_(unit_bimould<T>(ctx, unit_.e, trunc)),
      o_(unit_bimould<T>(ctx, unit_.o, trunc)),
      oz_(primary<T>(ctx, unit_, Primary::oz, trunc)) {}

template <class T>
const Bimould<T>& ReFamily<T>::re(int r) const {
  if (r < 1 || r > trunc_) throw std::out_of_range("re_r needs 1 <= r <= truncation");
  if (auto it = re_.find(r); it != re_.end()) return it->second;
  Bimould<T> x = r == 1 ? e_ : only_length(arit(re(r - 1), e_), r);
  return re_.emplace(r, x).first->second;
}

template <class T>
const Bimould<T>& ReFamily<T>::dro(int r) const {
  if (auto it = dro_.find(r); it != dro_.end()) return it->second;
  return dro_.emplace(r, swap(re(r))).first->second;
}

template <class T>
const Bimould<T>& ReFamily<T>::dro_closed(int r) const {
  if (r < 1 || r > trunc_) throw std::out_of_range("dro_r needs 1 <= r <= truncation");
  if (auto it = dro_closed_.find(r); it != dro_closed_.end()) return it->second;
  using W = Word<typename T::Lin>;
  auto oz = oz_, o = o_;
  auto z = T::constant(ctx_, 0);
  Bimould<T> x(trunc_, ctx_, [oz, o, r, z](const Node<T>&, const W& w) {
    if (static_cast<int>(w.size()) != r) return z;
    auto s = z;
    for (int i = 0; i < r; ++i) {
      W a = slice(w, 0, i), b = slice(w, i + 1, r);
      for (auto& l : a) l.v -= w[i].v;
      for (auto& l : b) l.v -= w[i].v;
      Letter<typename T::Lin> c = w[i];
      for (int j = 0; j < r; ++j)
        if (j != i) c.u += w[j].u;
      s += T::constant(o.ctx(), r - i) * oz(a) * o(W{c}) * oz(b);
    }
    return s;
  });
  return dro_closed_.emplace(r, x).first->second;
}

template <class T>
Bimould<T> he_map(const ReFamily<T>& fam, const Derivation& d) {
  const int top = std::min(fam.trunc(), d.order());
  std::vector<Bimould<T>> parts;
  std::vector<typename T::Val> coef;
  for (int r = 1; r <= top; ++r) {
    parts.push_back(fam.re(r));
    coef.push_back(T::constant(fam.ctx(), d.e[r]));
  }
  auto z = T::constant(fam.ctx(), 0);
  return Bimould<T>(fam.trunc(), fam.ctx(), [parts, coef, z](const Node<T>&, const Word<typename T::Lin>& w) {
    const std::size_t r = w.size();
    if (r == 0 || r > parts.size() || T::is_zero(coef[r - 1])) return z;
    return coef[r - 1] * parts[r - 1](w);
  });
}

template <class T>
Bimould<T> se_map(const ReFamily<T>& fam, const PowerSeries& f) {
  return expari(he_map(fam, giff_log(padded(f, fam.trunc()))));
}

template <class T>
Bimould<T> te_map(const ReFamily<T>& fam, const PowerSeries& f) {
  return he_map(fam, dilator(padded(f, fam.trunc())));
}

template <class T>
Bimould<T> o_star(const ReFamily<T>& fam, const PowerSeries& f) {
  std::vector<typename T::Val> coef;
  for (int r = 0; r <= fam.trunc(); ++r) coef.push_back(T::constant(fam.ctx(), Rational(r + 1) * f.coeff(r)));
  auto oz = fam.oz();
  return Bimould<T>(fam.trunc(), fam.ctx(), [oz, coef](const Node<T>&, const Word<typename T::Lin>& w) {
    return coef[w.size()] * oz(w);
  });
}

template <class T>
Bimould<T> integrate_dilator(const Bimould<T>& d) {
  require_class(d, MuClass::LieLike, "integrate_dilator");
  return Bimould<T>(d.trunc(), d.ctx(), [d](const Node<T>& self, const Word<typename T::Lin>& w) {
    if (w.empty()) return d.constant(1);
    // Non-owning view of the table being built; only shorter words are read.
    Bimould<T> s(std::shared_ptr<const Node<T>>(std::shared_ptr<const Node<T>>(), &self));
    const std::size_t r = w.size();
    auto acc = arit(d, s)(w);
    for (std::size_t i = 0; i < r; ++i) acc += s(slice(w, 0, i)) * d(slice(w, i, r));
    return T::constant(self.ctx(), Rational(mpz_class(1), mpz_class(static_cast<unsigned long>(r)))) * acc;
  });
}

std::string to_string(Secondary s) {
  switch (s) {
    case Secondary::ess:
      return "ess";
    case Secondary::oss:
      return "oss";
    case Secondary::dess:
      return "dess";
    case Secondary::doss:
      return "doss";
  }
  return "?";
}

template <class T>
Bimould<T> secondary(const typename T::Ctx& ctx, const FlexionUnit& unit, Secondary which, int trunc) {
  const bool conj = which == Secondary::oss || which == Secondary::dess;
  ReFamily<T> fam(ctx, conj ? unit.conjugate() : unit, trunc);
  auto s = se_map(fam, re_series(trunc));
  return which == Secondary::ess || which == Secondary::oss ? s : swap(s);
}

#define FLEXION_INSTANTIATE(T)                                                            \
  template class ReFamily<T>;                                                             \
  template Bimould<T> he_map(const ReFamily<T>&, const Derivation&);                      \
  template Bimould<T> se_map(const ReFamily<T>&, const PowerSeries&);                     \
  template Bimould<T> te_map(const ReFamily<T>&, const PowerSeries&);                     \
  template Bimould<T> o_star(const ReFamily<T>&, const PowerSeries&);                     \
  template Bimould<T> integrate_dilator(const Bimould<T>&);                               \
  template Bimould<T> secondary<T>(const T::Ctx&, const FlexionUnit&, Secondary, int);

FLEXION_INSTANTIATE(Exact)
FLEXION_INSTANTIATE(DualExact)
FLEXION_INSTANTIATE(Eval)
FLEXION_INSTANTIATE(DualEval)

}  // namespace flexion
