#include "flexion/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

#include <json.hpp>

namespace flexion {

std::string to_string(Backend b) { return b == Backend::Exact ? "exact" : "eval"; }

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "Pass";
    case Status::Fail:
      return "Fail";
    case Status::Skipped:
      return "Skipped";
  }
  return "?";
}

Backend parse_backend(const std::string& s) {
  if (s == "exact") return Backend::Exact;
  if (s == "eval") return Backend::Eval;
  throw std::invalid_argument("backend must be exact or eval, got '" + s + "'");
}

namespace {

// Degree bound of random test components; shared by both backends so that
// they see the same instances.
constexpr int kDegree = 2;

template <class T>
struct DualOf;
template <>
struct DualOf<Exact> {
  using type = DualExact;
  static DualExact::Ctx ctx(const Exact::Ctx&) { return {}; }
};
template <>
struct DualOf<Eval> {
  using type = DualEval;
  static DualEval::Ctx ctx(const Eval::Ctx& c) { return c; }
};

struct Acc {
  IdentityResult res;
  std::vector<std::string> notes;

  void add(const std::string& label, const IdentityResult& r) {
    if (!r.pass) notes.push_back("failed: " + label);
    res.merge(r);
  }
  void note(std::string s) { notes.push_back(std::move(s)); }
};

template <class T>
struct Env {
  typename T::Ctx ctx;
  FlexionUnit unit;
  int L;
  Strategy s;

  std::uint64_t sub_seed(int k) const { return point_seed(s.seed, 1000 + k, 0, 0); }
  Bimould<T> rnd(int k, MuClass c = MuClass::General) const { return rnd(k, L, c); }
  Bimould<T> rnd(int k, int trunc, MuClass c) const {
    return random_bimould<T>(ctx, sub_seed(k), trunc, c, kDegree);
  }
  PowerSeries series(int k) const { return random_series(sub_seed(k), L); }
  Derivation derivation(int k) const {
    auto f = random_series(sub_seed(k), L);
    Derivation d(L);
    for (int r = 1; r <= L; ++r) d.e[r] = f.a[r];
    return d;
  }
  IdentityResult eq(const Bimould<T>& a, const Bimould<T>& b, int lo = 0) const { return identity_test(a, b, s, lo); }
  Bimould<T> zero() const { return constant_bimould<T>(ctx, L, Rational(0)); }
  Bimould<T> unit_one() const { return one<T>(ctx, L); }
  Bimould<T> prim(Primary p) const { return primary<T>(ctx, unit, p, L); }
  Bimould<T> sec(Secondary p) const { return secondary<T>(ctx, unit, p, L); }
};

// Passes iff a and b differ somewhere; used for the converse directions.
template <class T>
IdentityResult differs(const Env<T>& e, const Bimould<T>& a, const Bimould<T>& b, const std::string& what) {
  auto r = e.eq(a, b);
  IdentityResult out;
  out.per_length.push_back({a.trunc(), 1, r.pass ? 1 : 0});
  if (r.pass) {
    out.pass = false;
    out.witness = Witness{a.trunc(), {}, what, "expected a mismatch"};
  }
  return out;
}

// Coefficientwise comparison of exact rationals; r is the coefficient index.
IdentityResult rational_eq(const std::vector<Rational>& lhs, const std::vector<Rational>& rhs, const Strategy& s,
                           int first = 0) {
  IdentityResult res;
  const int n = static_cast<int>(std::max(lhs.size(), rhs.size()));
  for (int i = 0; i < n; ++i) {
    const int r = first + i;
    if (s.focus && s.focus->r != r) continue;
    Rational a = i < static_cast<int>(lhs.size()) ? lhs[i] : Rational(0);
    Rational b = i < static_cast<int>(rhs.size()) ? rhs[i] : Rational(0);
    const bool ok = a == b;
    res.per_length.push_back({r, 1, ok ? 0 : 1});
    if (!ok && res.pass) res.witness = Witness{r, {}, a.str(), b.str()};
    res.pass = res.pass && ok;
  }
  return res;
}

IdentityResult series_eq(const PowerSeries& f, const PowerSeries& g, const Strategy& s) {
  return rational_eq({f.a.begin() + 1, f.a.end()}, {g.a.begin() + 1, g.a.end()}, s, 1);
}
IdentityResult derivation_eq(const Derivation& f, const Derivation& g, const Strategy& s) {
  return rational_eq({f.e.begin() + 1, f.e.end()}, {g.e.begin() + 1, g.e.end()}, s, 1);
}

// ------------------------------------------------------------------ bimould

template <class T>
void chk_involutions(const Env<T>& e, Acc& acc) {
  auto a = e.rnd(1);
  using F = std::function<Bimould<T>(const Bimould<T>&)>;
  const std::vector<std::pair<std::string, F>> ops{
      {"swap", [](const auto& x) { return swap(x); }},
      {"anti", [](const auto& x) { return anti(x); }},
      {"neg", [](const auto& x) { return neg(x); }},
      {"pari", [](const auto& x) { return pari(x); }},
      {"anti.push", [](const auto& x) { return anti(push(x)); }},
      {"push.anti", [](const auto& x) { return push(anti(x)); }},
      {"swap.push", [](const auto& x) { return swap(push(x)); }},
      {"push.swap", [](const auto& x) { return push(swap(x)); }},
      {"mantar.push", [](const auto& x) { return mantar(push(x)); }},
      {"push.mantar", [](const auto& x) { return push(mantar(x)); }},
  };
  for (const auto& [name, f] : ops) acc.add("(" + name + ")^2", e.eq(f(f(a)), a));
}

template <class T>
void chk_mantar_product(const Env<T>& e, Acc& acc) {
  auto a = e.rnd(1, MuClass::LieLike), b = e.rnd(2, MuClass::LieLike);
  acc.add("mantar(mu(A,B)) = -mu(mantar B, mantar A)", e.eq(mantar(mu(a, b)), -mu(mantar(b), mantar(a)), 1));
  acc.note("the factors come out in reversed order because anti reverses words");
}

template <class T>
void chk_filtration(const Env<T>& e, Acc& acc) {
  auto from = [&](int k, int m) {
    auto x = e.rnd(k);
    auto s = constant_bimould<T>(e.ctx, e.L, Rational(0));
    for (int r = m; r <= e.L; ++r) s = s + leng(x, r);
    return s;
  };
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3 && m + n <= e.L + 1; ++n) {
      auto p = mu(from(10 * m + n, m), from(10 * m + n + 100, n));
      acc.add("mu(Fil" + std::to_string(m) + ", Fil" + std::to_string(n) + ")",
              e.eq(truncate(p, m + n - 1), constant_bimould<T>(e.ctx, m + n - 1, Rational(0))));
    }
}

template <class T>
void chk_truncation(const Env<T>& e, Acc& acc) {
  const int L = std::min(e.L, kMaxLength - 1);
  auto at = [&](int trunc, auto&& build) { return truncate(build(trunc), L); };
  auto g = [&](int k, int t) { return e.rnd(k, t, MuClass::GroupLike); };
  auto l = [&](int k, int t) { return e.rnd(k, t, MuClass::LieLike); };
  const std::vector<std::pair<std::string, std::function<Bimould<T>(int)>>> derived{
      {"invmu", [&](int t) { return invmu(g(1, t)); }},
      {"gari", [&](int t) { return gari(g(1, t), g(2, t)); }},
      {"invgari", [&](int t) { return invgari(g(1, t)); }},
      {"ari", [&](int t) { return ari(l(3, t), l(4, t)); }},
      {"expari", [&](int t) { return expari(l(3, t)); }},
      {"swap.push", [&](int t) { return swap(push(e.rnd(5, t, MuClass::General))); }},
  };
  for (const auto& [name, f] : derived) acc.add(name, identity_test(f(L), at(L + 1, f), e.s));
}

IdentityResult shuffle_antipode(int hi, const Strategy& s) {
  IdentityResult res;
  for (int r = 1; r <= hi; ++r) {
    if (s.focus && s.focus->r != r) continue;
    std::map<IndexWord, long> total;
    for (int i = 0; i <= r; ++i) {
      IndexWord x, y;
      for (int k = 0; k < i; ++k) x.push_back(k);
      for (int k = r - 1; k >= i; --k) y.push_back(k);
      for (const auto& w : shuffle(x, y)) total[w] += (i % 2 ? -1 : 1);
    }
    int bad = 0;
    for (const auto& [w, c] : total)
      if (c != 0) {
        if (res.pass) res.witness = Witness{r, {}, std::to_string(c), "0"};
        res.pass = false;
        ++bad;
      }
    res.per_length.push_back({r, static_cast<int>(total.size()), bad});
  }
  return res;
}

template <class T>
void chk_shuffle_antipode(const Env<T>& e, Acc& acc) {
  acc.add("sum (-1)^i (w1..wi) sh (wr..wi+1) = 0", shuffle_antipode(e.L, e.s));
}

template <class T>
void chk_negpush(const Env<T>& e, Acc& acc) {
  auto a = e.rnd(1);
  acc.add("neg.push = anti.swap.anti.swap", e.eq(neg(push(a)), anti(swap(anti(swap(a))))));
}

template <class T>
void chk_mu_algebra(const Env<T>& e, Acc& acc) {
  auto a = e.rnd(1), b = e.rnd(2), c = e.rnd(3);
  auto la = e.rnd(4, MuClass::LieLike), lb = e.rnd(5, MuClass::LieLike), lc = e.rnd(6, MuClass::LieLike);
  auto g = e.rnd(7, MuClass::GroupLike);
  auto one_ = e.unit_one();
  acc.add("mu unit", e.eq(mu(one_, a), a));
  acc.add("mu associative", e.eq(mu(mu(a, b), c), mu(a, mu(b, c))));
  acc.add("anti(mu(A,B)) = mu(anti B, anti A)", e.eq(anti(mu(a, b)), mu(anti(b), anti(a))));
  acc.add("lu antisymmetric", e.eq(lu(la, lb) + lu(lb, la), e.zero()));
  acc.add("lu Jacobi", e.eq(lu(la, lu(lb, lc)) + lu(lb, lu(lc, la)) + lu(lc, lu(la, lb)), e.zero()));
  acc.add("mu(A, invmu A) = 1", e.eq(mu(g, invmu(g)), one_));
  acc.add("mu(invmu A, A) = 1", e.eq(mu(invmu(g), g), one_));
  auto s = leng(a, 0);
  for (int r = 1; r <= e.L; ++r) s = s + leng(a, r);
  acc.add("sum of leng_r", e.eq(s, a));
}

// ------------------------------------------------------------------ flexion

template <class T>
void chk_axit_derivation(const Env<T>& e, Acc& acc) {
  auto a = e.rnd(1, MuClass::LieLike), a2 = e.rnd(2, MuClass::LieLike);
  auto b = e.rnd(3), c = e.rnd(4);
  auto d = [&](const Bimould<T>& m) { return axit(a, a2, m); };
  acc.add("axit(A,A') is a mu-derivation", e.eq(d(mu(b, c)), mu(d(b), c) + mu(b, d(c))));
}

template <class T>
void chk_axit_conjugation(const Env<T>& e, Acc& acc) {
  auto a = e.rnd(1, MuClass::LieLike), a2 = e.rnd(2, MuClass::LieLike), b = e.rnd(3);
  auto g = e.rnd(4, MuClass::GroupLike), g2 = e.rnd(5, MuClass::GroupLike);
  acc.add("axit neg", e.eq(axit(neg(a), neg(a2), b), neg(axit(a, a2, neg(b)))));
  acc.add("axit pari", e.eq(axit(pari(a), pari(a2), b), pari(axit(a, a2, pari(b)))));
  acc.add("gaxit neg", e.eq(gaxit(neg(g), neg(g2), b), neg(gaxit(g, g2, neg(b)))));
  acc.add("gaxit pari", e.eq(gaxit(pari(g), pari(g2), b), pari(gaxit(g, g2, pari(b)))));
}

template <class T>
void chk_arit_antihom(const Env<T>& e, Acc& acc) {
  auto a = e.rnd(1, MuClass::LieLike), b = e.rnd(2, MuClass::LieLike), c = e.rnd(3);
  acc.add("arit(ari(A,B)) = [arit B, arit A]", e.eq(arit(b, arit(a, c)) - arit(a, arit(b, c)), arit(ari(a, b), c)));
}

template <class T>
void chk_ari_jacobi(const Env<T>& e, Acc& acc) {
  auto a = e.rnd(1, MuClass::LieLike), b = e.rnd(2, MuClass::LieLike), c = e.rnd(3, MuClass::LieLike);
  acc.add("ari(A,A) = 0", e.eq(ari(a, a), e.zero()));
  acc.add("ari Jacobi", e.eq(ari(a, ari(b, c)) + ari(b, ari(c, a)) + ari(c, ari(a, b)), e.zero()));
}

template <class T>
void chk_flexion_homs(const Env<T>& e, Acc& acc) {
  auto a = e.rnd(1, MuClass::LieLike), b = e.rnd(2, MuClass::LieLike);
  auto g = e.rnd(3, MuClass::GroupLike), h = e.rnd(4, MuClass::GroupLike);
  acc.add("mantar preserves ari", e.eq(mantar(ari(a, b)), ari(mantar(a), mantar(b))));
  acc.add("gantar preserves gari", e.eq(gantar(gari(g, h)), gari(gantar(g), gantar(h))));
}

template <class T>
void chk_gari_group(const Env<T>& e, Acc& acc) {
  auto a = e.rnd(1, MuClass::GroupLike), b = e.rnd(2, MuClass::GroupLike), c = e.rnd(3, MuClass::GroupLike);
  auto one_ = e.unit_one();
  acc.add("gari associative", e.eq(gari(gari(a, b), c), gari(a, gari(b, c))));
  acc.add("gari unit", e.eq(gari(a, one_), a));
  acc.add("gari unit left", e.eq(gari(one_, a), a));
  acc.add("gari left inverse", e.eq(gari(invgari(a), a), one_));
  acc.add("gari right inverse", e.eq(gari(a, invgari(a)), one_));
  acc.add("gami associative", e.eq(gami(gami(a, b), c), gami(a, gami(b, c))));
  acc.add("gami unit", e.eq(gami(a, one_), a));
  acc.add("gami inverse", e.eq(gami(invgami(a), a), one_));
  acc.add("gani associative", e.eq(gani(gani(a, b), c), gani(a, gani(b, c))));
  acc.add("gani unit", e.eq(gani(a, one_), a));
  acc.add("gani inverse", e.eq(gani(invgani(a), a), one_));
}

template <class T>
void chk_gaxit_two_forms(const Env<T>& e, Acc& acc) {
  auto a1 = e.rnd(1, MuClass::GroupLike), a2 = e.rnd(2, MuClass::GroupLike), b = e.rnd(3);
  acc.add("gaxit sigma = blocks", e.eq(gaxit(a1, a2, b, GaxitForm::Sigma), gaxit(a1, a2, b, GaxitForm::Blocks)));
}

template <class T>
void chk_gaxit_assoc(const Env<T>& e, Acc& acc) {
  auto g = [&](int k) { return e.rnd(k, MuClass::GroupLike); };
  OpPair<T> pa{g(1), g(2)}, pb{g(3), g(4)}, pc{g(5), g(6)};
  auto m = e.rnd(7);
  acc.add("gaxit(B) gaxit(A) = gaxit(gaxi(A,B))", e.eq(gaxit(pb, gaxit(pa, m)), gaxit(gaxi(pa, pb), m)));
  auto l = gaxi(gaxi(pa, pb), pc), r = gaxi(pa, gaxi(pb, pc));
  acc.add("gaxi associative (first)", e.eq(l.first, r.first));
  acc.add("gaxi associative (second)", e.eq(l.second, r.second));
  auto one_ = e.unit_one();
  acc.add("gaxit(1,1) = id", e.eq(gaxit(one_, one_, m), m));
}

template <class T>
void chk_gaxit_separation(const Env<T>& e, Acc& acc) {
  auto a1 = e.rnd(1, MuClass::GroupLike), a2 = e.rnd(2, MuClass::GroupLike), b = e.rnd(3);
  auto lhs = gaxit(a1, a2, b);
  acc.add("gaxit via gamit first", e.eq(lhs, gamit(a1, ganit(gamit(invgami(a1), a2), b))));
  acc.add("gaxit via ganit first", e.eq(lhs, ganit(a2, gamit(ganit(invgani(a2), a1), b))));
}

template <class T>
void chk_gaxit_multiplicative(const Env<T>& e, Acc& acc) {
  auto x = e.rnd(1, MuClass::GroupLike), a = e.rnd(2), b = e.rnd(3);
  acc.add("ganit multiplicative", e.eq(ganit(x, mu(a, b)), mu(ganit(x, a), ganit(x, b))));
  acc.add("gamit multiplicative", e.eq(gamit(x, mu(a, b)), mu(gamit(x, a), gamit(x, b))));
}

template <class T>
void chk_dual_linearization(const Env<T>& e, Acc& acc) {
  using D = typename DualOf<T>::type;
  const auto ctx = DualOf<T>::ctx(e.ctx);
  auto a = random_bimould<D>(ctx, e.sub_seed(1), e.L, MuClass::General, kDegree);
  auto b = random_bimould<D>(ctx, e.sub_seed(2), e.L, MuClass::LieLike, kDegree);
  auto g = one<D>(ctx, e.L) + eps_times(b);
  acc.add("garit(1 + eps B) = 1 + eps arit(B)", identity_test(garit(g, a), a + eps_times(arit(b, a)), e.s));
  acc.add("gari(A, 1 + eps B) = A + eps preari(A,B)", identity_test(gari(a, g), a + eps_times(preari(a, b)), e.s));
}

template <class T>
void chk_fundamental(const Env<T>& e, Acc& acc) {
  auto a = e.rnd(1), b = e.rnd(2, MuClass::GroupLike);
  acc.add("fragira(A,B) = ganit(crash B)(fragari(A,B))", e.eq(fragira(a, b), ganit(crash(b), fragari(a, b))));
}

template <class T>
void chk_ras_rash(const Env<T>& e, Acc& acc) {
  auto a = e.rnd(1), b = e.rnd(2, MuClass::GroupLike);
  acc.add("gira(A,B) = ganit(rash B)(gari(A, ras B))", e.eq(gira(a, b), ganit(rash(b), gari(a, ras(b)))));
  acc.add("gira(A,B) = mu(girat(B,A), B)", e.eq(gira(a, b), mu(girat(b, a), b)));
}

template <class T>
void chk_symmetry_closure(const Env<T>& e, Acc& acc) {
  auto es = e.prim(Primary::es);
  auto x = expari(leng(e.rnd(1, MuClass::LieLike), 1));
  acc.add("gari(es, expari(A1)) symmetral", is_symmetral(gari(es, x), e.L, e.s));
  acc.add("gari(expari(A1), es) symmetral", is_symmetral(gari(x, es), e.L, e.s));
  ReFamily<T> fam(e.ctx, e.unit, e.L);
  if (e.L >= 3) {
    auto y = leng(e.rnd(2, MuClass::LieLike), 1);
    acc.add("ari(re_2, A1) alternal", is_alternal(ari(fam.re(2), y), e.L, e.s));
  }
  if (e.L >= 2) acc.add("ari(re_1, A1) alternal", is_alternal(ari(fam.re(1), leng(e.rnd(3, MuClass::LieLike), 1)), e.L, e.s));
}

// ------------------------------------------------------------------ units

template <class T>
void chk_tripartite(const Env<T>& e, Acc& acc) {
  using V = typename T::Val;
  using W = Word<typename T::Lin>;
  auto E = unit_bimould<T>(e.ctx, e.unit.e, 2);
  auto at = [&](auto u, auto v) { return E(W{Letter<typename T::Lin>{u, v}}); };
  acc.add("parity", test_words<T>(1, 1, e.ctx, e.s, [&](const W& w) {
            return std::vector<std::pair<V, V>>{{at(-w[0].u, -w[0].v), -E(w)}};
          }));
  acc.add("tripartite", test_words<T>(2, 2, e.ctx, e.s, [&](const W& w) {
            auto lhs = at(w[0].u, w[0].v) * at(w[1].u, w[1].v);
            auto rhs = at(w[0].u, w[0].v - w[1].v) * at(w[0].u + w[1].u, w[1].v) +
                       at(w[0].u + w[1].u, w[0].v) * at(w[1].u, w[1].v - w[0].v);
            return std::vector<std::pair<V, V>>{{lhs, rhs}};
          }));
  if constexpr (T::kSymbolic) {
    acc.note("verdict " + to_string(e.unit.verdict.status));
    if (e.unit.verdict.status != UnitStatus::IsUnit)
      acc.note("residual " + e.unit.verdict.residual.canonical_string());
  }
  acc.note("uses lengths 1 and 2 only");
}

template <class T>
void chk_push_neutrality(const Env<T>& e, Acc& acc) {
  for (int n = 1; n <= e.L; ++n) {
    auto E = unit_bimould<T>(e.ctx, e.unit.e, n);
    auto m = E;
    for (int i = 1; i < n; ++i) m = mu(m, E);
    auto res = is_push_neutral(m, e.s);
    IdentityResult top;
    top.pass = res.pass;
    top.witness = res.witness;
    for (const auto& l : res.per_length)
      if (l.r == n) top.per_length.push_back(l);
    acc.add("mu^" + std::to_string(n) + "(E) push-neutral", top);
  }
}

template <class T>
void chk_ez_es(const Env<T>& e, Acc& acc) {
  auto ez = e.prim(Primary::ez), es = e.prim(Primary::es), oz = e.prim(Primary::oz), os = e.prim(Primary::os);
  for (auto p : {Primary::ez, Primary::es, Primary::oz, Primary::os})
    acc.add(to_string(p) + " closed form", e.eq(e.prim(p), primary_oracle<T>(e.ctx, e.unit, p, e.L)));
  acc.add("es symmetral", is_symmetral(es, e.L, e.s));
  acc.add("invgani(ez) = pari.anti(es)", e.eq(invgani(ez), pari(anti(es))));
  acc.add("invmu(es) = push(es)", e.eq(invmu(es), push(es)));
  acc.add("swap(es) = oz", e.eq(swap(es), oz));
  acc.add("swap(ez) = os", e.eq(swap(ez), os));
  acc.add("neg.pari(es) = es", e.eq(neg(pari(es)), es));
  acc.add("neg.pari(ez) = ez", e.eq(neg(pari(ez)), ez));
  acc.add("gantar(es) = es", e.eq(gantar(es), es));
}

template <class T>
void chk_es_split(const Env<T>& e, Acc& acc) {
  using V = typename T::Val;
  using W = Word<typename T::Lin>;
  auto es = e.prim(Primary::es);
  acc.add("es(ab) = es(a|b) es(|a b)", test_words<T>(2, e.L, e.ctx, e.s, [&](const W& w) {
            std::vector<std::pair<V, V>> out;
            const std::size_t r = w.size();
            for (std::size_t p = 1; p < r; ++p) {
              W a(w.begin(), w.begin() + p), b(w.begin() + p, w.end());
              for (auto& l : a) l.v -= w[p].v;
              for (std::size_t i = 0; i < p; ++i) b[0].u += w[i].u;
              out.emplace_back(es(w), es(a) * es(b));
            }
            return out;
          }));
}

// ------------------------------------------------------------------ giff

template <class T>
void note_series(const Env<T>&, Acc& acc) {
  acc.note("series arithmetic is exact under either backend; max_length is the series order");
}

template <class T>
void chk_giff_group(const Env<T>& e, Acc& acc) {
  auto f = e.series(1), g = e.series(2), h = e.series(3);
  auto id = PowerSeries::identity(e.L);
  acc.add("f o id = f", series_eq(ps_compose(f, id), f, e.s));
  acc.add("id o f = f", series_eq(ps_compose(id, f), f, e.s));
  acc.add("composition associative", series_eq(ps_compose(ps_compose(f, g), h), ps_compose(f, ps_compose(g, h)), e.s));
  acc.add("f o f^-1 = id", series_eq(ps_compose(f, ps_inverse(f)), id, e.s));
  acc.add("f^-1 o f = id", series_eq(ps_compose(ps_inverse(f), f), id, e.s));
  acc.add("inverse of re", series_eq(ps_inverse(re_series(e.L)), re_inverse_series(e.L), e.s));
  note_series(e, acc);
}

template <class T>
void chk_giff_bracket(const Env<T>& e, Acc& acc) {
  auto a = e.derivation(1), b = e.derivation(2), c = e.derivation(3);
  const Derivation z(e.L);
  auto add = [](Derivation x, const Derivation& y) {
    for (std::size_t i = 0; i < x.e.size(); ++i) x.e[i] += y.e[i];
    return x;
  };
  acc.add("[a,b] + [b,a] = 0", derivation_eq(add(diff_bracket(a, b), diff_bracket(b, a)), z, e.s));
  acc.add("Jacobi", derivation_eq(add(add(diff_bracket(a, diff_bracket(b, c)), diff_bracket(b, diff_bracket(c, a))),
                                      diff_bracket(c, diff_bracket(a, b))),
                                  z, e.s));
  for (int r = 1; r <= e.L; ++r)
    for (int s = 1; r + s <= e.L; ++s) {
      Derivation want(e.L);
      want.e[r + s] = Rational(r - s);
      acc.add("[rre_" + std::to_string(r) + ", rre_" + std::to_string(s) + "]",
              derivation_eq(diff_bracket(Derivation::basis(r, e.L), Derivation::basis(s, e.L)), want, e.s));
    }
  note_series(e, acc);
}

template <class T>
void chk_giff_explog(const Env<T>& e, Acc& acc) {
  for (int k = 1; k <= 3; ++k) {
    auto d = e.derivation(k);
    acc.add("log(exp D) = D", derivation_eq(giff_log(giff_exp(d)), d, e.s));
    auto f = e.series(10 + k);
    acc.add("exp(log f) = f", series_eq(giff_exp(giff_log(f)), f, e.s));
  }
  PowerSeries geo(e.L);
  for (int r = 1; r <= e.L; ++r) geo.a[r] = 1;
  acc.add("exp(x^2 d/dx) = x/(1-x)", series_eq(giff_exp(Derivation::basis(1, e.L)), geo, e.s));
  auto d = e.derivation(4), d2 = d;
  for (auto& x : d2.e) x *= Rational(2);
  acc.add("exp(D) o exp(D) = exp(2D)", series_eq(ps_compose(giff_exp(d), giff_exp(d)), giff_exp(d2), e.s));
  note_series(e, acc);
}

template <class T>
void chk_giff_dilator(const Env<T>& e, Acc& acc) {
  acc.add("dilator(id) = 0", derivation_eq(dilator(PowerSeries::identity(e.L)), Derivation(e.L), e.s));
  Derivation want(e.L);
  for (int r = 1; r <= e.L; ++r) want.e[r] = Rational(mpz_class(1), mpz_class(r * (r + 1)));
  acc.add("dilator(re^-1) = t + (1-t) log(1-t)", derivation_eq(dilator(re_inverse_series(e.L)), want, e.s));
  auto f = e.series(1);
  auto g = dilator(f);
  // f' f_# = x f' - f, coefficient of x^(n+1)
  std::vector<Rational> lhs, rhs;
  for (int n = 1; n <= e.L; ++n) {
    Rational s;
    for (int k = 1; k <= n; ++k) s += Rational(n - k + 1) * f.a[n - k] * g.e[k];
    lhs.push_back(s);
    rhs.push_back(Rational(n) * f.a[n]);
  }
  acc.add("f' f_# = x f' - f", rational_eq(lhs, rhs, e.s, 1));
  note_series(e, acc);
}

template <class T>
void chk_giff_coproduct(const Env<T>& e, Acc& acc) {
  std::vector<Rational> lhs, rhs;
  auto f = e.series(1), g = e.series(2);
  auto fg = ps_compose(f, g);
  for (int n = 1; n <= e.L; ++n) {
    if (e.s.focus && e.s.focus->r != n) {
      lhs.push_back(0);
      rhs.push_back(0);
      continue;
    }
    lhs.push_back(coproduct_pairing(giff_coproduct(n), f, g));
    rhs.push_back(fg.coeff(n - 1));
  }
  acc.add("<Delta u_N, f (x) g> = [x^N] f(g(x))", rational_eq(lhs, rhs, e.s, 1));
  note_series(e, acc);
}

// ------------------------------------------------------------------ re family, Se

template <class T>
void chk_ari_re(const Env<T>& e, Acc& acc) {
  ReFamily<T> fam(e.ctx, e.unit, e.L);
  for (int r = 1; r < e.L; ++r)
    for (int s = 1; r + s <= e.L; ++s)
      acc.add("ari(re_" + std::to_string(r) + ", re_" + std::to_string(s) + ")",
              e.eq(ari(fam.re(r), fam.re(s)), Rational(r - s) * fam.re(r + s)));
}

template <class T>
void chk_re_symmetries(const Env<T>& e, Acc& acc) {
  ReFamily<T> fam(e.ctx, e.unit, e.L);
  for (int r = 1; r <= e.L; ++r) {
    const auto& re = fam.re(r);
    const std::string n = "re_" + std::to_string(r);
    acc.add(n + " concentrated in length r", e.eq(re, leng(re, r)));
    acc.add(n + " alternal", is_alternal(re, e.L, e.s));
    acc.add(n + " mantar-invariant", e.eq(mantar(re), re));
    acc.add(n + " neg.pari-invariant", e.eq(neg(pari(re)), re));
  }
}

template <class T>
void chk_dro(const Env<T>& e, Acc& acc) {
  ReFamily<T> fam(e.ctx, e.unit, e.L);
  for (int r = 1; r <= e.L; ++r) acc.add("swap(re_" + std::to_string(r) + ") = dro_r", e.eq(fam.dro(r), fam.dro_closed(r)));
}

template <class T>
void chk_schneps(const Env<T>& e, Acc& acc) {
  auto a = e.rnd(1, MuClass::LieLike), b = e.rnd(2);
  acc.add("swap.amit(swap A).swap",
          e.eq(swap(amit(swap(a), swap(b))), amit(a, b) + mu(b, a) - swap(mu(swap(b), swap(a)))));
  acc.add("swap.anit(swap A).swap", e.eq(swap(anit(swap(a), swap(b))), anit(push(a), b)));
}

template <class T>
void chk_se_morphism(const Env<T>& e, Acc& acc) {
  ReFamily<T> fam(e.ctx, e.unit, e.L);
  auto f = e.series(1), g = e.series(2);
  acc.add("Se(f o g) = gari(Se f, Se g)", e.eq(se_map(fam, ps_compose(f, g)), gari(se_map(fam, f), se_map(fam, g))));
  acc.add("Se(id) = 1", e.eq(se_map(fam, PowerSeries::identity(e.L)), e.unit_one()));
  auto a = e.derivation(3), b = e.derivation(4);
  acc.add("He([a,b]) = ari(He a, He b)", e.eq(he_map(fam, diff_bracket(a, b)), ari(he_map(fam, a), he_map(fam, b))));
  auto s = se_map(fam, f);
  acc.add("Se(f) symmetral", is_symmetral(s, e.L, e.s));
  acc.add("Se(f) neg.pari-invariant", e.eq(neg(pari(s)), s));
}

template <class T>
void chk_se_derivative(const Env<T>& e, Acc& acc) {
  ReFamily<T> fam(e.ctx, e.unit, e.L);
  auto f = e.series(1);
  auto s = se_map(fam, f);
  acc.add("der Se(f) = preari(Se f, Te f)", e.eq(der(s), preari(s, te_map(fam, f))));
}

template <class T>
void chk_separation(const Env<T>& e, Acc& acc) {
  ReFamily<T> fam(e.ctx, e.unit, e.L);
  const std::vector<std::pair<std::string, PowerSeries>> fs{{"re", re_series(e.L)},
                                                            {"re^-1", re_inverse_series(e.L)},
                                                            {"random 1", e.series(1)},
                                                            {"random 2", e.series(2)},
                                                            {"random 3", e.series(3)}};
  for (const auto& [name, f] : fs) acc.add("gepar(Se f) = O_*(f), f = " + name, e.eq(gepar(se_map(fam, f)), o_star(fam, f)));
}

template <class T>
void chk_lemma_1195(const Env<T>& e, Acc& acc) {
  ReFamily<T> fam(e.ctx, e.unit, e.L);
  auto f = e.series(1);
  auto dso = swap(se_map(fam, f)), dto = swap(te_map(fam, f));
  acc.add("der dSo = iwat(dTo)(dSo) + mu(dSo, dTo)", e.eq(der(dso), iwat(dto, dso) + mu(dso, dto)));
}

template <class T>
void chk_lemma_1197(const Env<T>& e, Acc& acc) {
  ReFamily<T> fam(e.ctx, e.unit, e.L);
  auto f = e.series(1);
  auto dto = swap(te_map(fam, f));
  auto ost = o_star(fam, f);
  acc.add("der O_* = iwat(dTo)(O_*) + mu(O_*, dTo) + mu(anti dTo, O_*)",
          e.eq(der(ost), iwat(dto, ost) + mu(ost, dto) + mu(anti(dto), ost)));
}

template <class T>
void chk_prop_244(const Env<T>& e, Acc& acc) {
  ReFamily<T> fam(e.ctx, e.unit, e.L);
  auto f = e.series(1);
  auto dto = swap(te_map(fam, f));
  auto ost = o_star(fam, f);
  auto y = ganit(invgani(ost), dto);
  for (int k = 1; k <= 2; ++k) {
    auto x = e.rnd(k);
    auto lhs = -der(ganit(ost, x)) + irat(dto, ganit(ost, x));
    auto rhs = ganit(ost, -der(x) + arit(y, x));
    acc.add("operator identity on test bimould " + std::to_string(k), e.eq(lhs, rhs));
  }
}

template <class T>
void chk_dilator_mantar(const Env<T>& e, Acc& acc) {
  ReFamily<T> fam(e.ctx, e.unit, e.L);
  auto f = e.series(1);
  auto s = se_map(fam, f), d = te_map(fam, f);
  acc.add("integrate(Te f) = Se f", e.eq(integrate_dilator(d), s));
  acc.add("gantar(Se f) = Se f", e.eq(gantar(s), s));
  acc.add("mantar(Te f) = Te f", e.eq(mantar(d), d));
  auto d0 = e.rnd(2, MuClass::LieLike);
  auto dm = Rational(mpz_class(1), mpz_class(2)) * (d0 + mantar(d0));
  auto sm = integrate_dilator(dm);
  acc.add("mantar-invariant D gives gantar-invariant S", e.eq(gantar(sm), sm));
  if (e.L >= 2) {
    auto s0 = integrate_dilator(d0);
    acc.add("generic D gives S that is not gantar-invariant", differs(e, gantar(s0), s0, "gantar(S) = S"));
  }
}

Rational binom(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b, mpz_class(1));
}

// sum_s (-1)^s gamma_s sum_k (s-k+1) C(m,k-1) C(n,s-k+shift) against
// -gamma_(m+n+1) (m+1), for m + n + 1 <= order.
std::pair<std::vector<Rational>, std::vector<Rational>> darapal_sides(const Derivation& g, int order, int shift) {
  std::vector<Rational> lhs, rhs;
  for (int N = 1; N <= order; ++N)
    for (int m = 0; m < N; ++m) {
      const int n = N - 1 - m;
      Rational l;
      for (int s = 1; s <= std::min(order, m + n + 2); ++s) {
        Rational inner;
        for (int k = 1; k <= s; ++k) inner += Rational(s - k + 1) * binom(m, k - 1) * binom(n, s - k + shift);
        l += (s % 2 ? Rational(-1) : Rational(1)) * g.coeff(s) * inner;
      }
      lhs.push_back(l);
      rhs.push_back(-g.coeff(N) * Rational(m + 1));
    }
  return {lhs, rhs};
}

template <class T>
void chk_darapal(const Env<T>& e, Acc& acc) {
  ReFamily<T> fam(e.ctx, e.unit, e.L);
  auto os = e.prim(Primary::os);
  acc.add("invgani(oz) = pari.anti(os)", e.eq(invgani(fam.oz()), pari(anti(os))));
  auto d = ganit(pari(anti(os)), swap(te_map(fam, re_inverse_series(e.L))));
  acc.add("ganit(oz)^-1(dTo(re^-1)) mantar-invariant", e.eq(mantar(d), d));
  // The coefficient identity behind it, over all m + n + 1 <= 12.
  constexpr int kOrder = 12;
  auto g = dilator(re_inverse_series(kOrder + 2));
  auto [lhs, rhs] = darapal_sides(g, kOrder, 0);
  IdentityResult coeff;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const bool ok = lhs[i] == rhs[i];
    if (!ok && coeff.pass) coeff.witness = Witness{0, {}, lhs[i].str(), rhs[i].str()};
    coeff.pass = coeff.pass && ok;
  }
  coeff.per_length.push_back({0, static_cast<int>(lhs.size()), coeff.pass ? 0 : 1});
  if (!e.s.focus || e.s.focus->r == 0) acc.add("coefficient identity with C(n, s-k)", coeff);
  auto [lhs1, rhs1] = darapal_sides(g, kOrder, 1);
  acc.note(lhs1 == rhs1 ? "the C(n, s-k+1) variant also holds"
                        : "erratum candidate: the coefficient identity fails with C(n, s-k+1) and holds with C(n, s-k)");
}

// ------------------------------------------------------------------ secondary

template <class T>
void chk_girat_anti(const Env<T>& e, Acc& acc) {
  auto x = e.rnd(1);
  for (auto which : {Secondary::ess, Secondary::dess}) {
    auto s = e.sec(which);
    acc.add("girat(" + to_string(which) + ") commutes with anti", e.eq(girat(s, anti(x)), anti(girat(s, x))));
  }
}

template <class T>
void chk_slash_ess(const Env<T>& e, Acc& acc) {
  acc.add("slash(ess) = es", e.eq(slash(e.sec(Secondary::ess)), e.prim(Primary::es)));
}
template <class T>
void chk_slash_dess(const Env<T>& e, Acc& acc) {
  acc.add("slash(dess) = es", e.eq(slash(e.sec(Secondary::dess)), e.prim(Primary::es)));
}
template <class T>
void chk_crash_ess(const Env<T>& e, Acc& acc) {
  acc.add("crash(ess) = ez", e.eq(crash(e.sec(Secondary::ess)), e.prim(Primary::ez)));
}
template <class T>
void chk_crash_dess(const Env<T>& e, Acc& acc) {
  acc.add("crash(dess) = ez", e.eq(crash(e.sec(Secondary::dess)), e.prim(Primary::ez)));
}
template <class T>
void chk_gantar_sec(const Env<T>& e, Acc& acc, Secondary which) {
  auto s = e.sec(which);
  acc.add("gantar(" + to_string(which) + ") = " + to_string(which), e.eq(gantar(s), s));
}
template <class T>
void chk_gantar_ess(const Env<T>& e, Acc& acc) {
  chk_gantar_sec(e, acc, Secondary::ess);
}
template <class T>
void chk_gantar_doss(const Env<T>& e, Acc& acc) {
  chk_gantar_sec(e, acc, Secondary::doss);
}
template <class T>
void chk_gantar_dess(const Env<T>& e, Acc& acc) {
  chk_gantar_sec(e, acc, Secondary::dess);
  acc.note("reported separately: the gantar-invariance statement names dess in one place and doss in another");
}

// ------------------------------------------------------------------ table

struct Entry {
  CheckInfo info;
  void (*exact)(const Env<Exact>&, Acc&);
  void (*eval)(const Env<Eval>&, Acc&);
};

#define FLEXION_CHECK(name, fn, eval_l, exact_l, statement) \
  Entry { CheckInfo{name, statement, eval_l, exact_l, false}, &fn<Exact>, &fn<Eval> }
#define FLEXION_SERIES_CHECK(name, fn, order, statement) \
  Entry { CheckInfo{name, statement, order, order, true}, &fn<Exact>, &fn<Eval> }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table{
      FLEXION_CHECK("tripartite", chk_tripartite, 2, 2, "E is odd and satisfies the tripartite identity"),
      FLEXION_CHECK("push-neutrality", chk_push_neutrality, 6, 6, "mu^n(E) is push-neutral for every n"),
      FLEXION_CHECK("involutions", chk_involutions, 6, 6,
                    "swap, anti, neg, pari and the composites anti.push, swap.push, mantar.push (both orders) are involutions"),
      FLEXION_CHECK("negpush", chk_negpush, 6, 6, "neg.push = anti.swap.anti.swap"),
      FLEXION_CHECK("mantar-product", chk_mantar_product, 6, 6,
                    "mantar(mu(A,B)) = -mu(mantar B, mantar A) for A(empty) = B(empty) = 0"),
      FLEXION_CHECK("filtration", chk_filtration, 6, 6, "mu maps Fil^m x Fil^n into Fil^(m+n)"),
      FLEXION_CHECK("truncation-consistency", chk_truncation, 5, 5,
                    "derived bimoulds computed at truncation L and L+1 agree up to length L"),
      FLEXION_CHECK("shuffle-antipode", chk_shuffle_antipode, 6, 6,
                    "sum_i (-1)^i (w1..wi) sh (wr..w(i+1)) = 0 in the shuffle algebra"),
      FLEXION_CHECK("mu-algebra", chk_mu_algebra, 6, 6,
                    "mu is associative and unital, anti reverses it, lu is a Lie bracket, invmu inverts"),
      FLEXION_CHECK("axit-derivation", chk_axit_derivation, 4, 4, "axit(A,A') is a derivation of mu for A, A' in LU"),
      FLEXION_CHECK("axit-conjugation", chk_axit_conjugation, 4, 4,
                    "axit and gaxit are conjugated by neg and by pari"),
      FLEXION_CHECK("arit-antihom", chk_arit_antihom, 4, 4, "arit(ari(A,B)) = [arit(B), arit(A)]"),
      FLEXION_CHECK("ari-jacobi", chk_ari_jacobi, 4, 4, "ari is antisymmetric and satisfies the Jacobi identity"),
      FLEXION_CHECK("flexion-homomorphisms", chk_flexion_homs, 4, 4,
                    "mantar is an ari automorphism and gantar a gari automorphism"),
      FLEXION_CHECK("gari-group", chk_gari_group, 4, 4, "gari, gami, gani satisfy the group axioms on MU"),
      FLEXION_CHECK("gaxit-two-forms", chk_gaxit_two_forms, 5, 5,
                    "the sequence-sum and block-sum formulas for gaxit agree"),
      FLEXION_CHECK("gaxit-assoc", chk_gaxit_assoc, 4, 4,
                    "gaxit is an anti-action of the gaxi group, and gaxi is associative"),
      FLEXION_CHECK("gaxit-separation", chk_gaxit_separation, 4, 4,
                    "gaxit(A1,A2) factors through gamit and ganit in both orders"),
      FLEXION_CHECK("gaxit-multiplicative", chk_gaxit_multiplicative, 4, 4, "ganit(X) and gamit(X) respect mu"),
      FLEXION_CHECK("dual-number-linearization", chk_dual_linearization, 4, 4,
                    "garit and gari at 1 + eps B linearize to arit and preari"),
      FLEXION_CHECK("fundamental-identity", chk_fundamental, 4, 4,
                    "fragira(A,B) = ganit(crash B)(fragari(A,B)) for B in MU"),
      FLEXION_CHECK("ras-rash", chk_ras_rash, 4, 4, "gira(A,B) = ganit(rash B)(gari(A, ras B)) for B in MU"),
      FLEXION_CHECK("symmetry-closure", chk_symmetry_closure, 5, 4,
                    "gari preserves symmetrality and ari preserves alternality"),
      FLEXION_CHECK("ez-es-relations", chk_ez_es, 6, 6,
                    "closed forms of ez, es, oz, os and their symmetries, swaps and inverses"),
      FLEXION_CHECK("es-split", chk_es_split, 6, 6, "es(w) = es(a|b) es(|a b) for every split w = ab"),
      FLEXION_SERIES_CHECK("giff-group", chk_giff_group, 12, "composition of identity-tangent series is a group"),
      FLEXION_SERIES_CHECK("giff-bracket", chk_giff_bracket, 12,
                    "the bracket of derivations x^(r+1) d/dx is a Lie bracket with [rre_r, rre_s] = (r-s) rre_(r+s)"),
      FLEXION_SERIES_CHECK("giff-explog", chk_giff_explog, 12, "giff_exp and giff_log are mutually inverse"),
      FLEXION_SERIES_CHECK("giff-dilator", chk_giff_dilator, 12, "the dilator x - f/f' and its closed form for re^-1"),
      FLEXION_SERIES_CHECK("giff-coproduct", chk_giff_coproduct, 8,
                    "the coproduct pairing gives the composition coefficients"),
      FLEXION_CHECK("ari-re-family", chk_ari_re, 6, 6, "ari(re_r, re_s) = (r-s) re_(r+s)"),
      FLEXION_CHECK("re-symmetries", chk_re_symmetries, 6, 5,
                    "re_r lives in length r and is alternal, mantar-invariant and neg.pari-invariant"),
      FLEXION_CHECK("dro-formula", chk_dro, 6, 6, "swap(re_r) equals the closed dro_r sum"),
      FLEXION_CHECK("schneps-swap", chk_schneps, 5, 5, "swap conjugates amit and anit as stated for A in LU"),
      FLEXION_CHECK("se-morphism", chk_se_morphism, 5, 5,
                    "He is a Lie morphism and Se a group morphism into symmetral bimoulds"),
      FLEXION_CHECK("se-derivative", chk_se_derivative, 5, 5, "der Se(f) = preari(Se f, Te f)"),
      FLEXION_CHECK("separation-lemma", chk_separation, 5, 5, "gepar(Se f) = O_*(f)"),
      FLEXION_CHECK("lemma-1195", chk_lemma_1195, 5, 5, "der dSo = iwat(dTo)(dSo) + mu(dSo, dTo)"),
      FLEXION_CHECK("lemma-1197", chk_lemma_1197, 5, 5,
                    "der O_* = iwat(dTo)(O_*) + mu(O_*, dTo) + mu(anti dTo, O_*)"),
      FLEXION_CHECK("prop-244", chk_prop_244, 5, 5,
                    "(-der + irat(dTo)) ganit(O_*) = ganit(O_*) (-der + arit(ganit(O_*)^-1 dTo)) on test bimoulds"),
      FLEXION_CHECK("dilator-mantar", chk_dilator_mantar, 5, 5,
                    "with der S = preari(S, D), S is gantar-invariant iff D is mantar-invariant"),
      FLEXION_CHECK("darapal", chk_darapal, 5, 5, "ganit(oz)^-1(dTo(re^-1)) is mantar-invariant"),
      FLEXION_CHECK("girat-anti", chk_girat_anti, 5, 5, "girat(ess) and girat(dess) commute with anti"),
      FLEXION_CHECK("slash-ess", chk_slash_ess, 5, 5, "slash(ess) = es"),
      FLEXION_CHECK("slash-dess", chk_slash_dess, 5, 5, "slash(dess) = es"),
      FLEXION_CHECK("crash-ess", chk_crash_ess, 5, 5, "crash(ess) = ez"),
      FLEXION_CHECK("crash-dess", chk_crash_dess, 5, 5, "crash(dess) = ez"),
      FLEXION_CHECK("gantar-ess", chk_gantar_ess, 5, 5, "gantar(ess) = ess"),
      FLEXION_CHECK("gantar-doss", chk_gantar_doss, 5, 5, "gantar(doss) = doss"),
      FLEXION_CHECK("gantar-dess", chk_gantar_dess, 5, 5, "gantar(dess) = dess"),
  };
  return table;
}

#undef FLEXION_CHECK
#undef FLEXION_SERIES_CHECK

const Entry& entry(const std::string& name) {
  for (const auto& e : entries())
    if (e.info.name == name) return e;
  throw UnknownCheck("unknown check '" + name + "'");
}

template <class T>
Acc run_env(void (*fn)(const Env<T>&, Acc&), const typename T::Ctx& ctx, const FlexionUnit& unit, int L,
            const Strategy& s) {
  Env<T> env{ctx, unit, L, s};
  Acc acc;
  fn(env, acc);
  return acc;
}

CheckReport run(const CheckSpec& spec_in, bool timing, const std::optional<Witness>& focus) {
  const Entry& en = entry(spec_in.name);
  CheckReport rep;
  rep.spec = spec_in;
  if (rep.spec.max_length <= 0)
    rep.spec.max_length = spec_in.backend == Backend::Exact ? en.info.exact_length : en.info.eval_length;
  if (rep.spec.prime == 0) rep.spec.prime = default_prime();
  if (!en.info.series_order && rep.spec.max_length > kMaxLength)
    throw std::invalid_argument("max length is at most " + std::to_string(kMaxLength));
  if (rep.spec.points <= 0) throw std::invalid_argument("points must be positive");

  const auto start = std::chrono::steady_clock::now();
  try {
    FlexionUnit unit = unit_by_name(rep.spec.unit);
    Strategy s{rep.spec.points, rep.spec.seed, focus};
    Acc acc = rep.spec.backend == Backend::Exact
                  ? run_env<Exact>(en.exact, Exact::Ctx{}, unit, rep.spec.max_length, s)
                  : run_env<Eval>(en.eval, Eval::Ctx{rep.spec.prime}, unit, rep.spec.max_length, s);
    rep.status = acc.res.pass ? Status::Pass : Status::Fail;
    rep.witness = acc.res.witness;
    rep.per_length = acc.res.per_length;
    std::sort(rep.per_length.begin(), rep.per_length.end(),
              [](const LengthResult& a, const LengthResult& b) { return a.r < b.r; });
    rep.notes = std::move(acc.notes);
  } catch (const UnitError& ex) {
    rep.status = Status::Skipped;
    rep.reason = ex.what();
  } catch (const ResampleExhausted& ex) {
    rep.status = Status::Skipped;
    rep.reason = ex.what();
  }
  if (timing)
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace

const std::vector<CheckInfo>& check_table() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

const CheckInfo& check_info(const std::string& name) { return entry(name).info; }

CheckReport run_check(const CheckSpec& spec, bool timing) { return run(spec, timing, std::nullopt); }

std::vector<CheckReport> run_checks(const CheckSpec& spec, bool timing) {
  if (spec.name != "all") return {run_check(spec, timing)};
  std::vector<CheckReport> out;
  for (const auto& info : check_table()) {
    CheckSpec s = spec;
    s.name = info.name;
    out.push_back(run_check(s, timing));
  }
  return out;
}

bool replay_witness(const CheckReport& report) {
  if (report.status != Status::Fail || !report.witness) return false;
  auto again = run(report.spec, false, report.witness);
  return again.status == Status::Fail && again.witness && *again.witness == *report.witness;
}

namespace {

nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.spec.name;
  j["unit"] = r.spec.unit;
  j["backend"] = to_string(r.spec.backend);
  j["max_length"] = r.spec.max_length;
  j["points"] = r.spec.points;
  j["seed"] = r.spec.seed;
  if (r.spec.backend == Backend::Eval)
    j["prime"] = r.spec.prime;
  else
    j["prime"] = nullptr;
  j["status"] = to_string(r.status);
  if (r.witness) {
    nlohmann::ordered_json w;
    w["r"] = r.witness->r;
    w["point"] = r.witness->point;
    w["lhs"] = r.witness->lhs;
    w["rhs"] = r.witness->rhs;
    j["witness"] = w;
  }
  if (r.status == Status::Skipped) j["reason"] = r.reason;
  if (!r.notes.empty()) j["notes"] = r.notes;
  auto pl = nlohmann::ordered_json::array();
  for (const auto& l : r.per_length) {
    nlohmann::ordered_json x;
    x["r"] = l.r;
    x["evaluated"] = l.evaluated;
    x["mismatches"] = l.mismatches;
    pl.push_back(x);
  }
  j["per_length"] = pl;
  if (r.wall_ms)
    j["wall_ms"] = *r.wall_ms;
  else
    j["wall_ms"] = nullptr;
  j["version"] = kEngineVersion;
  return j;
}

}  // namespace

std::string report_json(const CheckReport& report) { return to_json(report).dump(2) + "\n"; }

std::string report_json(const std::vector<CheckReport>& reports) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

}  // namespace flexion
