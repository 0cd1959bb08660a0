#include <gtest/gtest.h>

#include "flexion/giff.hpp"

using namespace flexion;

namespace {

const Eval::Ctx kF{kMersenne61};
const Exact::Ctx kX{};
const Strategy kS{6, 11};

Rational q(long n, long d = 1) { return Rational(mpz_class(n), mpz_class(d)); }

Bimould<Eval> F(std::uint64_t seed, int L, MuClass c = MuClass::General) {
  return random_bimould<Eval>(kF, seed, L, c, 3);
}

Derivation random_derivation(std::uint64_t seed, int order) {
  auto f = random_series(seed, order);
  Derivation d(order);
  for (int r = 1; r <= order; ++r) d.e[r] = f.a[r];
  return d;
}

}  // namespace

TEST(Series, Compose) {
  auto f = random_series(1, 8), g = random_series(2, 8), h = random_series(3, 8);
  EXPECT_EQ(ps_compose(f, PowerSeries::identity(8)), f);
  EXPECT_EQ(ps_compose(PowerSeries::identity(8), f), f);
  EXPECT_EQ(ps_compose(ps_compose(f, g), h), ps_compose(f, ps_compose(g, h)));
  EXPECT_EQ(ps_compose(f, ps_inverse(f)), PowerSeries::identity(8));
  EXPECT_EQ(ps_inverse(re_series(10)), re_inverse_series(10));
}

TEST(Series, ReCoefficients) {
  auto f = re_series(3);
  EXPECT_EQ(f.a[1], q(-1, 2));
  EXPECT_EQ(f.a[2], q(1, 6));
  EXPECT_EQ(f.a[3], q(-1, 24));
}

TEST(Diff, Bracket) {
  auto b = diff_bracket(Derivation::basis(1, 6), Derivation::basis(2, 6));
  Derivation minus_re3(6);
  minus_re3.e[3] = -1;
  EXPECT_EQ(b, minus_re3);
  auto a = random_derivation(4, 8), c = random_derivation(5, 8), e = random_derivation(6, 8);
  EXPECT_EQ(diff_bracket(a, a), Derivation(8));
  auto j1 = diff_bracket(a, diff_bracket(c, e)), j2 = diff_bracket(c, diff_bracket(e, a)),
       j3 = diff_bracket(e, diff_bracket(a, c));
  for (int r = 1; r <= 8; ++r) EXPECT_TRUE((j1.e[r] + j2.e[r] + j3.e[r]).is_zero());
}

TEST(Giff, ExpLog) {
  PowerSeries geo(12);
  for (int r = 1; r <= 12; ++r) geo.a[r] = 1;
  EXPECT_EQ(giff_exp(Derivation::basis(1, 12)), geo);
  EXPECT_EQ(giff_exp(Derivation(12)), PowerSeries::identity(12));
  for (std::uint64_t s = 1; s <= 3; ++s) {
    auto d = random_derivation(s, 12);
    EXPECT_EQ(giff_log(giff_exp(d)), d);
    auto f = random_series(s + 10, 12);
    EXPECT_EQ(giff_exp(giff_log(f)), f);
  }
}

TEST(Giff, ExpIsMorphismOnCommutingPair) {
  // exp(D) o exp(D) = exp(2D)
  auto d = random_derivation(7, 10);
  Derivation d2(10);
  for (int r = 1; r <= 10; ++r) d2.e[r] = d.e[r] * Rational(2);
  EXPECT_EQ(ps_compose(giff_exp(d), giff_exp(d)), giff_exp(d2));
}

TEST(Giff, Dilator) {
  EXPECT_EQ(dilator(PowerSeries::identity(8)), Derivation(8));
  // x - f/f' for f = -log(1 - x) is x + (1 - x) log(1 - x) = sum_{r>=1} x^(r+1) / (r (r + 1))
  auto g = dilator(re_inverse_series(12));
  for (int r = 1; r <= 12; ++r) EXPECT_EQ(g.e[r], q(1, r * (r + 1))) << r;
  // f' f_# = x f' - f
  auto f = random_series(9, 10);
  auto gam = dilator(f);
  for (int n = 1; n <= 10; ++n) {
    Rational s;
    for (int k = 1; k <= n; ++k) s += Rational(n - k + 1) * f.a[n - k] * gam.e[k];
    EXPECT_EQ(s, Rational(n) * f.a[n]) << n;
  }
}

TEST(Giff, Coproduct) {
  auto t2 = giff_coproduct(2);
  ASSERT_EQ(t2.size(), 2u);
  for (int n = 1; n <= 8; ++n) {
    auto f = random_series(20 + n, 8), g = random_series(40 + n, 8);
    EXPECT_EQ(coproduct_pairing(giff_coproduct(n), f, g), ps_compose(f, g).coeff(n - 1)) << n;
  }
}

TEST(ReFamily, AriRelations) {
  ReFamily<Eval> fam(kF, polar_v(), 5);
  for (int r = 1; r <= 4; ++r)
    for (int s = 1; r + s <= 5; ++s) {
      auto lhs = ari(fam.re(r), fam.re(s));
      auto rhs = Rational(r - s) * fam.re(r + s);
      EXPECT_TRUE(identity_test(lhs, rhs, kS).pass) << r << "," << s;
    }
}

TEST(ReFamily, DroClosedForm) {
  ReFamily<Eval> fam(kF, polar_u(), 5);
  for (int r = 1; r <= 5; ++r) EXPECT_TRUE(identity_test(fam.dro(r), fam.dro_closed(r), kS).pass) << r;
}

TEST(ReFamily, Symmetries) {
  ReFamily<Eval> fam(kF, polar_u(), 5);
  for (int r = 1; r <= 4; ++r) {
    EXPECT_TRUE(is_alternal(fam.re(r), 5, kS).pass) << r;
    EXPECT_TRUE(identity_test(mantar(fam.re(r)), fam.re(r), kS).pass) << r;
    EXPECT_TRUE(identity_test(neg(pari(fam.re(r))), fam.re(r), kS).pass) << r;
  }
}

TEST(Se, Basics) {
  ReFamily<Eval> fam(kF, polar_u(), 4);
  EXPECT_TRUE(identity_test(se_map(fam, PowerSeries::identity(4)), one<Eval>(kF, 4), kS).pass);
  EXPECT_TRUE(identity_test(o_star(fam, PowerSeries::identity(4)), one<Eval>(kF, 4), kS).pass);
  EXPECT_TRUE(identity_test(o_star(fam, re_inverse_series(4)), fam.oz(), kS).pass);
  auto f = random_series(31, 4);
  EXPECT_TRUE(is_symmetral(se_map(fam, f), 4, kS).pass);
  EXPECT_TRUE(identity_test(neg(pari(se_map(fam, f))), se_map(fam, f), kS).pass);
}

TEST(Se, Morphism) {
  ReFamily<Eval> fam(kF, polar_v(), 4);
  auto f = random_series(32, 4), g = random_series(33, 4);
  EXPECT_TRUE(identity_test(se_map(fam, ps_compose(f, g)), gari(se_map(fam, f), se_map(fam, g)), kS).pass);
}

TEST(Se, Derivative) {
  ReFamily<Eval> fam(kF, polar_u(), 4);
  auto f = random_series(34, 4);
  auto s = se_map(fam, f);
  EXPECT_TRUE(identity_test(der(s), preari(s, te_map(fam, f)), kS).pass);
}

TEST(Se, Separation) {
  ReFamily<Eval> fam(kF, polar_u(), 4);
  for (const auto& f : {re_series(4), re_inverse_series(4), random_series(35, 4)})
    EXPECT_TRUE(identity_test(gepar(se_map(fam, f)), o_star(fam, f), kS).pass);
}

TEST(Secondary, ReferenceAndSwap) {
  auto ess = secondary<Eval>(kF, polar_u(), Secondary::ess, 4);
  auto doss = secondary<Eval>(kF, polar_u(), Secondary::doss, 4);
  EXPECT_TRUE(identity_test(swap(ess), doss, kS).pass);
  EXPECT_TRUE(is_symmetral(ess, 4, kS).pass);
  EXPECT_TRUE(identity_test(neg(pari(ess)), ess, kS).pass);
}

TEST(Secondary, SlashAndCrash) {
  for (const auto& unit : {polar_u(), polar_v()}) {
    auto es = primary<Eval>(kF, unit, Primary::es, 4), ez = primary<Eval>(kF, unit, Primary::ez, 4);
    auto ess = secondary<Eval>(kF, unit, Secondary::ess, 4);
    auto dess = secondary<Eval>(kF, unit, Secondary::dess, 4);
    EXPECT_TRUE(identity_test(slash(ess), es, kS).pass) << unit.name;
    EXPECT_TRUE(identity_test(slash(dess), es, kS).pass) << unit.name;
    EXPECT_TRUE(identity_test(crash(dess), ez, kS).pass) << unit.name;
    EXPECT_TRUE(identity_test(crash(ess), ez, kS).pass) << unit.name;
  }
}

TEST(Secondary, Gantar) {
  auto unit = polar_u();
  auto ess = secondary<Eval>(kF, unit, Secondary::ess, 4);
  auto doss = secondary<Eval>(kF, unit, Secondary::doss, 4);
  auto dess = secondary<Eval>(kF, unit, Secondary::dess, 4);
  EXPECT_TRUE(identity_test(gantar(ess), ess, kS).pass);
  EXPECT_TRUE(identity_test(gantar(doss), doss, kS).pass);
  EXPECT_TRUE(identity_test(gantar(dess), dess, kS).pass);
}

TEST(Secondary, GiratAnti) {
  auto unit = polar_v();
  auto x = F(1, 4);
  for (auto which : {Secondary::ess, Secondary::dess}) {
    auto s = secondary<Eval>(kF, unit, which, 4);
    EXPECT_TRUE(identity_test(girat(s, anti(x)), anti(girat(s, x)), kS).pass) << to_string(which);
  }
}

TEST(Separation, SupportingLemmas) {
  ReFamily<Eval> fam(kF, polar_u(), 4);
  auto f = random_series(50, 4);
  auto dso = swap(se_map(fam, f)), dto = swap(te_map(fam, f));
  auto ost = o_star(fam, f);
  EXPECT_TRUE(identity_test(der(dso), iwat(dto, dso) + mu(dso, dto), kS).pass);
  EXPECT_TRUE(identity_test(der(ost), iwat(dto, ost) + mu(ost, dto) + mu(anti(dto), ost), kS).pass);
  auto x = F(2, 4);
  auto g = [&](const Bimould<Eval>& m) { return ganit(ost, m); };
  auto y = ganit(invgani(ost), dto);
  auto lhs = -der(g(x)) + irat(dto, g(x));
  auto rhs = g(-der(x) + arit(y, x));
  EXPECT_TRUE(identity_test(lhs, rhs, kS).pass);
}

TEST(Separation, Darapal) {
  auto unit = polar_u();
  ReFamily<Eval> fam(kF, unit, 5);
  auto oz = fam.oz();
  auto os = primary<Eval>(kF, unit, Primary::os, 5);
  EXPECT_TRUE(identity_test(invgani(oz), pari(anti(os)), kS).pass);
  auto d = ganit(pari(anti(os)), swap(te_map(fam, re_inverse_series(5))));
  EXPECT_TRUE(identity_test(mantar(d), d, kS).pass);
}

TEST(Dilator, MantarTransfer) {
  ReFamily<Eval> fam(kF, polar_v(), 4);
  auto f = random_series(60, 4);
  auto s = se_map(fam, f), d = te_map(fam, f);
  EXPECT_TRUE(identity_test(integrate_dilator(d), s, kS).pass);
  EXPECT_TRUE(identity_test(gantar(s), s, kS).pass);
  auto d0 = F(3, 4, MuClass::LieLike);
  auto dm = Rational(mpz_class(1), mpz_class(2)) * (d0 + mantar(d0));
  auto sm = integrate_dilator(dm);
  EXPECT_TRUE(identity_test(gantar(sm), sm, kS).pass);
  auto s0 = integrate_dilator(d0);
  EXPECT_FALSE(identity_test(gantar(s0), s0, kS).pass);
}
