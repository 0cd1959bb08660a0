#include <gtest/gtest.h>

#include "flexion/flexion.hpp"
#include "flexion/identity.hpp"

using namespace flexion;

namespace {

const Eval::Ctx kF{kMersenne61};
const Strategy kS{6, 5};

Bimould<Eval> F(std::uint64_t seed, int L, MuClass c = MuClass::General) {
  return random_bimould<Eval>(kF, seed, L, c, 3);
}
Bimould<Exact> X(std::uint64_t seed, int L, MuClass c = MuClass::General) {
  return random_bimould<Exact>({}, seed, L, c, 1);
}

}  // namespace

TEST(Amit, LengthTwo) {
  auto a = X(1, 2, MuClass::LieLike), b = X(2, 2);
  // the single decomposition a = empty, b = (w1), c = (w2)
  RatFun ta = component(a, 1), tb = component(b, 1);
  std::vector<LinearForm> sb(2), sa(2);
  sb[0] = LinearForm::u(1) + LinearForm::u(2);
  sb[1] = LinearForm::v(2);
  sa[0] = LinearForm::u(1);
  sa[1] = LinearForm::v(1) - LinearForm::v(2);
  EXPECT_EQ(component(amit(a, b), 2), tb.substitute_linear(sb) * ta.substitute_linear(sa));
  EXPECT_TRUE(component(amit(a, b), 1).is_zero());
  EXPECT_TRUE(component(irat(a, b), 1).is_zero());
}

TEST(Axit, Derivation) {
  auto a = F(3, 4, MuClass::LieLike), a2 = F(4, 4, MuClass::LieLike);
  auto b = F(5, 4), c = F(6, 4);
  auto d = [&](const Bimould<Eval>& m) { return axit(a, a2, m); };
  EXPECT_TRUE(identity_test(d(mu(b, c)), mu(d(b), c) + mu(b, d(c)), kS).pass);
}

TEST(Axit, NegPariConjugation) {
  auto a = F(7, 4, MuClass::LieLike), a2 = F(8, 4, MuClass::LieLike), b = F(9, 4);
  EXPECT_TRUE(identity_test(axit(neg(a), neg(a2), b), neg(axit(a, a2, neg(b))), kS).pass);
  EXPECT_TRUE(identity_test(axit(pari(a), pari(a2), b), pari(axit(a, a2, pari(b))), kS).pass);
}

TEST(Arit, AntiHomomorphism) {
  auto a = F(10, 4, MuClass::LieLike), b = F(11, 4, MuClass::LieLike), c = F(12, 4);
  auto lhs = arit(b, arit(a, c)) - arit(a, arit(b, c));
  EXPECT_TRUE(identity_test(lhs, arit(ari(a, b), c), kS).pass);
}

TEST(Ari, JacobiAndMantar) {
  auto a = F(13, 4, MuClass::LieLike), b = F(14, 4, MuClass::LieLike), c = F(15, 4, MuClass::LieLike);
  auto z = constant_bimould<Eval>(kF, 4, 0);
  EXPECT_TRUE(identity_test(ari(a, a), z, kS).pass);
  EXPECT_TRUE(identity_test(ari(a, ari(b, c)) + ari(b, ari(c, a)) + ari(c, ari(a, b)), z, kS).pass);
  EXPECT_TRUE(identity_test(mantar(ari(a, b)), ari(mantar(a), mantar(b)), kS).pass);
}

TEST(Iwat, CommutesWithAnti) {
  auto x = F(16, 4, MuClass::LieLike), b = F(17, 4);
  EXPECT_TRUE(identity_test(anti(iwat(x, anti(b))), iwat(x, b), kS).pass);
}

TEST(Gaxit, TwoForms) {
  auto a1 = F(18, 5, MuClass::GroupLike), a2 = F(19, 5, MuClass::GroupLike), b = F(20, 5);
  EXPECT_TRUE(identity_test(gaxit(a1, a2, b, GaxitForm::Sigma), gaxit(a1, a2, b, GaxitForm::Blocks), kS).pass);
}

TEST(Gaxit, Trivial) {
  auto e = one<Eval>(kF, 4);
  auto b = F(21, 4);
  EXPECT_TRUE(identity_test(gaxit(e, e, b), b, kS).pass);
  auto x = X(22, 2, MuClass::GroupLike), y = X(23, 2, MuClass::GroupLike), bx = X(24, 2);
  EXPECT_EQ(component(gaxit(x, y, bx), 1), component(bx, 1));
}

TEST(Gaxit, GaxiAction) {
  OpPair<Eval> pa{F(25, 4, MuClass::GroupLike), F(26, 4, MuClass::GroupLike)};
  OpPair<Eval> pb{F(27, 4, MuClass::GroupLike), F(28, 4, MuClass::GroupLike)};
  auto m = F(29, 4);
  EXPECT_TRUE(identity_test(gaxit(pb, gaxit(pa, m)), gaxit(gaxi(pa, pb), m), kS).pass);
  OpPair<Eval> pc{F(30, 4, MuClass::GroupLike), F(31, 4, MuClass::GroupLike)};
  auto l = gaxi(gaxi(pa, pb), pc), r = gaxi(pa, gaxi(pb, pc));
  EXPECT_TRUE(identity_test(l.first, r.first, kS).pass);
  EXPECT_TRUE(identity_test(l.second, r.second, kS).pass);
}

TEST(Gaxit, Separation) {
  auto a1 = F(32, 4, MuClass::GroupLike), a2 = F(33, 4, MuClass::GroupLike), b = F(34, 4);
  auto lhs = gaxit(a1, a2, b);
  auto rhs = gamit(a1, ganit(gamit(invgami(a1), a2), b));
  EXPECT_TRUE(identity_test(lhs, rhs, kS).pass);
  auto rhs2 = ganit(a2, gamit(ganit(invgani(a2), a1), b));
  EXPECT_TRUE(identity_test(lhs, rhs2, kS).pass);
}

TEST(Gaxit, Multiplicative) {
  auto x = F(35, 4, MuClass::GroupLike), a = F(36, 4), b = F(37, 4);
  EXPECT_TRUE(identity_test(ganit(x, mu(a, b)), mu(ganit(x, a), ganit(x, b)), kS).pass);
  EXPECT_TRUE(identity_test(gamit(x, mu(a, b)), mu(gamit(x, a), gamit(x, b)), kS).pass);
}

TEST(Gari, GroupLaws) {
  auto a = F(38, 4, MuClass::GroupLike), b = F(39, 4, MuClass::GroupLike), c = F(40, 4, MuClass::GroupLike);
  auto e = one<Eval>(kF, 4);
  EXPECT_TRUE(identity_test(gari(gari(a, b), c), gari(a, gari(b, c)), kS).pass);
  EXPECT_TRUE(identity_test(gari(a, e), a, kS).pass);
  EXPECT_TRUE(identity_test(gari(invgari(a), a), e, kS).pass);
  EXPECT_TRUE(identity_test(gari(a, invgari(a)), e, kS).pass);
  EXPECT_TRUE(identity_test(gami(gami(a, b), c), gami(a, gami(b, c)), kS).pass);
  EXPECT_TRUE(identity_test(gami(invgami(a), a), e, kS).pass);
  EXPECT_TRUE(identity_test(gani(gani(a, b), c), gani(a, gani(b, c)), kS).pass);
  EXPECT_TRUE(identity_test(gani(invgani(a), a), e, kS).pass);
  EXPECT_TRUE(identity_test(gantar(gari(a, b)), gari(gantar(a), gantar(b)), kS).pass);
  EXPECT_TRUE(identity_test(invgari(e), e, kS).pass);
}

TEST(Gari, DualLinearization) {
  const DualEval::Ctx ctx{kMersenne61};
  auto a = random_bimould<DualEval>(ctx, 41, 4, MuClass::General, 2);
  auto b = random_bimould<DualEval>(ctx, 42, 4, MuClass::LieLike, 2);
  auto g = one<DualEval>(ctx, 4) + eps_times(b);
  EXPECT_TRUE(identity_test(garit(g, a), a + eps_times(arit(b, a)), kS).pass);
  EXPECT_TRUE(identity_test(gari(a, g), a + eps_times(preari(a, b)), kS).pass);
}

TEST(Fundamental, Identity) {
  auto a = F(43, 4), b = F(44, 4, MuClass::GroupLike);
  EXPECT_TRUE(identity_test(fragira(a, b), ganit(crash(b), fragari(a, b)), kS).pass);
  EXPECT_TRUE(identity_test(gira(a, b), ganit(rash(b), gari(a, ras(b))), kS).pass);
  EXPECT_TRUE(identity_test(gira(a, b), mu(girat(b, a), b), kS).pass);
}

TEST(Expari, Symmetral) {
  auto a = F(45, 4, MuClass::LieLike);
  // alternal input: a length-one bimould is trivially alternal
  auto e1 = leng(a, 1);
  EXPECT_TRUE(is_symmetral(expari(e1), 4, kS).pass);
  EXPECT_TRUE(identity_test(expari(constant_bimould<Eval>(kF, 4, 0)), one<Eval>(kF, 4), kS).pass);
}

TEST(Combinators, Trivial) {
  auto e = one<Eval>(kF, 3);
  EXPECT_TRUE(identity_test(slash(e), e, kS).pass);
  EXPECT_TRUE(identity_test(crash(e), e, kS).pass);
}
