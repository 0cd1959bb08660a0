#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "flexion/units.hpp"

using namespace flexion;

namespace {

const Eval::Ctx kF{kMersenne61};
const Exact::Ctx kX{};

RatFun u(int i) { return RatFun::var(u_var(i)); }
RatFun v(int i) { return RatFun::var(v_var(i)); }

}  // namespace

TEST(VerifyUnit, Polar) {
  EXPECT_EQ(polar_u().verdict.status, UnitStatus::IsUnit);
  EXPECT_EQ(polar_v().verdict.status, UnitStatus::IsUnit);
  EXPECT_EQ(polar_u().o, v(1).inv());
  EXPECT_EQ(polar_v().o, u(1).inv());
}

TEST(VerifyUnit, BrokenUnits) {
  auto bad = verify_unit(u(1));
  EXPECT_EQ(bad.status, UnitStatus::FailsTripartite);
  // u1 u2 - u1 (u1 + u2) - (u1 + u2) u2
  EXPECT_EQ(bad.residual, -(u(1) * u(1) + u(1) * u(2) + u(2) * u(2)));
  auto even = verify_unit((u(1) * u(1)).inv());
  EXPECT_EQ(even.status, UnitStatus::FailsParity);
  EXPECT_FALSE(even.residual.is_zero());
}

TEST(VerifyUnit, Sum) {
  // 1/u1 + 1/v1 is a unit as well.
  EXPECT_EQ(verify_unit(u(1).inv() + v(1).inv()).status, UnitStatus::IsUnit);
}

TEST(PushNeutrality, AgreesWithVerdict) {
  EXPECT_TRUE(push_neutrality_check(polar_u().e, 6).pass);
  EXPECT_TRUE(push_neutrality_check(polar_v().e, 6).pass);
  auto res = push_neutrality_check(u(1), 3);
  EXPECT_FALSE(res.pass);
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(res.witness->r, 2);
}

TEST(UnitRegistry, Names) {
  EXPECT_EQ(unit_by_name("polar-u").e, u(1).inv());
  EXPECT_THROW(unit_by_name("polar-w"), UnitError);
  const std::string path = ::testing::TempDir() + "unit.txt";
  {
    std::ofstream out(path);
    out << "u1 + v1\nu1*v1\n";
  }
  auto c = unit_by_name("custom:" + path);
  EXPECT_EQ(c.e, u(1).inv() + v(1).inv());
  EXPECT_EQ(c.verdict.status, UnitStatus::IsUnit);
  {
    std::ofstream out(path);
    out << "1 / (u1*v1)\n";
  }
  EXPECT_EQ(unit_by_name("custom:" + path).verdict.status, UnitStatus::FailsParity);
  std::remove(path.c_str());
}

TEST(Primary, ClosedFormsAtLengthTwo) {
  EXPECT_EQ(component(primary<Exact>(kX, polar_u(), Primary::ez, 2), 2), (u(1) * u(2)).inv());
  EXPECT_EQ(component(primary<Exact>(kX, polar_u(), Primary::es, 2), 2), (u(1) * (u(1) + u(2))).inv());
  EXPECT_THROW(primary<Exact>(kX, make_unit("u1", u(1)), Primary::ez, 2), UnitError);
}

TEST(Primary, OracleAgreement) {
  for (const auto& unit : {polar_u(), polar_v()})
    for (auto p : {Primary::ez, Primary::es, Primary::oz, Primary::os})
      EXPECT_TRUE(identity_test(primary<Exact>(kX, unit, p, 4), primary_oracle<Exact>(kX, unit, p, 4)).pass)
          << unit.name << " " << to_string(p);
}

TEST(Primary, SwapRelations) {
  for (const auto& unit : {polar_u(), polar_v()}) {
    auto es = primary<Exact>(kX, unit, Primary::es, 5), ez = primary<Exact>(kX, unit, Primary::ez, 5);
    EXPECT_TRUE(identity_test(swap(es), primary<Exact>(kX, unit, Primary::oz, 5)).pass);
    EXPECT_TRUE(identity_test(swap(ez), primary<Exact>(kX, unit, Primary::os, 5)).pass);
  }
}

TEST(Primary, EsLaws) {
  auto unit = polar_v();
  auto es = primary<Eval>(kF, unit, Primary::es, 5), ez = primary<Eval>(kF, unit, Primary::ez, 5);
  EXPECT_TRUE(is_symmetral(es, 5).pass);
  EXPECT_TRUE(identity_test(invgani(ez), pari(anti(es))).pass);
  EXPECT_TRUE(identity_test(invmu(es), push(es)).pass);
  EXPECT_TRUE(identity_test(neg(pari(es)), es).pass);
  EXPECT_TRUE(identity_test(neg(pari(ez)), ez).pass);
  EXPECT_TRUE(identity_test(gantar(es), es).pass);
}

TEST(Primary, EsVersusEzFails) {
  auto res = identity_test(primary<Exact>(kX, polar_u(), Primary::es, 2), primary<Exact>(kX, polar_u(), Primary::ez, 2));
  EXPECT_FALSE(res.pass);
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(res.witness->r, 2);
}
