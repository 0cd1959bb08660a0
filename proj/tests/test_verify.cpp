#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "flexion/verify.hpp"

using namespace flexion;

namespace {

std::string broken_unit_file() {
  const std::string path = ::testing::TempDir() + "broken_unit.txt";
  std::ofstream(path) << "u1\n";
  return "custom:" + path;
}

}  // namespace

TEST(Verify, ReportsAreDeterministic) {
  CheckSpec spec{"gantar-doss", "polar-u", Backend::Eval, 5, 16, 7};
  auto a = report_json(run_check(spec)), b = report_json(run_check(spec));
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("\"wall_ms\": null"), std::string::npos);
  EXPECT_NE(a.find("\"status\": \"Pass\""), std::string::npos);
}

TEST(Verify, DefaultsResolve) {
  auto r = run_check({"ari-re-family", "polar-v", Backend::Exact, 5});
  EXPECT_EQ(r.status, Status::Pass);
  EXPECT_EQ(r.spec.max_length, 5);
  auto d = run_check({"negpush"});
  EXPECT_EQ(d.spec.max_length, check_info("negpush").eval_length);
  EXPECT_EQ(d.spec.prime, default_prime());
}

TEST(Verify, TimingOnlyOnRequest) {
  EXPECT_FALSE(run_check({"negpush"}).wall_ms);
  EXPECT_TRUE(run_check({"negpush"}, true).wall_ms);
}

TEST(Verify, UnknownCheck) {
  EXPECT_THROW(run_check({"no-such-check"}), UnknownCheck);
  EXPECT_THROW(check_info("no-such-check"), UnknownCheck);
}

TEST(Verify, BrokenUnitFailsWithReplayableWitness) {
  const auto unit = broken_unit_file();
  for (auto backend : {Backend::Eval, Backend::Exact}) {
    auto r = run_check({"tripartite", unit, backend});
    ASSERT_EQ(r.status, Status::Fail) << to_string(backend);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->r, 2);
    EXPECT_EQ(r.witness->point.empty(), backend == Backend::Exact);
    EXPECT_TRUE(replay_witness(r));
    auto tampered = r;
    tampered.witness->lhs += "0";
    EXPECT_FALSE(replay_witness(tampered));
  }
  auto push = run_check({"push-neutrality", unit, Backend::Eval, 4});
  EXPECT_EQ(push.status, Status::Fail);
  EXPECT_TRUE(replay_witness(push));
}

TEST(Verify, NonUnitSkipsUnitChecks) {
  auto r = run_check({"es-split", broken_unit_file(), Backend::Eval, 3});
  EXPECT_EQ(r.status, Status::Skipped);
  EXPECT_FALSE(r.reason.empty());
  // operator checks do not depend on the unit
  EXPECT_EQ(run_check({"negpush", broken_unit_file(), Backend::Eval, 3}).status, Status::Pass);
}

TEST(Verify, AllRunsEveryCheckInTableOrder) {
  CheckSpec spec{"all", "polar-v", Backend::Eval, 2, 2, 3};
  auto reports = run_checks(spec);
  ASSERT_EQ(reports.size(), check_table().size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    EXPECT_EQ(reports[i].spec.name, check_table()[i].name);
    EXPECT_EQ(reports[i].status, Status::Pass) << reports[i].spec.name;
  }
}

TEST(Verify, DarapalFlagsBinomialVariant) {
  auto r = run_check({"darapal", "polar-u", Backend::Eval, 3});
  EXPECT_EQ(r.status, Status::Pass);
  bool flagged = false;
  for (const auto& n : r.notes) flagged = flagged || n.find("erratum candidate") != std::string::npos;
  EXPECT_TRUE(flagged);
}

// Every check named in the README table is dispatchable and vice versa.
TEST(Verify, DocsTableMatchesDispatch) {
  std::ifstream in(FLEXION_README);
  ASSERT_TRUE(in) << FLEXION_README;
  std::set<std::string> documented;
  bool in_table = false;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("## Checks", 0) == 0) in_table = true;
    else if (line.rfind("## ", 0) == 0) in_table = false;
    if (!in_table || line.rfind("| `", 0) != 0) continue;
    auto end = line.find('`', 3);
    documented.insert(line.substr(3, end - 3));
  }
  std::set<std::string> dispatched;
  for (const auto& c : check_table()) {
    dispatched.insert(c.name);
    EXPECT_NO_THROW(check_info(c.name));
  }
  EXPECT_EQ(dispatched.size(), check_table().size()) << "duplicate check names";
  EXPECT_EQ(documented, dispatched);
}
