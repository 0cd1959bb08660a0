// Acceptance run: one PASS/FAIL line per criterion. Limits are wall-clock
// seconds and are fixed here.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>

#include "flexion/verify.hpp"

using namespace flexion;

namespace {

constexpr double kLimitUnitGate = 5;
constexpr double kLimitPrimary = 60;
constexpr double kLimitReFamily = 120;
constexpr double kLimitOperatorEach = 60;
constexpr double kLimitFundamental = 120;
constexpr double kLimitSeparation = 180;
constexpr double kLimitSecondaryEach = 300;
constexpr double kLimitGiff = 5;
constexpr int kPoints = 16;
constexpr std::uint64_t kSeed = 20240601;

const char* const kUnits[] = {"polar-u", "polar-v"};

struct Criterion {
  bool pass = true;
  std::vector<std::string> details;

  void need(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details.push_back(what);
    }
  }
  // Runs one check and requires Pass within the per-check limit.
  CheckReport check(const std::string& name, const std::string& unit, Backend b, int L, double limit = 0) {
    CheckSpec spec{name, unit, b, L, kPoints, kSeed};
    auto r = run_check(spec, true);
    std::string tag = name + " " + unit + " " + to_string(b) + " L=" + std::to_string(L);
    need(r.status == Status::Pass, tag + ": " + to_string(r.status) + (r.reason.empty() ? "" : " (" + r.reason + ")"));
    if (limit > 0) need(*r.wall_ms < limit * 1000, tag + ": " + std::to_string(*r.wall_ms / 1000) + " s over limit");
    return r;
  }
};

int failures = 0;

void criterion(int n, const std::string& title, double limit, const std::function<void(Criterion&)>& body) {
  Criterion c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& ex) {
    c.need(false, std::string("exception: ") + ex.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0) c.need(secs < limit, "total time over limit");
  if (!c.pass) ++failures;
  std::printf("criterion %2d: %s  %s  (%.2f s", n, c.pass ? "PASS" : "FAIL", title.c_str(), secs);
  if (limit > 0) std::printf(", limit %.0f s", limit);
  std::printf(")\n");
  for (const auto& d : c.details) std::printf("    %s\n", d.c_str());
  std::fflush(stdout);
}

std::string broken_unit() {
  const std::string path = "acceptance_broken_unit.txt";
  std::ofstream(path) << "u1\n";
  return "custom:" + path;
}

// t - (1 - t) log(1 - t) expanded as written: (1 - t) log(1 - t) = -t +
// sum_{n>=2} t^n / (n (n - 1)), so the t^1 coefficient is 2 and the t^n
// coefficient is -1 / (n (n - 1)).
std::vector<Rational> displayed_dilator(int order) {
  std::vector<Rational> c{Rational(2)};
  for (int n = 2; n <= order + 1; ++n) c.push_back(Rational(mpz_class(-1), mpz_class(n * (n - 1))));
  return c;
}

}  // namespace

int main() {
  std::printf("acceptance: seed %llu, %d points per length, modulus %llu\n", static_cast<unsigned long long>(kSeed),
              kPoints, static_cast<unsigned long long>(default_prime()));

  criterion(1, "unit gate (exact)", kLimitUnitGate, [](Criterion& c) {
    for (const char* u : kUnits) {
      auto unit = unit_by_name(u);
      c.need(unit.verdict.status == UnitStatus::IsUnit, std::string(u) + " verdict " + to_string(unit.verdict.status));
      c.need(push_neutrality_check(unit.e, 6).pass, std::string(u) + " push-neutrality n <= 6");
      c.check("tripartite", u, Backend::Exact, 2);
      c.check("push-neutrality", u, Backend::Exact, 6);
    }
    auto bad = verify_unit(RatFun::var(u_var(1)));
    c.need(bad.status != UnitStatus::IsUnit && !bad.residual.is_zero(), "E = u1 not rejected with a residual");
    auto r = run_check({"tripartite", broken_unit(), Backend::Exact, 2, kPoints, kSeed});
    c.need(r.status == Status::Fail && r.witness.has_value(), "E = u1 tripartite check did not fail with a witness");
  });

  criterion(2, "primary bimould laws (exact, L = 6)", kLimitPrimary, [](Criterion& c) {
    for (const char* u : kUnits) {
      c.check("ez-es-relations", u, Backend::Exact, 6);
      c.check("es-split", u, Backend::Exact, 6);
    }
  });

  criterion(3, "re family and dro formula (exact, r + s <= 6)", kLimitReFamily, [](Criterion& c) {
    for (const char* u : kUnits) {
      c.check("ari-re-family", u, Backend::Exact, 6);
      c.check("dro-formula", u, Backend::Exact, 6);
    }
  });

  criterion(4, "operator algebra (eval, L = 4)", 0, [](Criterion& c) {
    for (const char* name : {"axit-derivation", "arit-antihom", "gaxit-two-forms", "gaxit-assoc", "gaxit-separation",
                             "gaxit-multiplicative", "dual-number-linearization"})
      c.check(name, "polar-u", Backend::Eval, 4, kLimitOperatorEach);
  });

  criterion(5, "fundamental identity and ras/rash variant (eval L = 4, exact L = 3)", kLimitFundamental,
            [](Criterion& c) {
              for (const char* name : {"fundamental-identity", "ras-rash"}) {
                c.check(name, "polar-u", Backend::Eval, 4);
                c.check(name, "polar-u", Backend::Exact, 3);
              }
            });

  criterion(6, "separation lemma and supporting statements (exact L = 4, eval L = 5)", kLimitSeparation,
            [](Criterion& c) {
              for (const char* name : {"separation-lemma", "lemma-1195", "lemma-1197", "prop-244"})
                for (const char* u : kUnits) {
                  c.check(name, u, Backend::Exact, 4);
                  c.check(name, u, Backend::Eval, 5);
                }
            });

  criterion(7, "secondary bimoulds: slash, crash, gantar", 0, [](Criterion& c) {
    for (const char* u : kUnits) {
      c.check("slash-ess", u, Backend::Eval, 5, kLimitSecondaryEach);
      c.check("slash-dess", u, Backend::Eval, 5, kLimitSecondaryEach);
      for (const char* name : {"crash-ess", "crash-dess"}) {
        c.check(name, u, Backend::Exact, 3, kLimitSecondaryEach);
        c.check(name, u, Backend::Eval, 4, kLimitSecondaryEach);
        c.check(name, u, Backend::Eval, 5, kLimitSecondaryEach);
      }
      c.check("gantar-doss", u, Backend::Eval, 5, kLimitSecondaryEach);
      c.check("gantar-ess", u, Backend::Eval, 5, kLimitSecondaryEach);
      // reported on its own line; not part of the criterion
      auto d = run_check({"gantar-dess", u, Backend::Eval, 5, kPoints, kSeed});
      c.details.push_back(std::string("(separate) gantar-dess ") + u + ": " + to_string(d.status));
    }
  });

  criterion(8, "GIFF: exp/log, dilator of re^-1, coproduct, exp(x^2 d/dx) (exact, order 12)", kLimitGiff,
            [](Criterion& c) {
              c.check("giff-explog", "polar-u", Backend::Exact, 12);
              c.check("giff-coproduct", "polar-u", Backend::Exact, 8);
              constexpr int kOrder = 12;
              auto e = giff_exp(Derivation::basis(1, kOrder));
              for (int r = 1; r <= kOrder; ++r) c.need(e.a[r] == Rational(1), "exp(x^2 d/dx) a_" + std::to_string(r));
              // x - f/f' has no t^1 term; the t^(r+1) coefficient is gamma_r
              auto g = dilator(re_inverse_series(kOrder));
              std::vector<Rational> computed{Rational(0)};
              for (int r = 1; r <= kOrder; ++r) computed.push_back(g.e[r]);
              auto shown = displayed_dilator(kOrder);
              int bad = 0;
              for (std::size_t n = 0; n < shown.size(); ++n)
                if (!(computed[n] == shown[n])) {
                  if (bad++ == 0)
                    c.need(false, "dilator(re^-1) vs t - (1-t) log(1-t): t^" + std::to_string(n + 1) + " coefficient " +
                                      computed[n].str() + " vs " + shown[n].str());
                }
              if (bad)
                c.details.push_back("dilator(re^-1) differs from t - (1-t) log(1-t) in " + std::to_string(bad) + " of " +
                                    std::to_string(shown.size()) + " coefficients; it equals t + (1-t) log(1-t)");
            });

  criterion(9, "cross-backend coherence at L = 3", 0, [](Criterion& c) {
    int compared = 0;
    for (const char* u : kUnits)
      for (const auto& info : check_table()) {
        CheckSpec s{info.name, u, Backend::Exact, 3, kPoints, kSeed};
        auto ex = run_check(s);
        s.backend = Backend::Eval;
        auto ev = run_check(s);
        ++compared;
        c.need(ex.status == ev.status,
               info.name + " " + u + ": exact " + to_string(ex.status) + ", eval " + to_string(ev.status));
      }
    c.details.push_back(std::to_string(compared) + " check/unit pairs compared");
    if (c.details.size() == 1 && c.pass) c.details.clear();
  });

  criterion(10, "determinism and witness replay", 0, [](Criterion& c) {
    CheckSpec all{"all", "polar-u", Backend::Eval, 0, kPoints, kSeed};
    c.need(report_json(run_checks(all)) == report_json(run_checks(all)), "eval suite reports differ between runs");
    CheckSpec ex{"all", "polar-v", Backend::Exact, 3, kPoints, kSeed};
    c.need(report_json(run_checks(ex)) == report_json(run_checks(ex)), "exact suite reports differ between runs");
    const auto bad = broken_unit();
    for (auto b : {Backend::Eval, Backend::Exact})
      for (const char* name : {"tripartite", "push-neutrality"}) {
        auto r = run_check({name, bad, b, 4, kPoints, kSeed});
        c.need(r.status == Status::Fail, std::string(name) + " on E = u1 did not fail");
        c.need(replay_witness(r), std::string(name) + " " + to_string(b) + " witness did not replay");
      }
  });

  std::remove("acceptance_broken_unit.txt");
  std::printf("acceptance: %d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
