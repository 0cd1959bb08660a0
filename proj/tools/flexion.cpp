#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "flexion/verify.hpp"

using namespace flexion;

namespace {

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty entry in coefficient list");
    out.push_back(Rational::parse(item.substr(b, e - b + 1)));
  }
  return out;
}

std::string pq(const Rational& q) { return q.num().get_str() + "/" + q.den().get_str(); }

void print_list(const std::vector<Rational>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) std::cout << (i ? "," : "") << pq(xs[i]);
  std::cout << "\n";
}

PowerSeries series_from(const std::vector<Rational>& coeffs, int order) {
  PowerSeries f(order);
  for (int r = 1; r <= order && r <= static_cast<int>(coeffs.size()); ++r) f.a[r] = coeffs[r - 1];
  return f;
}

Derivation derivation_from(const std::vector<Rational>& coeffs, int order) {
  Derivation d(order);
  for (int r = 1; r <= order && r <= static_cast<int>(coeffs.size()); ++r) d.e[r] = coeffs[r - 1];
  return d;
}

std::vector<Rational> tail(const std::vector<Rational>& v) { return {v.begin() + 1, v.end()}; }

int run_giff(const std::string& op, const std::string& c1, const std::string& c2, int order) {
  auto a = parse_list(c1);
  if (op == "compose" || op == "coproduct") {
    if (c2.empty()) throw std::invalid_argument("--coeffs2 is required for " + op);
    auto f = series_from(a, order), g = series_from(parse_list(c2), order);
    if (op == "compose") {
      print_list(tail(ps_compose(f, g).a));
    } else {
      std::vector<Rational> out;
      for (int n = 1; n <= order + 1; ++n) out.push_back(coproduct_pairing(giff_coproduct(n), f, g));
      print_list(out);
    }
  } else if (op == "inverse") {
    print_list(tail(ps_inverse(series_from(a, order)).a));
  } else if (op == "exp") {
    print_list(tail(giff_exp(derivation_from(a, order)).a));
  } else if (op == "log") {
    print_list(tail(giff_log(series_from(a, order)).e));
  } else if (op == "dilator") {
    print_list(tail(dilator(series_from(a, order)).e));
  } else {
    throw std::invalid_argument("unknown giff op '" + op + "'");
  }
  return 0;
}

int run_show(const std::string& what, const std::string& unit_name, int length) {
  if (length < 0 || length > kMaxLength)
    throw std::invalid_argument("length must be in [0, " + std::to_string(kMaxLength) + "]");
  const Exact::Ctx ctx{};
  auto unit = unit_by_name(unit_name);
  const int trunc = std::max(length, 1);
  auto index = [&](const std::string& prefix) {
    int r = std::stoi(what.substr(prefix.size()));
    if (r < 1 || r > kMaxLength) throw std::invalid_argument("index out of range in " + what);
    return r;
  };
  Bimould<Exact> b = one<Exact>(ctx, trunc);
  if (what == "ez") b = primary<Exact>(ctx, unit, Primary::ez, trunc);
  else if (what == "es") b = primary<Exact>(ctx, unit, Primary::es, trunc);
  else if (what == "oz") b = primary<Exact>(ctx, unit, Primary::oz, trunc);
  else if (what == "os") b = primary<Exact>(ctx, unit, Primary::os, trunc);
  else if (what == "ess") b = secondary<Exact>(ctx, unit, Secondary::ess, trunc);
  else if (what == "oss") b = secondary<Exact>(ctx, unit, Secondary::oss, trunc);
  else if (what == "dess") b = secondary<Exact>(ctx, unit, Secondary::dess, trunc);
  else if (what == "doss") b = secondary<Exact>(ctx, unit, Secondary::doss, trunc);
  else if (what.rfind("re:", 0) == 0 || what.rfind("dro:", 0) == 0) {
    const bool dro = what[0] == 'd';
    const int r = index(dro ? "dro:" : "re:");
    ReFamily<Exact> fam(ctx, unit, std::max(trunc, r));
    b = dro ? fam.dro(r) : fam.re(r);
  } else {
    throw std::invalid_argument("unknown bimould '" + what + "'");
  }
  std::cout << component(b, length).canonical_string() << "\n";
  return 0;
}

int run_verify(CheckSpec spec, const std::string& backend, const std::string& report, bool timing, bool list) {
  if (list) {
    for (const auto& c : check_table())
      std::cout << c.name << "\t" << c.eval_length << "\t" << c.exact_length << "\t" << c.statement << "\n";
    return 0;
  }
  spec.backend = parse_backend(backend);
  auto reports = run_checks(spec, timing);
  bool all_pass = true;
  for (const auto& r : reports) {
    all_pass = all_pass && r.status == Status::Pass;
    std::cout << r.spec.name << " " << to_string(r.status) << " L=" << r.spec.max_length;
    if (r.witness) std::cout << " witness r=" << r.witness->r;
    if (r.status == Status::Skipped) std::cout << " (" << r.reason << ")";
    if (r.wall_ms) std::cout << " " << static_cast<long>(*r.wall_ms) << "ms";
    std::cout << "\n";
  }
  if (!report.empty()) {
    std::ofstream out(report);
    if (!out) throw std::runtime_error("cannot write " + report);
    out << (reports.size() == 1 ? report_json(reports.front()) : report_json(reports));
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact flexion calculus: theorem checks, bimould components and series operations"};
  app.require_subcommand(1);

  CheckSpec spec;
  std::string backend = "eval", report;
  bool timing = false, list = false;
  auto* verify = app.add_subcommand("verify", "run named checks");
  verify->add_option("--check", spec.name, "check name or all");
  verify->add_option("--unit", spec.unit, "polar-u, polar-v or custom:PATH");
  verify->add_option("--backend", backend, "exact or eval");
  verify->add_option("--max-length", spec.max_length, "maximum length; defaults per check");
  verify->add_option("--points", spec.points, "sample points per length (eval)");
  verify->add_option("--seed", spec.seed, "seed for sample points and random inputs");
  verify->add_option("--report", report, "write the JSON report here");
  verify->add_flag("--timing", timing, "record wall time in the report");
  verify->add_flag("--list", list, "list the check names and exit");
  std::uint64_t prime = 0;
  verify->add_option("--prime", prime, "evaluation modulus, a prime in [2^60, 2^63); overrides FLEXION_PRIME");

  std::string bimould, unit = "polar-u";
  int length = 1;
  auto* show = app.add_subcommand("show", "print one exact component");
  show->add_option("--bimould", bimould, "ez|es|oz|os|ess|oss|dess|doss|re:<r>|dro:<r>")->required();
  show->add_option("--unit", unit, "polar-u, polar-v or custom:PATH");
  show->add_option("--length", length, "component length")->required();

  std::string op, coeffs, coeffs2;
  int order = 0;
  auto* giff = app.add_subcommand("giff", "power series operations");
  giff->add_option("--op", op, "compose|inverse|exp|log|dilator|coproduct")->required();
  giff->add_option("--coeffs", coeffs, "a_1,...,a_N as integers or p/q")->required();
  giff->add_option("--coeffs2", coeffs2, "second series for compose and coproduct");
  giff->add_option("--order", order, "truncation order N")->required()->check(CLI::Range(1, 64));

  CLI11_PARSE(app, argc, argv);

  try {
    if (prime) set_default_prime(prime);
    if (*verify) {
      if (spec.name.empty() && !list) throw std::invalid_argument("--check is required");
      return run_verify(spec, backend, report, timing, list);
    }
    if (*show) return run_show(bimould, unit, length);
    return run_giff(op, coeffs, coeffs2, order);
  } catch (const std::exception& ex) {
    std::cerr << "flexion: " << ex.what() << "\n";
    return 2;
  }
}
