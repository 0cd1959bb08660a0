#include "flexion/units.hpp"

#include <fstream>

namespace flexion {

std::string to_string(UnitStatus s) {
  switch (s) {
    case UnitStatus::IsUnit:
      return "IsUnit";
    case UnitStatus::FailsParity:
      return "FailsParity";
    case UnitStatus::FailsTripartite:
      return "FailsTripartite";
  }
  return "?";
}

std::string to_string(Primary p) {
  switch (p) {
    case Primary::ez:
      return "ez";
    case Primary::es:
      return "es";
    case Primary::oz:
      return "oz";
    case Primary::os:
      return "os";
  }
  return "?";
}

namespace {

// E evaluated at the letter (u; v), both given as linear forms.
RatFun at_letter(const RatFun& e, const LinearForm& u, const LinearForm& v) {
  std::vector<LinearForm> args(2);
  args[0] = u;
  args[1] = v;
  return e.substitute_linear(args);
}

}  // namespace

UnitVerdict verify_unit(const RatFun& e) {
  if (e.max_var() > 1) throw std::invalid_argument("a flexion unit depends on u1 and v1 only");
  const auto u1 = LinearForm::u(1), v1 = LinearForm::v(1), u2 = LinearForm::u(2), v2 = LinearForm::v(2);

  RatFun parity = e + at_letter(e, -u1, -v1);
  if (!parity.is_zero()) return {UnitStatus::FailsParity, parity};

  // E(w1)E(w2) - E(w1|w2)E(|w1 w2) - E(w1|^w2)E(|_w1 w2)
  RatFun lhs = e * at_letter(e, u2, v2);
  RatFun rhs = at_letter(e, u1, v1 - v2) * at_letter(e, u1 + u2, v2) +
               at_letter(e, u1 + u2, v1) * at_letter(e, u2, v2 - v1);
  RatFun trip = lhs - rhs;
  if (!trip.is_zero()) return {UnitStatus::FailsTripartite, trip};
  return {UnitStatus::IsUnit, RatFun()};
}

RatFun conjugate_component(const RatFun& e) { return at_letter(e, LinearForm::v(1), LinearForm::u(1)); }

FlexionUnit make_unit(std::string name, const RatFun& e) {
  return {std::move(name), e, conjugate_component(e), verify_unit(e)};
}

FlexionUnit FlexionUnit::conjugate() const { return make_unit(name + "/conjugate", o); }

FlexionUnit polar_u() { return make_unit("polar-u", RatFun::var(u_var(1)).inv()); }
FlexionUnit polar_v() { return make_unit("polar-v", RatFun::var(v_var(1)).inv()); }

FlexionUnit load_custom_unit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UnitError("cannot read unit file " + path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    lines.push_back(line.substr(b));
  }
  RatFun e;
  try {
    if (lines.size() == 1) {
      e = RatFun::parse(lines[0]);
    } else if (lines.size() == 2) {
      RatFun den = RatFun::parse(lines[1]);
      if (den.is_zero()) throw UnitError("unit denominator is zero");
      e = RatFun::parse(lines[0]) / den;
    } else {
      throw UnitError("unit file must hold one expression or a numerator and a denominator line");
    }
  } catch (const std::invalid_argument& ex) {
    throw UnitError(std::string("bad unit file: ") + ex.what());
  }
  if (e.max_var() > 1) throw UnitError("unit may only use u1 and v1");
  return make_unit("custom:" + path, e);
}

FlexionUnit unit_by_name(const std::string& name) {
  if (name == "polar-u") return polar_u();
  if (name == "polar-v") return polar_v();
  if (name.rfind("custom:", 0) == 0) return load_custom_unit(name.substr(7));
  throw UnitError("unknown unit '" + name + "'");
}

IdentityResult push_neutrality_check(const RatFun& e, int n_max) {
  IdentityResult total;
  const Exact::Ctx ctx{};
  for (int n = 1; n <= n_max; ++n) {
    auto ue = unit_bimould<Exact>(ctx, e, n);
    auto m = ue;
    for (int i = 1; i < n; ++i) m = mu(m, ue);
    auto res = is_push_neutral(m);
    // Only length n carries mu^n(E); report it under n.
    IdentityResult top;
    top.pass = res.pass;
    top.witness = res.witness;
    for (const auto& l : res.per_length)
      if (l.r == n) top.per_length.push_back(l);
    total.merge(top);
  }
  return total;
}

template <class T>
Bimould<T> primary(const typename T::Ctx& ctx, const FlexionUnit& unit, Primary which, int trunc) {
  if (unit.verdict.status != UnitStatus::IsUnit)
    throw UnitError(unit.name + " is not a flexion unit (" + to_string(unit.verdict.status) + ")");
  const bool conj = which == Primary::oz || which == Primary::os;
  auto e = unit_bimould<T>(ctx, conj ? unit.o : unit.e, trunc);
  using W = Word<typename T::Lin>;
  if (which == Primary::ez || which == Primary::oz) {
    return Bimould<T>(trunc, ctx, [e](const Node<T>&, const W& w) {
      auto p = e.constant(1);
      for (const auto& l : w) p *= e(W{l});
      return p;
    });
  }
  // E(u1; v1-v2) E(u1+u2; v2-v3) ... E(u1+...+ur; vr)
  return Bimould<T>(trunc, ctx, [e](const Node<T>&, const W& w) {
    auto p = e.constant(1);
    if (w.empty()) return p;
    auto u = w[0].u;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0) u += w[i].u;
      auto v = w[i].v;
      if (i + 1 < w.size()) v -= w[i + 1].v;
      p *= e(W{Letter<typename T::Lin>{u, v}});
    }
    return p;
  });
}

template <class T>
Bimould<T> primary_oracle(const typename T::Ctx& ctx, const FlexionUnit& unit, Primary which, int trunc) {
  if (unit.verdict.status != UnitStatus::IsUnit)
    throw UnitError(unit.name + " is not a flexion unit (" + to_string(unit.verdict.status) + ")");
  const bool conj = which == Primary::oz || which == Primary::os;
  auto e = unit_bimould<T>(ctx, conj ? unit.o : unit.e, trunc);
  if (which == Primary::ez || which == Primary::oz) return invmu(one<T>(ctx, trunc) - e);
  return expari(e);
}

#define FLEXION_INSTANTIATE(T)                                                               \
  template Bimould<T> primary<T>(const T::Ctx&, const FlexionUnit&, Primary, int);           \
  template Bimould<T> primary_oracle<T>(const T::Ctx&, const FlexionUnit&, Primary, int);

FLEXION_INSTANTIATE(Exact)
FLEXION_INSTANTIATE(DualExact)
FLEXION_INSTANTIATE(Eval)
FLEXION_INSTANTIATE(DualEval)

}  // namespace flexion
