#pragma once

#include <string>

#include "flexion/flexion.hpp"
#include "flexion/identity.hpp"

namespace flexion {

struct UnitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class UnitStatus { IsUnit, FailsParity, FailsTripartite };

struct UnitVerdict {
  UnitStatus status;
  RatFun residual;  // zero when status is IsUnit
};

std::string to_string(UnitStatus s);

// Exact check of parity and the tripartite identity for a component in (u1, v1).
UnitVerdict verify_unit(const RatFun& e);

// E(u1; v1) -> E(v1; u1).
RatFun conjugate_component(const RatFun& e);

struct FlexionUnit {
  std::string name;
  RatFun e;
  RatFun o;  // conjugate, always computed from e
  UnitVerdict verdict;

  FlexionUnit conjugate() const;
};

FlexionUnit make_unit(std::string name, const RatFun& e);
FlexionUnit polar_u();
FlexionUnit polar_v();
// File holds either one canonical string or a numerator line and a denominator line.
FlexionUnit load_custom_unit(const std::string& path);
// "polar-u", "polar-v" or "custom:<path>".
FlexionUnit unit_by_name(const std::string& name);

// push-neutrality of mu^n(E) for 1 <= n <= n_max, exact.
IdentityResult push_neutrality_check(const RatFun& e, int n_max);

// Bimould concentrated in length 1 with the given component.
template <class T>
Bimould<T> unit_bimould(const typename T::Ctx& ctx, const RatFun& e, int trunc) {
  std::vector<RatFun> comps(static_cast<std::size_t>(trunc) + 1, RatFun());
  if (trunc >= 1) comps[1] = e;
  return from_components<T>(ctx, comps);
}

enum class Primary { ez, es, oz, os };

std::string to_string(Primary p);

// Closed product formulas. Throws UnitError for a unit that failed validation.
template <class T>
Bimould<T> primary(const typename T::Ctx& ctx, const FlexionUnit& unit, Primary which, int trunc);
// invmu(1 - E) for ez/oz and expari(E) for es/os.
template <class T>
Bimould<T> primary_oracle(const typename T::Ctx& ctx, const FlexionUnit& unit, Primary which, int trunc);

}  // namespace flexion
