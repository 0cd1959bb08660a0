#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flexion/giff.hpp"

namespace flexion {

inline constexpr const char* kEngineVersion = "0.1.0";

enum class Backend { Exact, Eval };
enum class Status { Pass, Fail, Skipped };

std::string to_string(Backend b);
std::string to_string(Status s);
Backend parse_backend(const std::string& s);

struct UnknownCheck : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CheckSpec {
  std::string name;
  std::string unit = "polar-u";
  Backend backend = Backend::Eval;
  int max_length = 0;  // 0 selects the check's default for the backend
  int points = 16;
  std::uint64_t seed = 1;
  std::uint64_t prime = 0;  // 0 selects default_prime()
};

struct CheckReport {
  CheckSpec spec;  // max_length resolved
  Status status = Status::Pass;
  std::optional<Witness> witness;
  std::string reason;  // set when skipped
  std::vector<std::string> notes;
  std::vector<LengthResult> per_length;
  std::optional<double> wall_ms;
};

struct CheckInfo {
  std::string name;
  std::string statement;
  int eval_length;
  int exact_length;
  bool series_order;  // max_length is a power-series order, not a word length
};

// Every check in the order "all" runs them.
const std::vector<CheckInfo>& check_table();
const CheckInfo& check_info(const std::string& name);

CheckReport run_check(const CheckSpec& spec, bool timing = false);
// Expands "all"; otherwise a single check.
std::vector<CheckReport> run_checks(const CheckSpec& spec, bool timing = false);

// Re-runs a failed check at its witness only; true iff the same mismatch
// comes back.
bool replay_witness(const CheckReport& report);

std::string report_json(const CheckReport& report);
std::string report_json(const std::vector<CheckReport>& reports);

}  // namespace flexion
