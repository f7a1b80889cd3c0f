#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "nilharm/eigenchain.hpp"

namespace nilharm {

// Raised for malformed or incomplete experiment input; the CLI maps it to
// exit code 2, as opposed to numerical check failures which exit 1.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One experiment: a group, a task, and the task's parameters.  Defaults are
// chosen so every task runs out of the box on heisenberg-1.
struct ExperimentSpec {
  std::string task;
  std::string group_name = "heisenberg-1";
  std::string group_file;  // wins over group_name when nonempty
  std::uint64_t seed = 0;
  std::string out_path;  // empty: stdout

  // verify-group / symplectic
  int trials = 100;

  // eigen / symplectic (optional fixed functional)
  Eigen::VectorXd lambda;
  MultiIndex alpha;

  // chain / probe
  std::vector<std::string> terms;

  // probe bumps and windows
  Eigen::VectorXd phi_center, psi_center;
  double phi_radius = 0.5, psi_radius = 0.5;
  int bump_order = 4;
  std::string psi_mode = "covering";  // covering | off-support
  int l_max = 4;
  std::vector<double> windows = {10.0, 40.0};
  ProbeSettings probe;

  // sampling knobs shared by the pointwise checks
  int n_points = 20;
  double box = 1.5;
  double step = 1e-3;
};

// Accumulates check records and serializes the flat report document.  The
// payload is deterministic for a fixed spec and seed; wall_time_ms is the
// only field excluded from that guarantee.
class Report {
 public:
  Report(std::string task, std::string group);

  void set_param(const std::string& key, nlohmann::ordered_json value);
  void set_env(const std::string& key, nlohmann::ordered_json value);
  void set_result(const std::string& key, nlohmann::ordered_json value);

  // pass iff value <= tolerance.
  void add_check(const std::string& name, double value, double tolerance);
  // pass iff value >= threshold (growth-style checks); direction recorded.
  void add_check_at_least(const std::string& name, double value, double threshold);
  void add_check(const std::string& name, bool pass);
  // Named failure carrying an error message (NondegeneracyError etc).
  void add_failure(const std::string& name, const std::string& message);

  bool overall_pass() const;
  void set_wall_time_ms(std::int64_t ms);
  nlohmann::ordered_json to_json() const;
  std::string to_string() const;  // payload + trailing newline

 private:
  nlohmann::ordered_json doc_;
  bool all_pass_ = true;
};

// "l1;...;lk|a1;...;an|re[,im]" with the last two fields optional
// (alpha defaults to zeros, coeff to 1).
ChainTerm parse_chain_term(const TwoStepAlgebra& a, const std::string& text);

// ";"-separated numbers; throws SpecError with `what` in the message.
Eigen::VectorXd parse_vector(const std::string& text, const std::string& what);
MultiIndex parse_multi_index(const std::string& text, const std::string& what);

// Dispatches the task and runs its checks.  Throws SpecError on invalid
// input; numerical failures are recorded in the report instead.
Report run(const ExperimentSpec& spec);

// Full front end: argv -> spec -> run -> write report.  Returns the process
// exit code (0 pass, 1 check failure, 2 input error).
int run_cli(int argc, const char* const* argv);

}  // namespace nilharm
