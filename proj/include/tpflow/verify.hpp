#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace tpflow {

struct VerifyCase {
  std::string id;
  std::vector<std::string> ops;  // operations this case exercises
  bool pass = false;
  std::string detail;            // expected/got/tolerance on failure, summary on pass
};

struct VerifyReport {
  std::string suite;
  uint64_t seed = 0;
  double tol = 0;
  std::vector<VerifyCase> cases;
  double wall_ms = 0;
  bool coverage_complete = true;          // only asserted by the "all" suite
  std::vector<std::string> missing_ops;

  int failures() const;
  nlohmann::ordered_json to_json() const;
};

const std::vector<std::string>& known_suites();  // gr, flow, u, amp, en, all
const std::vector<std::string>& all_op_names();

/// Runs one module's invariant checks with deterministic seeds. n_en bounds
/// the exhaustive electrical checks (default 5). Cases execute in a worker
/// pool and are merged in case-id order.
VerifyReport run_verify_suite(const std::string& name, uint64_t seed = 0, double tol = 1e-9,
                              int n_en = 5);

}  // namespace tpflow
