#pragma once

#include <map>
#include <string>
#include <vector>

namespace dosc::checks {

// One verification suite outcome.  `measured` is the worst observed value of
// the quantity the suite bounds; `detail` carries deterministic extras (the
// check report must be byte-identical across runs, so no timings here).
struct CheckResult {
    std::string id;
    std::string summary;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
    std::string detail;
};

struct CheckOptions {
    int grid_n = 2048;
    double grid_xmax = 40.0;
    int coherent_nmax = 200;
    int rep_dim = 256;
    std::uint64_t seed = 0x5eed5011dULL;
    std::map<std::string, double> tol_override;  // id -> bound
};

/// Suite ids in canonical (execution and report) order.
const std::vector<std::string>& suite_names();

/// Runs one suite by id; throws std::invalid_argument for unknown ids.
CheckResult run_check(const std::string& id, const CheckOptions& opt);

std::vector<CheckResult> run_suite(const std::vector<std::string>& ids, const CheckOptions& opt);

/// Deterministic text report: one line per check, measured value beside its
/// bound, followed by detail lines.
std::string render_report(const std::vector<CheckResult>& results);

bool all_pass(const std::vector<CheckResult>& results);

} // namespace dosc::checks
