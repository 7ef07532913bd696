#pragma once

#include "qfusion/qcore.hpp"

#include <string>
#include <vector>

// Verification suites: every identity the library constructs is re-checked
// and reported with its residual and threshold.  Reports are deterministic:
// identical configuration gives byte-identical output.

namespace qfusion {

struct RunConfig {
    Regime regime = Regime::UnitCircle;
    double gamma = 0.3;
    double q = 1.2;
    double tol = 1e-9;
    double asym_tol = 1e-6;
    int jmax_twice = 8;
    std::vector<double> pgrid = {2.2, 3.0, 3.7, 4.4, 5.1};
    std::string suite = "all";
    // Debug switch: replace the twist by the identity inside the fusion
    // suite; the twist-sensitive checks must then fail.
    bool identity_twist = false;

    QContext context() const;
};

struct CheckResult {
    std::string name;       // identity tag
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct Report {
    std::string suite;
    RunConfig config;
    std::vector<CheckResult> checks;
    std::vector<std::string> errors;  // construction failures, if any

    bool all_pass() const;
};

// suite in {hopf, twisted, model, fusion, asymptotics, all}; throws
// DomainError for an invalid suite/regime combination.
Report run_suite(const RunConfig& cfg);

std::string render_report_json(const Report& rep);
std::string render_report_csv(const Report& rep);

}  // namespace qfusion
