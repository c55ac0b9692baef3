#ifndef ROLLPACK_EXPERIMENTS_HPP
#define ROLLPACK_EXPERIMENTS_HPP

#include <string>
#include <vector>

namespace rollpack {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ExperimentReport {
    std::string experiment;
    std::vector<CheckResult> checks;
    double seconds = 0.0;
    double budget_seconds = 0.0;

    bool pass() const {
        for (const CheckResult& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Paper-reproduction experiments; each declares its expected outcome and
// tolerance up front and returns one check per assertion.
std::vector<std::string> experiment_names();
ExperimentReport run_experiment(const std::string& name, int threads = 0);

}  // namespace rollpack

#endif
