#pragma once

#include <string>
#include <vector>

#include "blocky/report.hpp"

namespace blocky {

struct SuiteCheck {
    std::string instance;
    std::string check;
    bool pass = true;
    std::string detail;
};

struct SuiteSummary {
    std::vector<SuiteCheck> checks;
    int instances = 0;
    bool all_pass() const;
    json to_json() const;
};

/// Runs the per-instance property checks over every .bm file in a corpus
/// directory (with optional matching .lf factorizations). Throws
/// std::invalid_argument when the directory holds no instances.
SuiteSummary run_suite(const std::string& corpus_dir, const ToolConfig& config);

}  // namespace blocky
