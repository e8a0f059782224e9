#pragma once

#include <json.hpp>
#include <string>

#include "blocky/extract.hpp"
#include "blocky/matrix.hpp"

namespace blocky {

using json = nlohmann::json;

/// All tunables in one place; reports embed a copy. Indices in emitted JSON
/// are 1-based.
struct ToolConfig {
    double tol = kDefaultTol;
    // C0, calibrated on the seeded desk corpus: the tightest step observed
    // needs C >= 1/80 (a lambda=1 blocky base at depth 1), so 0.1 leaves an
    // 8x margin while keeping the audit meaningful.
    double ledger_constant = 0.1;
    int rect_exact_limit = 20;
    int td_exact_limit = 24;
    int als_max_iters = 2000;
    int als_restarts = 8;
    double als_tol = 1e-7;

    json to_json() const;
    static ToolConfig from_json(const json& j);
    ExtractConfig extract_config() const {
        return {ledger_constant, rect_exact_limit, td_exact_limit};
    }
};

json cover_to_json(const BlockyCover& cover);
BlockyCover cover_from_json(const json& j);

json trace_to_json(const ExtractionTrace& trace);

json rectangle_to_json(const Rectangle& r);

/// Report envelope shared by all subcommands; results is command-specific.
json make_report(const std::string& command, const std::string& input, const json& results,
                 const ToolConfig& config, double elapsed_ms);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace blocky
