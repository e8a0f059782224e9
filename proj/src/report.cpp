#include "blocky/report.hpp"

namespace blocky {

namespace {

json one_based(const IndexSet& s) {
    json out = json::array();
    for (int i : s) out.push_back(i + 1);
    return out;
}

IndexSet zero_based(const json& j) {
    IndexSet out;
    for (const auto& v : j) {
        long x = v.get<long>();
        if (x < 1) throw std::invalid_argument("index must be >= 1 in cover JSON");
        out.push_back(static_cast<int>(x - 1));
    }
    return out;
}

}  // namespace

json ToolConfig::to_json() const {
    return {{"tol", tol},
            {"ledger_constant", ledger_constant},
            {"rect_exact_limit", rect_exact_limit},
            {"td_exact_limit", td_exact_limit},
            {"als_max_iters", als_max_iters},
            {"als_restarts", als_restarts},
            {"als_tol", als_tol}};
}

ToolConfig ToolConfig::from_json(const json& j) {
    ToolConfig c;
    if (j.contains("tol")) c.tol = j["tol"].get<double>();
    if (j.contains("ledger_constant")) c.ledger_constant = j["ledger_constant"].get<double>();
    if (j.contains("rect_exact_limit")) c.rect_exact_limit = j["rect_exact_limit"].get<int>();
    if (j.contains("td_exact_limit")) c.td_exact_limit = j["td_exact_limit"].get<int>();
    if (j.contains("als_max_iters")) c.als_max_iters = j["als_max_iters"].get<int>();
    if (j.contains("als_restarts")) c.als_restarts = j["als_restarts"].get<int>();
    if (j.contains("als_tol")) c.als_tol = j["als_tol"].get<double>();
    return c;
}

json rectangle_to_json(const Rectangle& r) {
    return {{"rows", one_based(r.row_set)}, {"cols", one_based(r.col_set)}};
}

json cover_to_json(const BlockyCover& cover) {
    json blocks = json::array();
    for (const auto& b : cover.blocks) blocks.push_back(rectangle_to_json(b));
    return {{"schema", "blocky-cover/1"},
            {"blocks", blocks},
            {"support", cover.support_size()}};
}

BlockyCover cover_from_json(const json& j) {
    if (!j.contains("blocks")) throw std::invalid_argument("cover JSON missing \"blocks\"");
    BlockyCover cover;
    for (const auto& b : j["blocks"])
        cover.blocks.push_back({zero_based(b.at("rows")), zero_based(b.at("cols"))});
    return cover;
}

json trace_to_json(const ExtractionTrace& trace) {
    json steps = json::array();
    for (const auto& s : trace.steps) {
        json step = {{"branch", branch_name(s.branch)},
                     {"depth", s.depth},
                     {"rows", one_based(s.rows)},
                     {"cols", one_based(s.cols)},
                     {"pre_support", s.pre_support},
                     {"pre_potential", s.pre_potential},
                     {"td_bound", s.td_bound},
                     {"td_exact", s.td_exact},
                     {"ledger", s.ledger},
                     {"subtree_coverage", s.subtree_coverage}};
        if (s.branch == Branch::Projection) {
            step["pivot_row"] = s.pivot_row + 1;
            step["support_drop"] = s.support_drop;
            step["post_support"] = s.post_support;
            step["post_potential"] = s.post_potential;
        }
        if (s.branch == Branch::Rect || s.branch == Branch::TDDrop) {
            step["pivot_row"] = s.pivot_row + 1;
            step["pivot_col"] = s.pivot_col + 1;
            step["delta_support"] = s.delta_support;
            step["retained_ones"] = s.retained_ones;
        }
        if (s.rect_size > 0) step["rect_size"] = s.rect_size;
        if (s.child_a >= 0) step["child_a"] = s.child_a;
        if (s.child_b >= 0) step["child_b"] = s.child_b;
        steps.push_back(std::move(step));
    }
    return {{"schema", "extraction-trace/1"},
            {"lambda", trace.lambda},
            {"coverage", trace.coverage},
            {"ledger_constant", trace.config.ledger_constant},
            {"steps", steps}};
}

json make_report(const std::string& command, const std::string& input, const json& results,
                 const ToolConfig& config, double elapsed_ms) {
    return {{"schema", "report/1"},
            {"tool_version", kToolVersion},
            {"command", command},
            {"input", input},
            {"results", results},
            {"config", config.to_json()},
            {"timing_ms", elapsed_ms}};
}

}  // namespace blocky
