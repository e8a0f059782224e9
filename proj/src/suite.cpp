#include "blocky/suite.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "blocky/audit.hpp"
#include "blocky/factor.hpp"

namespace blocky {

namespace fs = std::filesystem;

bool SuiteSummary::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.pass; });
}

json SuiteSummary::to_json() const {
    json out = {{"schema", "suite-summary/1"}, {"instances", instances}, {"checks", json::array()}};
    int failures = 0;
    for (const auto& c : checks) {
        if (!c.pass) ++failures;
        out["checks"].push_back(
            {{"instance", c.instance}, {"check", c.check}, {"pass", c.pass}, {"detail", c.detail}});
    }
    out["failures"] = failures;
    out["pass"] = failures == 0;
    return out;
}

namespace {

void check_instance(const std::string& name, const BooleanMatrix& a, const Factorization& f,
                    const ToolConfig& config, SuiteSummary& out) {
    auto add = [&](const std::string& check, bool pass, const std::string& detail = "") {
        out.checks.push_back({name, check, pass, detail});
    };

    auto violations = verify(a, f);
    if (!violations.empty()) {
        add("verify", false, violations.front().describe());
        return;  // the remaining checks presume a valid factorization
    }
    add("verify", true);

    long support = a.support_size();
    double lam2 = f.lambda * f.lambda;
    PotentialReport pot = potential(a, f);
    add("potential-bounds",
        pot.value >= support / lam2 - 1e-9 && pot.value <= support + 1e-9,
        "Pi=" + std::to_string(pot.value));

    InnerProductSums sums = inner_product_sums(f, a);
    bool ip_sums_ok = true;
    for (int i = 0; i < a.rows() && ip_sums_ok; ++i) {
        double r = static_cast<double>(a.row_count_ones(i));
        if (sums.row_sums[i] < r * r - 1e-9 || sums.row_sums[i] > lam2 * lam2 * r * r + 1e-9)
            ip_sums_ok = false;
    }
    bool pair_count_ok = true;
    for (int j = 0; j < a.cols() && (ip_sums_ok || pair_count_ok); ++j) {
        double c = static_cast<double>(a.col_nbhd(j).size());
        if (sums.col_sums[j] < c * c / (lam2 * lam2) - 1e-9 || sums.col_sums[j] > c * c + 1e-9)
            ip_sums_ok = false;
        if (large_pair_count(f, a, j) < c * c / (2.0 * lam2) - 1e-9) pair_count_ok = false;
    }
    add("inner-product-sums", ip_sums_ok);
    add("large-pair-count", pair_count_ok);

    if (support > 0) {
        bool piv_ok = true;
        std::string piv_detail;
        try {
            pivotal_row(a, f);
        } catch (const std::exception& e) {
            piv_ok = false;
            piv_detail = e.what();
        }
        add("pivotal-row", piv_ok, piv_detail);
    }

    ExtractionResult result = extract_blocky(a, f, config.extract_config());
    auto problems = audit_extraction(a, result, config.td_exact_limit);
    add("extraction-audit", problems.empty(), problems.empty() ? "" : problems.front());
    add("coverage-positive", support == 0 || result.trace.coverage > 0,
        "coverage=" + std::to_string(result.trace.coverage));
    if (is_blocky(a))
        add("blocky-full-coverage", result.trace.coverage == support);
    LedgerAudit ledger = guarantee_ledger(result.trace);
    add("ledger", ledger.ok(),
        ledger.flags.empty() ? ledger.detail
                             : "coverage below bound at step " +
                                   std::to_string(ledger.flags.front().step));
    if (result.trace.coverage > 0) {
        bool cor_ok = true;
        std::string detail;
        try {
            CorollaryRectangle cr = corollary_rectangle(a, result.cover);
            long cov = cr.coverage;
            cor_ok = 2 * a.cols() * cr.s >= cov && 2 * a.rows() * cr.t >= cov;
        } catch (const std::exception& e) {
            cor_ok = false;
            detail = e.what();
        }
        add("corollary-rectangle", cor_ok, detail);
    }
}

}  // namespace

SuiteSummary run_suite(const std::string& corpus_dir, const ToolConfig& config) {
    if (!fs::is_directory(corpus_dir))
        throw std::invalid_argument("corpus directory not found: " + corpus_dir);
    std::vector<fs::path> inputs;
    for (const auto& entry : fs::directory_iterator(corpus_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".bm")
            inputs.push_back(entry.path());
    std::sort(inputs.begin(), inputs.end());
    if (inputs.empty()) throw std::invalid_argument("no instances in " + corpus_dir);

    SuiteSummary out;
    for (const auto& path : inputs) {
        ++out.instances;
        std::string name = path.stem().string();
        std::ifstream in(path);
        BooleanMatrix a;
        try {
            a = parse_bm(in);
        } catch (const std::exception& e) {
            out.checks.push_back({name, "parse", false, e.what()});
            continue;
        }
        fs::path lf = path;
        lf.replace_extension(".lf");
        if (!fs::exists(lf)) {
            out.checks.push_back({name, "parse", true, "matrix only, no factorization"});
            continue;
        }
        Factorization f;
        try {
            std::ifstream fin(lf);
            f = parse_lf(fin);
            f.tol = config.tol;
        } catch (const std::exception& e) {
            out.checks.push_back({name, "parse-factorization", false, e.what()});
            continue;
        }
        try {
            check_instance(name, a, f, config, out);
        } catch (const std::exception& e) {
            out.checks.push_back({name, "instance", false, e.what()});
        }
    }
    return out;
}

}  // namespace blocky
