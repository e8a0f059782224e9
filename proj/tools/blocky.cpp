#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "blocky/audit.hpp"
#include "blocky/extract.hpp"
#include "blocky/families.hpp"
#include "blocky/gamma2.hpp"
#include "blocky/report.hpp"
#include "blocky/structure.hpp"
#include "blocky/suite.hpp"

namespace {

using namespace blocky;

// Exit codes: 0 ok, 1 input/validation error, 2 internal assertion
// (a guaranteed inequality failed, always a bug), 3 suite failure.
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;
constexpr int kExitSuite = 3;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

BooleanMatrix load_bm(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return parse_bm(in);
}

Factorization load_lf(const std::string& path, double tol) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Factorization f = parse_lf(in);
    f.tol = tol;
    return f;
}

void write_text(const std::string& path, const std::string& contents) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << contents;
}

void emit(const json& report, const std::string& out_path) {
    std::string text = report.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text(out_path, text);
}

struct Common {
    std::string config_path;
    std::string report_path;

    ToolConfig config() const {
        if (config_path.empty()) return {};
        std::ifstream in(config_path);
        if (!in) throw std::invalid_argument("cannot open config " + config_path);
        json j;
        in >> j;
        return ToolConfig::from_json(j);
    }
};

int run(int argc, char** argv) {
    CLI::App app{"Blocky cover extraction from boolean matrices with bounded gamma_2 norm"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--config", common.config_path, "JSON config file overriding defaults");
    app.add_option("--report", common.report_path, "write the JSON report here instead of stdout");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a test-family instance");
    FamilySpec spec;
    std::string out_prefix;
    gen->add_option("--family", spec.name, "family name")->required();
    gen->add_option("--m", spec.m, "rows");
    gen->add_option("--n", spec.n, "columns");
    gen->add_option("--k", spec.k, "group dimension (group_lift_random)");
    gen->add_option("--d", spec.d, "staircase depth (staircase_pattern)");
    gen->add_option("--density", spec.density, "1-density (group_lift_random)");
    gen->add_option("--seed", spec.seed, "seed");
    gen->add_option("--out", out_prefix, "output prefix (.bm/.lf/.truth.json)")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "structural report for a matrix");
    std::string analyze_in;
    analyze->add_option("matrix", analyze_in, ".bm file")->required();

    // factorize
    auto* factorize = app.add_subcommand("factorize", "search for a lambda-factorization (ALS)");
    std::string fz_in, fz_out;
    double fz_lambda = 1.0;
    uint64_t fz_seed = 0;
    factorize->add_option("matrix", fz_in, ".bm file")->required();
    factorize->add_option("--lambda", fz_lambda, "target lambda")->required();
    factorize->add_option("--seed", fz_seed, "seed");
    factorize->add_option("--out", fz_out, "output .lf path")->required();

    // extract
    auto* extract = app.add_subcommand("extract", "extract a blocky cover");
    std::string ex_in, ex_lf, ex_cover, ex_trace;
    double ex_als_lambda = 0.0;
    uint64_t ex_seed = 0;
    extract->add_option("matrix", ex_in, ".bm file")->required();
    extract->add_option("--factor", ex_lf, ".lf factorization file");
    extract->add_option("--als", ex_als_lambda, "search a factorization with this lambda instead");
    extract->add_option("--seed", ex_seed, "ALS seed");
    extract->add_option("--cover", ex_cover, "write the cover JSON here");
    extract->add_option("--trace", ex_trace, "write the trace JSON here");

    // rect
    auto* rect = app.add_subcommand("rect", "pick the corollary 1-rectangle from a cover");
    std::string rc_in, rc_cover;
    rect->add_option("matrix", rc_in, ".bm file")->required();
    rect->add_option("--cover", rc_cover, "cover JSON file")->required();

    // gamma
    auto* gamma = app.add_subcommand("gamma", "Fourier algebra norm / half-graph bound");
    std::string gm_fn, gm_lift;
    int gm_halfgraph = 0;
    gamma->add_option("--function", gm_fn, "group function file");
    gamma->add_option("--halfgraph", gm_halfgraph, "half-graph size n");
    gamma->add_option("--lift", gm_lift, "also emit the group lift under this prefix");

    // suite
    auto* suite = app.add_subcommand("suite", "run the property suite over a corpus directory");
    std::string suite_dir;
    suite->add_option("corpus", suite_dir, "directory of .bm (+ optional .lf) files")->required();

    CLI11_PARSE(app, argc, argv);
    ToolConfig config = common.config();
    auto start = std::chrono::steady_clock::now();

    if (gen->parsed()) {
        FamilyInstance inst = generate(spec);
        {
            std::ostringstream os;
            write_bm(os, inst.matrix);
            write_text(out_prefix + ".bm", os.str());
        }
        if (inst.factor) {
            std::ostringstream os;
            write_lf(os, *inst.factor);
            write_text(out_prefix + ".lf", os.str());
        }
        json truth;
        if (inst.truth.gamma2_exact) truth["gamma2_exact"] = *inst.truth.gamma2_exact;
        if (inst.truth.gamma2_upper) truth["gamma2_upper"] = *inst.truth.gamma2_upper;
        if (inst.truth.gamma2_lower) truth["gamma2_lower"] = *inst.truth.gamma2_lower;
        if (inst.truth.td) truth["td"] = *inst.truth.td;
        truth["family"] = spec.name;
        truth["seed"] = spec.seed;
        truth["rng"] = "mt19937_64";
        write_text(out_prefix + ".truth.json", truth.dump(2) + "\n");
        json results = {{"rows", inst.matrix.rows()},
                        {"cols", inst.matrix.cols()},
                        {"support", inst.matrix.support_size()},
                        {"factorization", inst.factor.has_value()}};
        emit(make_report("gen", spec.name, results, config, elapsed_ms(start)),
             common.report_path);
        return 0;
    }

    if (analyze->parsed()) {
        BooleanMatrix a = load_bm(analyze_in);
        long support = a.support_size();
        json results = {{"rows", a.rows()},
                        {"cols", a.cols()},
                        {"support", support},
                        {"density", a.rows() && a.cols()
                                        ? static_cast<double>(support) / (a.rows() * a.cols())
                                        : 0.0}};
        auto cover = is_blocky(a);
        results["blocky"] = cover.has_value();
        if (cover) results["canonical_cover"] = cover_to_json(*cover);
        ThresholdDim td = threshold_dimension(a, config.td_exact_limit);
        results["td"] = td.dim;
        results["td_exact"] = td.exact;
        if (!td.exact) results["td_upper_bound"] = td.upper_bound;
        if (support > 0) {
            RectMode mode = std::min(a.rows(), a.cols()) <= config.rect_exact_limit
                                ? RectMode::Exact
                                : RectMode::Greedy;
            RectangleResult r = max_one_rectangle(a, mode);
            results["max_one_rectangle"] = rectangle_to_json(r.rect);
            results["max_one_rectangle_size"] = r.size;
            results["max_one_rectangle_mode"] = mode == RectMode::Exact ? "exact" : "greedy";
        }
        emit(make_report("analyze", analyze_in, results, config, elapsed_ms(start)),
             common.report_path);
        return 0;
    }

    if (factorize->parsed()) {
        BooleanMatrix a = load_bm(fz_in);
        AlsOptions opts{fz_seed, config.als_max_iters, config.als_restarts, config.als_tol};
        AlsResult als = als_factorize(a, fz_lambda, opts);
        json results = {{"lambda_target", fz_lambda},
                        {"success", als.factor.has_value()},
                        {"best_error", als.best_error},
                        {"restart_used", als.restart_used},
                        {"iters_used", als.iters_used}};
        emit(make_report("factorize", fz_in, results, config, elapsed_ms(start)),
             common.report_path);
        if (!als.factor) {
            std::cerr << "factorize: no lambda=" << fz_lambda
                      << " factorization found (best error " << als.best_error << ")\n";
            return kExitInput;
        }
        std::ostringstream os;
        write_lf(os, *als.factor);
        write_text(fz_out, os.str());
        return 0;
    }

    if (extract->parsed()) {
        BooleanMatrix a = load_bm(ex_in);
        Factorization f;
        if (!ex_lf.empty()) {
            f = load_lf(ex_lf, config.tol);
        } else if (ex_als_lambda > 0.0) {
            AlsOptions opts{ex_seed, config.als_max_iters, config.als_restarts, config.als_tol};
            AlsResult als = als_factorize(a, ex_als_lambda, opts);
            if (!als.factor) {
                std::cerr << "extract: ALS failed at lambda=" << ex_als_lambda << " (best error "
                          << als.best_error << ")\n";
                return kExitInput;
            }
            f = std::move(*als.factor);
        } else {
            throw std::invalid_argument("extract requires --factor or --als");
        }
        ExtractionResult result = extract_blocky(a, f, config.extract_config());
        long support = a.support_size();
        double fraction =
            support > 0 ? static_cast<double>(result.trace.coverage) / support : 1.0;
        json results = {{"support", support},
                        {"coverage", result.trace.coverage},
                        {"coverage_fraction", fraction},
                        {"blocks", result.cover.blocks.size()},
                        {"steps", result.trace.steps.size()}};
        if (!ex_cover.empty()) write_text(ex_cover, cover_to_json(result.cover).dump(2) + "\n");
        if (!ex_trace.empty())
            write_text(ex_trace, trace_to_json(result.trace).dump(2) + "\n");
        emit(make_report("extract", ex_in, results, config, elapsed_ms(start)),
             common.report_path);
        std::cout << "coverage fraction: " << fraction << "\n";
        return 0;
    }

    if (rect->parsed()) {
        BooleanMatrix a = load_bm(rc_in);
        std::ifstream in(rc_cover);
        if (!in) throw std::invalid_argument("cannot open " + rc_cover);
        json j;
        in >> j;
        BlockyCover cover = cover_from_json(j);
        std::string why;
        if (!cover.valid(a.rows(), a.cols(), &why))
            throw std::invalid_argument("invalid cover: " + why);
        CoverCheck cc = cover_support(a, cover);
        if (!cc.subset_ok)
            throw std::invalid_argument("cover covers a 0-entry at (" +
                                        std::to_string(cc.bad_row + 1) + "," +
                                        std::to_string(cc.bad_col + 1) + ")");
        CorollaryRectangle cr = corollary_rectangle(a, cover);
        json results = {{"block", rectangle_to_json(cr.block)},
                        {"s", cr.s},
                        {"t", cr.t},
                        {"coverage", cr.coverage},
                        {"block_index", cr.block_index},
                        {"s_bound_num", cr.coverage},
                        {"s_bound_den", 2L * a.cols()},
                        {"t_bound_num", cr.coverage},
                        {"t_bound_den", 2L * a.rows()}};
        emit(make_report("rect", rc_in, results, config, elapsed_ms(start)), common.report_path);
        return 0;
    }

    if (gamma->parsed()) {
        json results;
        std::string input;
        if (gm_halfgraph > 0) {
            input = "halfgraph:" + std::to_string(gm_halfgraph);
            double value = halfgraph_lower_bound(gm_halfgraph);
            results = {{"n", gm_halfgraph},
                       {"gamma2_wraparound", value},
                       {"halfgraph_gamma2_lower", value - 1.0}};
            std::cout << value << "\n";
        } else if (!gm_fn.empty()) {
            input = gm_fn;
            std::ifstream in(gm_fn);
            if (!in) throw std::invalid_argument("cannot open " + gm_fn);
            GroupFunction f = parse_group_function(in);
            double norm = walsh_algebra_norm(f);
            results = {{"k", f.k}, {"algebra_norm", norm}};
            if (!gm_lift.empty()) {
                GroupLift lift = group_lift(f);
                std::ostringstream bm, lf;
                write_bm(bm, lift.matrix);
                write_lf(lf, lift.factor);
                write_text(gm_lift + ".bm", bm.str());
                write_text(gm_lift + ".lf", lf.str());
                results["lift_prefix"] = gm_lift;
                results["lift_lambda"] = lift.factor.lambda;
            }
            std::cout << norm << "\n";
        } else {
            throw std::invalid_argument("gamma requires --function or --halfgraph");
        }
        emit(make_report("gamma", input, results, config, elapsed_ms(start)), common.report_path);
        return 0;
    }

    if (suite->parsed()) {
        SuiteSummary summary = run_suite(suite_dir, config);
        emit(make_report("suite", suite_dir, summary.to_json(), config, elapsed_ms(start)),
             common.report_path);
        for (const auto& c : summary.checks)
            if (!c.pass)
                std::cerr << "FAIL " << c.instance << " " << c.check
                          << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
        if (!summary.all_pass()) return kExitSuite;
        std::cout << summary.instances << " instances, all checks passed\n";
        return 0;
    }

    return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const blocky::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::logic_error& e) {
        std::cerr << "internal assertion: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
