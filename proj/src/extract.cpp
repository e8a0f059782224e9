#include "blocky/extract.hpp"

#include <cmath>
#include <sstream>

namespace blocky {

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::ZeroBase: return "ZeroBase";
        case Branch::BlockyBase: return "BlockyBase";
        case Branch::Projection: return "Projection";
        case Branch::Rect: return "Rect";
        case Branch::TDDrop: return "TDDrop";
    }
    return "?";
}

namespace {

IndexSet map_indices(const IndexSet& local, const IndexSet& to_parent) {
    IndexSet out;
    out.reserve(local.size());
    for (int i : local) out.push_back(to_parent[i]);
    return out;
}

class Extractor {
public:
    Extractor(double lambda, const ExtractConfig& cfg) : cfg_(cfg) {
        trace_.lambda = lambda;
        trace_.config = cfg;
    }

    // a is the current submatrix; rows/cols map its indices to the original.
    int recurse(const BooleanMatrix& a, const Factorization& f, const IndexSet& rows,
                const IndexSet& cols, int depth) {
        if (depth > cfg_.max_depth) throw std::logic_error("extraction recursion too deep");
        int idx = static_cast<int>(trace_.steps.size());
        trace_.steps.emplace_back();
        long support = a.support_size();
        {
            TraceStep& step = trace_.steps[idx];
            step.depth = depth;
            step.rows = rows;
            step.cols = cols;
            step.pre_support = support;
            step.pre_potential = potential(a, f).value;
            TdBound td = threshold_dimension_bound(a, cfg_.td_exact_limit);
            step.td_bound = td.upper;
            step.td_exact = td.exact;
            double denom =
                cfg_.ledger_constant *
                std::pow(40.0 * std::pow(f.lambda, 4.0), static_cast<double>(step.td_bound));
            step.ledger = std::isfinite(denom) && denom > 0.0
                              ? std::max(0.0, (support - step.pre_potential / 2.0) / denom)
                              : 0.0;
        }

        if (support == 0) {
            trace_.steps[idx].branch = Branch::ZeroBase;
            return idx;
        }
        if (auto blocky = is_blocky(a)) {
            for (const auto& block : blocky->blocks)
                cover_.blocks.push_back({map_indices(block.row_set, rows),
                                         map_indices(block.col_set, cols)});
            TraceStep& step = trace_.steps[idx];
            step.branch = Branch::BlockyBase;
            step.rect_size = support;
            step.subtree_coverage = support;
            return idx;
        }

        // Branch (1): a row whose Delta-mass dominates its column mass pays
        // for deleting the columns R_i outright.
        double lam2 = f.lambda * f.lambda;
        IndexSet all_rows = full_index_set(a.rows());
        for (int i = 0; i < a.rows(); ++i) {
            IndexSet ri = a.row_nbhd(i);
            if (ri.empty()) continue;
            IndexSet di = delta_set(f, i);
            double mass_delta_all =
                static_cast<double>(a.support_in(di, full_index_set(a.cols())));
            double mass_cols = static_cast<double>(a.support_in(all_rows, ri));
            if (mass_delta_all > 4.0 * lam2 * mass_cols + f.tol) {
                ProjectionResult pr = project_columns(a, f, i);
                int child = recurse(pr.matrix, pr.factor, rows, map_indices(pr.col_map, cols),
                                    depth + 1);
                TraceStep& step = trace_.steps[idx];
                step.branch = Branch::Projection;
                step.pivot_row = rows[i];
                step.support_drop = pr.support_drop;
                step.post_support = step.pre_support - pr.support_drop;
                step.post_potential = trace_.steps[child].pre_potential;
                step.child_a = child;
                step.subtree_coverage = trace_.steps[child].subtree_coverage;
                return idx;
            }
        }

        // Branch (2): pivotal row plus the two-way case split.
        PivotalRow piv = pivotal_row(a, f);
        SplitOutcome split = [&] {
            try {
                return lemma_split(a, f, piv.row);
            } catch (const std::invalid_argument& e) {
                // Branch (1) failing for every row guarantees the sandwich
                // condition at the pivotal row; reaching here is a bug.
                throw std::logic_error(std::string("internal assertion: ") + e.what());
            }
        }();
        IndexSet rest_rows = complement(split.delta, a.rows());
        IndexSet rest_cols = complement(split.pivot_row_nbhd, a.cols());
        Restriction rest = restrict(a, rest_rows, rest_cols);
        Factorization rest_f = restrict_factorization(f, rest_rows, rest_cols);

        if (split.kind == SplitKind::Rect) {
            Restriction dense = restrict(a, split.row_part, split.pivot_row_nbhd);
            RectMode mode = std::min(dense.matrix.rows(), dense.matrix.cols()) <=
                                    cfg_.rect_exact_limit
                                ? RectMode::Exact
                                : RectMode::Greedy;
            RectangleResult rect = max_one_rectangle(dense.matrix, mode);
            cover_.blocks.push_back(
                {map_indices(map_indices(rect.rect.row_set, dense.row_map), rows),
                 map_indices(map_indices(rect.rect.col_set, dense.col_map), cols)});
            int child = recurse(rest.matrix, rest_f, map_indices(rest_rows, rows),
                                map_indices(rest_cols, cols), depth + 1);
            TraceStep& step = trace_.steps[idx];
            step.branch = Branch::Rect;
            step.pivot_row = rows[piv.row];
            step.pivot_col = cols[split.pivot_col];
            step.delta_support = split.delta_support;
            step.retained_ones = split.retained_ones;
            step.rect_size = rect.size;
            step.child_a = child;
            step.subtree_coverage = rect.size + trace_.steps[child].subtree_coverage;
            return idx;
        }

        Restriction drop = restrict(a, split.row_part, split.pivot_row_nbhd);
        Factorization drop_f = restrict_factorization(f, split.row_part, split.pivot_row_nbhd);
        int child_a = recurse(drop.matrix, drop_f, map_indices(split.row_part, rows),
                              map_indices(split.pivot_row_nbhd, cols), depth + 1);
        int child_b = recurse(rest.matrix, rest_f, map_indices(rest_rows, rows),
                              map_indices(rest_cols, cols), depth + 1);
        TraceStep& step = trace_.steps[idx];
        step.branch = Branch::TDDrop;
        step.pivot_row = rows[piv.row];
        step.pivot_col = cols[split.pivot_col];
        step.delta_support = split.delta_support;
        step.retained_ones = split.retained_ones;
        step.child_a = child_a;
        step.child_b = child_b;
        step.subtree_coverage =
            trace_.steps[child_a].subtree_coverage + trace_.steps[child_b].subtree_coverage;
        return idx;
    }

    ExtractionResult finish() {
        trace_.coverage = cover_.support_size();
        return {std::move(cover_), std::move(trace_)};
    }

private:
    ExtractConfig cfg_;
    ExtractionTrace trace_;
    BlockyCover cover_;
};

}  // namespace

ExtractionResult extract_blocky(const BooleanMatrix& a, const Factorization& f,
                                const ExtractConfig& config) {
    auto violations = verify(a, f);
    if (!violations.empty())
        throw std::invalid_argument("invalid factorization: " + violations.front().describe());
    Extractor ex(f.lambda, config);
    ex.recurse(a, f, full_index_set(a.rows()), full_index_set(a.cols()), 0);
    return ex.finish();
}

LedgerAudit guarantee_ledger(const ExtractionTrace& trace) {
    LedgerAudit audit;
    std::ostringstream detail;
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        const TraceStep& step = trace.steps[i];
        if (step.subtree_coverage + 1e-9 < step.ledger)
            audit.flags.push_back({static_cast<int>(i), step.subtree_coverage, step.ledger});
        bool base_ok = true;
        if (step.branch == Branch::ZeroBase)
            base_ok = step.pre_support == 0 && step.subtree_coverage == 0;
        else if (step.branch == Branch::BlockyBase)
            base_ok = step.subtree_coverage == step.pre_support;
        else if (step.pre_support == 1)
            base_ok = step.subtree_coverage == 1;
        if (!base_ok) {
            audit.base_cases_ok = false;
            detail << "base case mismatch at step " << i << " (" << branch_name(step.branch)
                   << ", F=" << step.pre_support << ", coverage=" << step.subtree_coverage
                   << "); ";
        }
    }
    audit.detail = detail.str();
    return audit;
}

CorollaryRectangle corollary_rectangle(const BooleanMatrix& a, const BlockyCover& cover) {
    std::string why;
    if (!cover.valid(a.rows(), a.cols(), &why))
        throw std::invalid_argument("invalid cover: " + why);
    long coverage = cover.support_size();
    if (coverage <= 0) throw std::invalid_argument("cover has empty support");
    long m = a.rows(), n = a.cols();
    for (size_t k = 0; k < cover.blocks.size(); ++k) {
        long s = static_cast<long>(cover.blocks[k].row_set.size());
        long t = static_cast<long>(cover.blocks[k].col_set.size());
        // Survives iff |S_k| >= coverage/(2n) and |T_k| >= coverage/(2m).
        if (2 * n * s >= coverage && 2 * m * t >= coverage) {
            CorollaryRectangle out;
            out.block = cover.blocks[k];
            out.s = s;
            out.t = t;
            out.coverage = coverage;
            out.block_index = static_cast<int>(k);
            return out;
        }
    }
    throw std::logic_error("no block survives the corollary thresholds; cover is inconsistent");
}

}  // namespace blocky
