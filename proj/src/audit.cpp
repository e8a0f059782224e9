#include "blocky/audit.hpp"

#include <cmath>
#include <sstream>

#include "blocky/structure.hpp"

namespace blocky {

std::vector<std::string> audit_extraction(const BooleanMatrix& a, const ExtractionResult& result,
                                          int td_exact_limit) {
    std::vector<std::string> problems;
    auto complain = [&](size_t step, const std::string& what) {
        std::ostringstream os;
        os << "step " << step << ": " << what;
        problems.push_back(os.str());
    };

    const ExtractionTrace& trace = result.trace;
    double lambda = trace.lambda;
    double lam4 = lambda * lambda * lambda * lambda;

    std::string why;
    if (!result.cover.valid(a.rows(), a.cols(), &why)) problems.push_back("cover invalid: " + why);
    CoverCheck cc = cover_support(a, result.cover);
    if (!cc.subset_ok)
        problems.push_back("cover covers a 0-entry at (" + std::to_string(cc.bad_row + 1) + "," +
                           std::to_string(cc.bad_col + 1) + ")");
    if (cc.support != trace.coverage) problems.push_back("trace coverage disagrees with cover");

    long rect_total = 0;
    for (const auto& s : trace.steps) rect_total += s.rect_size;
    if (rect_total != trace.coverage)
        problems.push_back("sum of per-step rectangle sizes disagrees with coverage");

    if (!trace.steps.empty()) {
        const TraceStep& root = trace.steps[0];
        long bound = 2 * (static_cast<long>(a.rows()) + a.cols() + root.pre_support);
        if (static_cast<long>(trace.steps.size()) > bound)
            problems.push_back("trace has more steps than 2(m+n+F)");
        if (root.subtree_coverage != trace.coverage)
            problems.push_back("root subtree coverage disagrees with total");
    }

    for (size_t i = 0; i < trace.steps.size(); ++i) {
        const TraceStep& s = trace.steps[i];
        switch (s.branch) {
            case Branch::ZeroBase:
                if (s.pre_support != 0) complain(i, "ZeroBase on a nonzero submatrix");
                break;
            case Branch::BlockyBase:
                if (s.subtree_coverage != s.pre_support)
                    complain(i, "BlockyBase coverage below full support");
                break;
            case Branch::Projection: {
                if (s.support_drop < 1) complain(i, "projection dropped no 1-entries");
                if (s.post_support != s.pre_support - s.support_drop)
                    complain(i, "projection support bookkeeping off");
                double drop = s.pre_potential - s.post_potential;
                if (drop < 2.0 * s.support_drop - 1e-9)
                    complain(i, "potential drop below twice the support drop");
                break;
            }
            case Branch::Rect:
            case Branch::TDDrop: {
                long half = (s.delta_support + 1) / 2;
                if (s.retained_ones < half)
                    complain(i, "split retained fewer than half of the Delta x R 1-entries");
                if (s.branch == Branch::Rect && 2 * s.retained_ones <= s.delta_support)
                    complain(i, "Rect branch without strict majority");
                if (s.branch == Branch::Rect && s.rect_size < 1)
                    complain(i, "Rect branch added no rectangle");
                // Complement inequality: what is left after deleting
                // Delta_i x [n] and [m] x R_i.
                int rest = s.branch == Branch::Rect ? s.child_a : s.child_b;
                if (rest >= 0) {
                    double kept = static_cast<double>(trace.steps[rest].pre_support);
                    if (kept < s.pre_support - 10.0 * lam4 * s.delta_support - 1e-9)
                        complain(i, "complement support below F - 10 lambda^4 k");
                }
                if (s.branch == Branch::TDDrop && s.child_a >= 0) {
                    const TraceStep& child = trace.steps[s.child_a];
                    Restriction parent = restrict(a, s.rows, s.cols);
                    Restriction sub = restrict(a, child.rows, child.cols);
                    TdBound tdp = threshold_dimension_bound(parent.matrix, td_exact_limit);
                    TdBound tdc = threshold_dimension_bound(sub.matrix, td_exact_limit);
                    if (tdp.exact && tdc.exact && tdc.upper > tdp.upper - 1)
                        complain(i, "TDDrop child did not lose a threshold dimension");
                }
                break;
            }
        }
        if (s.child_a >= 0 && trace.steps[s.child_a].depth != s.depth + 1)
            complain(i, "child depth mismatch");
    }
    return problems;
}

}  // namespace blocky
