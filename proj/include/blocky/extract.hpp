#pragma once

#include <string>
#include <vector>

#include "blocky/factor.hpp"
#include "blocky/matrix.hpp"
#include "blocky/structure.hpp"

namespace blocky {

enum class Branch { ZeroBase, BlockyBase, Projection, Rect, TDDrop };

const char* branch_name(Branch b);

struct ExtractConfig {
    double ledger_constant = 0.1;  // C in the ledger denominator; see ToolConfig
    int rect_exact_limit = 20;     // exact rectangle search when a side fits
    int td_exact_limit = 24;
    int max_depth = 100000;
};

struct TraceStep {
    Branch branch;
    int depth = 0;
    IndexSet rows, cols;  // current submatrix, original coordinates
    long pre_support = 0;
    double pre_potential = 0.0;
    long post_support = 0;       // Projection only
    double post_potential = 0.0; // Projection only
    long support_drop = 0;       // eta, Projection only
    int pivot_row = -1;          // original coordinates
    int pivot_col = -1;          // original coordinates, branch (2) only
    int td_bound = 0;            // upper bound on TD of the current submatrix
    bool td_exact = false;
    long rect_size = 0;          // 1-entries added to the cover at this step
    long subtree_coverage = 0;
    double ledger = 0.0;         // (F - Pi/2) / (C * (40 lambda^4)^d)
    long delta_support = 0;      // branch (2): |A_{Delta_i x R_i}|_F^2
    long retained_ones = 0;      // branch (2)
    int child_a = -1, child_b = -1;  // indices into ExtractionTrace::steps
};

struct ExtractionTrace {
    std::vector<TraceStep> steps;  // step 0 is the root
    double lambda = 0.0;
    long coverage = 0;
    ExtractConfig config;
};

struct ExtractionResult {
    BlockyCover cover;
    ExtractionTrace trace;
};

/// The main recursion: peel columns while the potential pays for them,
/// otherwise split at a pivotal row into a dense rectangle or a submatrix
/// of smaller threshold dimension. Requires verify(a, f) to pass.
ExtractionResult extract_blocky(const BooleanMatrix& a, const Factorization& f,
                                const ExtractConfig& config = {});

struct LedgerFlag {
    int step = -1;
    long coverage = 0;
    double bound = 0.0;
};

struct LedgerAudit {
    std::vector<LedgerFlag> flags;  // steps whose subtree coverage fell below the bound
    bool base_cases_ok = true;      // coverage == F on Zero/Blocky bases, 1 on single-1
    std::string detail;
    bool ok() const { return flags.empty() && base_cases_ok; }
};

/// Re-derives the inductive bound bottom-up with the configured constant.
LedgerAudit guarantee_ledger(const ExtractionTrace& trace);

struct CorollaryRectangle {
    Rectangle block;
    long s = 0, t = 0;       // block dimensions
    long coverage = 0;       // c' F
    int block_index = -1;
};

/// Smallest-index block of the cover with 2n|S_i| >= coverage and
/// 2m|T_i| >= coverage; existence follows from a counting argument.
/// Pure integer arithmetic. Requires a valid cover with coverage > 0.
CorollaryRectangle corollary_rectangle(const BooleanMatrix& a, const BlockyCover& cover);

}  // namespace blocky
