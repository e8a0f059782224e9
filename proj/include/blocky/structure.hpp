#pragma once

#include <optional>
#include <vector>

#include "blocky/factor.hpp"
#include "blocky/matrix.hpp"

namespace blocky {

/// Row/column sequences i_1..i_d, j_1..j_d with A(i_s, j_t) = 1 iff s >= t.
struct Staircase {
    std::vector<int> row_seq;
    std::vector<int> col_seq;
    int depth() const { return static_cast<int>(row_seq.size()); }
    bool check(const BooleanMatrix& a) const;
};

struct ThresholdDim {
    int dim = 0;          // exact value, or best lower bound when !exact
    int upper_bound = 0;  // equals dim when exact
    bool exact = true;
    Staircase witness;  // empty when dim == 0
};

/// Exact threshold dimension via memoized DFS when the deduplicated matrix
/// fits within exact_limit on both sides; otherwise a greedy lower-bound
/// witness plus a deduplication upper bound, flagged inexact.
/// TD of the zero matrix is 0 by convention.
ThresholdDim threshold_dimension(const BooleanMatrix& a, int exact_limit = 24);

struct TdBound {
    int upper = 0;
    bool exact = true;
};

/// Cheap upper bound on the threshold dimension: exact when the
/// deduplicated matrix fits, otherwise min of its dimensions.
TdBound threshold_dimension_bound(const BooleanMatrix& a, int exact_limit = 24);

enum class RectMode { Exact, Greedy };

struct RectangleResult {
    Rectangle rect;
    long size = 0;
};

/// Largest all-1 rectangle. Exact mode branches over subsets of the smaller
/// side; greedy mode peels low-density rows/columns and tries row/column
/// seeds. Requires at least one 1-entry.
RectangleResult max_one_rectangle(const BooleanMatrix& a, RectMode mode);

enum class SplitKind { Rect, TDDrop };

struct SplitOutcome {
    SplitKind kind;
    int pivot_col = -1;     // j = argmin over t in R_i of |C_t meet Delta_i|
    IndexSet row_part;      // C_j meet Delta_i (Rect) or Delta_i minus C_j (TDDrop)
    long retained_ones = 0; // support of A restricted to row_part x R_i
    long delta_support = 0; // support of A restricted to Delta_i x R_i
    IndexSet delta;         // Delta_i, for callers assembling the recursion
    IndexSet pivot_row_nbhd;
};

/// The two-way case split at a pivotal row i. Precondition (checked):
/// |A_{Delta_i x [n]}|^2 / (4 lambda^2) <= |A_{[m] x R_i}|^2
///   <= 2 lambda^2 |A_{Delta_i x R_i}|^2, and R_i nonempty.
SplitOutcome lemma_split(const BooleanMatrix& a, const Factorization& f, int i);

}  // namespace blocky
