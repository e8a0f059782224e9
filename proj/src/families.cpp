#include "blocky/families.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blocky/gamma2.hpp"

namespace blocky {

BooleanMatrix half_graph(int n) {
    return BooleanMatrix::from_fn(n, n, [](int i, int j) { return i >= j; });
}

BlockyCover random_blocky_cover(int m, int n, FamilyRng& rng) {
    int maxk = std::min(m, n);
    if (maxk == 0) return {};
    int k = 1 + rng.below(maxk);
    IndexSet rows = full_index_set(m), cols = full_index_set(n);
    rng.shuffle(rows);
    rng.shuffle(cols);
    std::vector<IndexSet> row_groups(k), col_groups(k);
    for (int b = 0; b < k; ++b) {
        row_groups[b].push_back(rows[b]);
        col_groups[b].push_back(cols[b]);
    }
    for (int i = k; i < m; ++i)
        if (rng.chance(2, 3)) row_groups[rng.below(k)].push_back(rows[i]);
    for (int j = k; j < n; ++j)
        if (rng.chance(2, 3)) col_groups[rng.below(k)].push_back(cols[j]);
    BlockyCover cover;
    for (int b = 0; b < k; ++b) {
        std::sort(row_groups[b].begin(), row_groups[b].end());
        std::sort(col_groups[b].begin(), col_groups[b].end());
        cover.blocks.push_back({std::move(row_groups[b]), std::move(col_groups[b])});
    }
    return cover;
}

namespace {

// Blocky sub-cover strictly inside S x T (local generation, global indices).
BlockyCover inner_cover(const IndexSet& s, const IndexSet& t, FamilyRng& rng) {
    int ms = static_cast<int>(s.size()), nt = static_cast<int>(t.size());
    int maxk = std::min(ms, nt);
    int k = 1 + rng.below(maxk);
    IndexSet rows = s, cols = t;
    rng.shuffle(rows);
    rng.shuffle(cols);
    std::vector<IndexSet> row_groups(k), col_groups(k);
    for (int b = 0; b < k; ++b) {
        row_groups[b].push_back(rows[b]);
        col_groups[b].push_back(cols[b]);
    }
    for (int i = k; i < ms; ++i)
        if (rng.chance(1, 2)) row_groups[rng.below(k)].push_back(rows[i]);
    for (int j = k; j < nt; ++j)
        if (rng.chance(1, 2)) col_groups[rng.below(k)].push_back(cols[j]);
    // A single block using every row and column would cancel S x T exactly;
    // keep the inclusion strict.
    if (k == 1 && row_groups[0].size() == s.size() && col_groups[0].size() == t.size()) {
        if (row_groups[0].size() > 1)
            row_groups[0].pop_back();
        else if (col_groups[0].size() > 1)
            col_groups[0].pop_back();
        else
            return {};  // 1x1 block: no strict nonempty sub-cover exists
    }
    BlockyCover cover;
    for (int b = 0; b < k; ++b) {
        std::sort(row_groups[b].begin(), row_groups[b].end());
        std::sort(col_groups[b].begin(), col_groups[b].end());
        cover.blocks.push_back({std::move(row_groups[b]), std::move(col_groups[b])});
    }
    return cover;
}

}  // namespace

NestedDifference nested_blocky_difference(int m, int n, uint64_t seed) {
    if (m < 1 || n < 1) throw std::invalid_argument("dimensions must be positive");
    FamilyRng rng(seed);
    NestedDifference out;
    out.outer = random_blocky_cover(m, n, rng);
    for (const auto& block : out.outer.blocks) {
        if (block.row_set.size() < 2 && block.col_set.size() < 2) continue;
        if (!rng.chance(2, 3)) continue;
        BlockyCover sub = inner_cover(block.row_set, block.col_set, rng);
        for (auto& b : sub.blocks) out.inner.blocks.push_back(std::move(b));
    }
    BooleanMatrix b1 = out.outer.indicator(m, n);
    BooleanMatrix b2 = out.inner.indicator(m, n);
    out.matrix = BooleanMatrix::from_fn(
        m, n, [&](int i, int j) { return b1.get(i, j) && !b2.get(i, j); });

    // Stacked witness: row norms <= 1, column norms <= 2, U V = B1 - B2.
    Factorization f1 = canonical_blocky_factorization(out.outer, m, n);
    Factorization f2 = canonical_blocky_factorization(out.inner, m, n);
    int t1 = f1.ambient_dim(), t2 = f2.ambient_dim();
    Factorization& f = out.factor;
    f.lambda = 2.0;
    f.tol = kDefaultTol;
    f.U.resize(m, t1 + t2);
    f.U << f1.U / std::sqrt(2.0), f2.U / std::sqrt(2.0);
    f.V.resize(t1 + t2, n);
    f.V << std::sqrt(2.0) * f1.V, -std::sqrt(2.0) * f2.V;
    return out;
}

FamilyInstance generate(const FamilySpec& spec) {
    FamilyInstance out;
    if (spec.name == "identity") {
        if (spec.m < 1) throw std::invalid_argument("identity requires m >= 1");
        out.matrix = BooleanMatrix::identity(spec.m);
        out.factor = canonical_blocky_factorization(*is_blocky(out.matrix), spec.m, spec.m);
        out.truth.gamma2_exact = 1.0;
        out.truth.td = 1;
    } else if (spec.name == "all_ones") {
        if (spec.m < 1 || spec.n < 1) throw std::invalid_argument("all_ones requires m,n >= 1");
        out.matrix = BooleanMatrix::all_ones(spec.m, spec.n);
        out.factor = canonical_blocky_factorization(*is_blocky(out.matrix), spec.m, spec.n);
        out.truth.gamma2_exact = 1.0;
        out.truth.td = 1;
    } else if (spec.name == "half_graph") {
        if (spec.n < 1) throw std::invalid_argument("half_graph requires n >= 1");
        out.matrix = half_graph(spec.n);
        out.truth.td = spec.n;
        out.truth.gamma2_lower = halfgraph_lower_bound(spec.n) - 1.0;
    } else if (spec.name == "random_blocky") {
        if (spec.m < 1 || spec.n < 1)
            throw std::invalid_argument("random_blocky requires m,n >= 1");
        FamilyRng rng(spec.seed);
        BlockyCover cover = random_blocky_cover(spec.m, spec.n, rng);
        out.matrix = cover.indicator(spec.m, spec.n);
        out.factor = canonical_blocky_factorization(cover, spec.m, spec.n);
        out.truth.gamma2_exact = out.matrix.support_size() > 0 ? 1.0 : 0.0;
        out.truth.td = out.matrix.support_size() > 0 ? 1 : 0;
    } else if (spec.name == "nested_blocky_difference") {
        NestedDifference nd = nested_blocky_difference(spec.m, spec.n, spec.seed);
        out.matrix = std::move(nd.matrix);
        out.factor = std::move(nd.factor);
        out.truth.gamma2_upper = 2.0;
    } else if (spec.name == "group_lift_random") {
        if (spec.k < 0 || spec.k > 20)
            throw std::invalid_argument("group_lift_random requires 0 <= k <= 20");
        FamilyRng rng(spec.seed);
        size_t size = size_t{1} << spec.k;
        std::vector<uint8_t> values(size, 0);
        for (size_t x = 0; x < size; ++x) {
            double u = static_cast<double>(rng.next() >> 11) * 0x1p-53;
            values[x] = u < spec.density ? 1 : 0;
        }
        bool any = std::any_of(values.begin(), values.end(), [](uint8_t v) { return v != 0; });
        if (!any) values[0] = 1;
        GroupFunction f = make_group_function(spec.k, std::move(values));
        GroupLift lift = group_lift(f);
        out.matrix = std::move(lift.matrix);
        out.truth.gamma2_exact = lift.factor.lambda;
        out.factor = std::move(lift.factor);
    } else if (spec.name == "staircase_pattern") {
        if (spec.d < 1 || spec.d > std::min(spec.m, spec.n))
            throw std::invalid_argument("staircase_pattern requires 1 <= d <= min(m,n)");
        FamilyRng rng(spec.seed);
        IndexSet rows = full_index_set(spec.m), cols = full_index_set(spec.n);
        rng.shuffle(rows);
        rng.shuffle(cols);
        rows.resize(spec.d);
        cols.resize(spec.d);
        std::sort(rows.begin(), rows.end());
        std::sort(cols.begin(), cols.end());
        out.matrix = BooleanMatrix(spec.m, spec.n);
        for (int s = 0; s < spec.d; ++s)
            for (int t = 0; t <= s; ++t) out.matrix.set(rows[s], cols[t]);
        out.truth.td = spec.d;
    } else {
        throw std::invalid_argument("unknown family: " + spec.name);
    }
    return out;
}

}  // namespace blocky
