#include "blocky/structure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

namespace blocky {

bool Staircase::check(const BooleanMatrix& a) const {
    if (row_seq.size() != col_seq.size()) return false;
    int d = depth();
    for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t)
            if (a.get(row_seq[s], col_seq[t]) != (s >= t)) return false;
    // Indices distinct within each sequence.
    IndexSet r = row_seq, c = col_seq;
    std::sort(r.begin(), r.end());
    std::sort(c.begin(), c.end());
    return std::adjacent_find(r.begin(), r.end()) == r.end() &&
           std::adjacent_find(c.begin(), c.end()) == c.end();
}

namespace {

struct Dedup {
    BooleanMatrix matrix;
    IndexSet row_map, col_map;  // representative indices in the parent
};

BooleanMatrix transpose(const BooleanMatrix& a) {
    return BooleanMatrix::from_fn(a.cols(), a.rows(), [&](int i, int j) { return a.get(j, i); });
}

// Drop zero rows/columns and collapse duplicates until stable. Threshold
// dimension is preserved: a staircase never uses a zero line or two
// identical lines.
Dedup deduplicate(const BooleanMatrix& a) {
    Dedup d;
    d.matrix = a;
    d.row_map = full_index_set(a.rows());
    d.col_map = full_index_set(a.cols());
    bool changed = true;
    while (changed) {
        changed = false;
        // Rows.
        std::vector<std::vector<uint64_t>> seen;
        IndexSet keep;
        for (int i = 0; i < d.matrix.rows(); ++i) {
            int nwords;
            const auto& words = d.matrix.row_words(nwords);
            std::vector<uint64_t> key(words.begin() + d.matrix.row_offset(i),
                                      words.begin() + d.matrix.row_offset(i) + nwords);
            bool zero = std::all_of(key.begin(), key.end(), [](uint64_t w) { return w == 0; });
            if (zero || std::find(seen.begin(), seen.end(), key) != seen.end()) {
                changed = true;
                continue;
            }
            seen.push_back(std::move(key));
            keep.push_back(i);
        }
        if (changed) {
            Restriction r = restrict(d.matrix, keep, full_index_set(d.matrix.cols()));
            IndexSet new_rows;
            for (int i : keep) new_rows.push_back(d.row_map[i]);
            d.matrix = std::move(r.matrix);
            d.row_map = std::move(new_rows);
        }
        // Columns, via the transpose.
        BooleanMatrix tr = transpose(d.matrix);
        seen.clear();
        keep.clear();
        bool col_changed = false;
        for (int j = 0; j < tr.rows(); ++j) {
            int nwords;
            const auto& words = tr.row_words(nwords);
            std::vector<uint64_t> key(words.begin() + tr.row_offset(j),
                                      words.begin() + tr.row_offset(j) + nwords);
            bool zero = std::all_of(key.begin(), key.end(), [](uint64_t w) { return w == 0; });
            if (zero || std::find(seen.begin(), seen.end(), key) != seen.end()) {
                col_changed = true;
                continue;
            }
            seen.push_back(std::move(key));
            keep.push_back(j);
        }
        if (col_changed) {
            changed = true;
            Restriction r = restrict(d.matrix, full_index_set(d.matrix.rows()), keep);
            IndexSet new_cols;
            for (int j : keep) new_cols.push_back(d.col_map[j]);
            d.matrix = std::move(r.matrix);
            d.col_map = std::move(new_cols);
        }
    }
    return d;
}

// Exact search on a deduplicated matrix with both sides <= 24. State is a
// pair of bitmasks (available rows, available columns); choosing the next
// staircase pair (i,j) with A(i,j)=1 forces later rows into C_j and later
// columns into the zero set of row i.
class ExactTd {
public:
    explicit ExactTd(const BooleanMatrix& a) : m_(a.rows()), n_(a.cols()) {
        row_bits_.resize(m_, 0);
        col_bits_.resize(n_, 0);
        for (int i = 0; i < m_; ++i)
            for (int j : a.row_nbhd(i)) {
                row_bits_[i] |= uint32_t{1} << j;
                col_bits_[j] |= uint32_t{1} << i;
            }
    }

    int solve(Staircase* witness) {
        uint32_t all_rows = m_ == 32 ? ~uint32_t{0} : (uint32_t{1} << m_) - 1;
        uint32_t all_cols = n_ == 32 ? ~uint32_t{0} : (uint32_t{1} << n_) - 1;
        int d = depth(all_rows, all_cols);
        if (witness) {
            witness->row_seq.clear();
            witness->col_seq.clear();
            uint32_t r = all_rows, c = all_cols;
            while (true) {
                auto it = memo_.find(key(r, c));
                if (it == memo_.end() || it->second.value == 0) break;
                witness->row_seq.push_back(it->second.row);
                witness->col_seq.push_back(it->second.col);
                uint32_t nr = (r & col_bits_[it->second.col]) & ~(uint32_t{1} << it->second.row);
                uint32_t nc = c & ~row_bits_[it->second.row];
                r = nr;
                c = nc;
            }
        }
        return d;
    }

private:
    struct Entry {
        int value;
        int row, col;
    };

    static uint64_t key(uint32_t r, uint32_t c) { return (uint64_t{r} << 32) | c; }

    int depth(uint32_t rows, uint32_t cols) {
        if (rows == 0 || cols == 0) return 0;
        auto it = memo_.find(key(rows, cols));
        if (it != memo_.end()) return it->second.value;
        int cap = std::min(std::popcount(rows), std::popcount(cols));
        Entry best{0, -1, -1};
        for (uint32_t rbits = rows; rbits && best.value < cap;) {
            int i = std::countr_zero(rbits);
            rbits &= rbits - 1;
            uint32_t ones = row_bits_[i] & cols;
            for (uint32_t cbits = ones; cbits && best.value < cap;) {
                int j = std::countr_zero(cbits);
                cbits &= cbits - 1;
                uint32_t nr = (rows & col_bits_[j]) & ~(uint32_t{1} << i);
                uint32_t nc = cols & ~row_bits_[i];
                int v = 1 + depth(nr, nc);
                if (v > best.value) best = {v, i, j};
            }
        }
        memo_.emplace(key(rows, cols), best);
        return best.value;
    }

    int m_, n_;
    std::vector<uint32_t> row_bits_, col_bits_;
    std::unordered_map<uint64_t, Entry> memo_;
};

// Greedy descent used beyond the exact range: repeatedly pick the 1-entry
// whose forced restriction keeps the most room.
Staircase greedy_staircase(const BooleanMatrix& a) {
    Staircase w;
    IndexSet rows = full_index_set(a.rows());
    IndexSet cols = full_index_set(a.cols());
    while (!rows.empty() && !cols.empty()) {
        auto col_mask = a.col_mask(cols);
        int best_i = -1, best_j = -1;
        long best_score = -1;
        for (int i : rows) {
            for (int j : cols) {
                if (!a.get(i, j)) continue;
                IndexSet nr;
                for (int r : rows)
                    if (r != i && a.get(r, j)) nr.push_back(r);
                IndexSet nc;
                for (int c : cols)
                    if (!a.get(i, c)) nc.push_back(c);
                long score = static_cast<long>(std::min(nr.size(), nc.size()));
                if (score > best_score) {
                    best_score = score;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best_i < 0) break;
        w.row_seq.push_back(best_i);
        w.col_seq.push_back(best_j);
        IndexSet nr, nc;
        for (int r : rows)
            if (r != best_i && a.get(r, best_j)) nr.push_back(r);
        for (int c : cols)
            if (!a.get(best_i, c)) nc.push_back(c);
        rows = std::move(nr);
        cols = std::move(nc);
        (void)col_mask;
    }
    return w;
}

}  // namespace

ThresholdDim threshold_dimension(const BooleanMatrix& a, int exact_limit) {
    ThresholdDim out;
    if (a.support_size() == 0) return out;  // TD(0) = 0 by convention
    Dedup d = deduplicate(a);
    if (d.matrix.rows() <= exact_limit && d.matrix.cols() <= exact_limit &&
        d.matrix.rows() <= 32 && d.matrix.cols() <= 32) {
        ExactTd solver(d.matrix);
        Staircase local;
        out.dim = solver.solve(&local);
        out.upper_bound = out.dim;
        out.exact = true;
        for (int i : local.row_seq) out.witness.row_seq.push_back(d.row_map[i]);
        for (int j : local.col_seq) out.witness.col_seq.push_back(d.col_map[j]);
        return out;
    }
    Staircase local = greedy_staircase(d.matrix);
    for (int i : local.row_seq) out.witness.row_seq.push_back(d.row_map[i]);
    for (int j : local.col_seq) out.witness.col_seq.push_back(d.col_map[j]);
    out.dim = out.witness.depth();
    out.upper_bound = std::min(d.matrix.rows(), d.matrix.cols());
    out.exact = out.dim == out.upper_bound;
    return out;
}

TdBound threshold_dimension_bound(const BooleanMatrix& a, int exact_limit) {
    TdBound out;
    if (a.support_size() == 0) return out;
    Dedup d = deduplicate(a);
    if (d.matrix.rows() <= exact_limit && d.matrix.cols() <= exact_limit &&
        d.matrix.rows() <= 32 && d.matrix.cols() <= 32) {
        ExactTd solver(d.matrix);
        out.upper = solver.solve(nullptr);
        return out;
    }
    out.upper = std::min(d.matrix.rows(), d.matrix.cols());
    out.exact = false;
    return out;
}

namespace {

struct ExactRectSearch {
    const BooleanMatrix& a;
    std::vector<std::vector<uint64_t>> col_masks;  // over rows, one per column
    int nwords;
    long best = 0;
    IndexSet best_cols;
    std::vector<uint64_t> best_rows;

    explicit ExactRectSearch(const BooleanMatrix& mat) : a(mat) {
        nwords = (a.rows() + 63) / 64;
        col_masks.assign(a.cols(), std::vector<uint64_t>(nwords, 0));
        for (int j = 0; j < a.cols(); ++j)
            for (int i : a.col_nbhd(j)) col_masks[j][i >> 6] |= uint64_t{1} << (i & 63);
    }

    static long popcount(const std::vector<uint64_t>& v) {
        long c = 0;
        for (uint64_t w : v) c += std::popcount(w);
        return c;
    }

    void dfs(int next_col, std::vector<uint64_t>& rows, IndexSet& cols, long nrows) {
        if (!cols.empty() && nrows > 0) {
            long val = nrows * static_cast<long>(cols.size());
            if (val > best) {
                best = val;
                best_cols = cols;
                best_rows = rows;
            }
        }
        for (int j = next_col; j < a.cols(); ++j) {
            long remaining = a.cols() - j;
            if (nrows * (static_cast<long>(cols.size()) + remaining) <= best) return;
            std::vector<uint64_t> nr(nwords);
            long cnt = 0;
            for (int w = 0; w < nwords; ++w) {
                nr[w] = rows[w] & col_masks[j][w];
                cnt += std::popcount(nr[w]);
            }
            if (cnt == 0) continue;
            cols.push_back(j);
            dfs(j + 1, nr, cols, cnt);
            cols.pop_back();
        }
    }
};

RectangleResult exact_rectangle(const BooleanMatrix& a) {
    ExactRectSearch search(a);
    std::vector<uint64_t> all(search.nwords, 0);
    for (int i = 0; i < a.rows(); ++i) all[i >> 6] |= uint64_t{1} << (i & 63);
    IndexSet cols;
    search.dfs(0, all, cols, a.rows());
    RectangleResult out;
    out.size = search.best;
    out.rect.col_set = search.best_cols;
    for (int i = 0; i < a.rows(); ++i)
        if ((search.best_rows[i >> 6] >> (i & 63)) & 1) out.rect.row_set.push_back(i);
    return out;
}

void consider(RectangleResult& best, IndexSet rows, IndexSet cols) {
    long val = static_cast<long>(rows.size()) * static_cast<long>(cols.size());
    if (val > best.size && !rows.empty() && !cols.empty()) {
        best.size = val;
        best.rect = {std::move(rows), std::move(cols)};
    }
}

RectangleResult greedy_rectangle(const BooleanMatrix& a) {
    RectangleResult best;

    // Peeling: drop the lowest-density line until the survivor is all ones.
    IndexSet rows = full_index_set(a.rows());
    IndexSet cols = full_index_set(a.cols());
    while (!rows.empty() && !cols.empty()) {
        auto mask = a.col_mask(cols);
        long support = a.support_in_mask(rows, mask);
        long full = static_cast<long>(rows.size()) * static_cast<long>(cols.size());
        if (support == full) {
            consider(best, rows, cols);
            break;
        }
        // Lowest density line; ties favour rows, then smallest index.
        double worst_row = 2.0;
        int worst_row_idx = -1;
        for (int i : rows) {
            double dens = static_cast<double>(a.row_count_in(i, mask)) / cols.size();
            if (dens < worst_row) {
                worst_row = dens;
                worst_row_idx = i;
            }
        }
        double worst_col = 2.0;
        int worst_col_idx = -1;
        for (int j : cols) {
            long cnt = 0;
            for (int i : rows) cnt += a.get(i, j) ? 1 : 0;
            double dens = static_cast<double>(cnt) / rows.size();
            if (dens < worst_col) {
                worst_col = dens;
                worst_col_idx = j;
            }
        }
        if (worst_row <= worst_col)
            rows.erase(std::find(rows.begin(), rows.end(), worst_row_idx));
        else
            cols.erase(std::find(cols.begin(), cols.end(), worst_col_idx));
    }

    // Row seeds: T = R_i, S = rows whose neighbourhood contains T.
    for (int i = 0; i < a.rows(); ++i) {
        IndexSet t = a.row_nbhd(i);
        if (t.empty()) continue;
        auto mask = a.col_mask(t);
        IndexSet s;
        for (int r = 0; r < a.rows(); ++r)
            if (a.row_count_in(r, mask) == static_cast<int>(t.size())) s.push_back(r);
        consider(best, std::move(s), std::move(t));
    }
    // Column seeds.
    for (int j = 0; j < a.cols(); ++j) {
        IndexSet s = a.col_nbhd(j);
        if (s.empty()) continue;
        IndexSet t;
        for (int c = 0; c < a.cols(); ++c) {
            bool all = true;
            for (int i : s)
                if (!a.get(i, c)) {
                    all = false;
                    break;
                }
            if (all) t.push_back(c);
        }
        consider(best, std::move(s), std::move(t));
    }
    return best;
}

}  // namespace

RectangleResult max_one_rectangle(const BooleanMatrix& a, RectMode mode) {
    if (a.support_size() == 0) throw std::invalid_argument("matrix has no 1-entries");
    if (mode == RectMode::Greedy) return greedy_rectangle(a);
    if (a.cols() <= a.rows()) return exact_rectangle(a);
    BooleanMatrix tr = transpose(a);
    RectangleResult r = exact_rectangle(tr);
    std::swap(r.rect.row_set, r.rect.col_set);
    return r;
}

SplitOutcome lemma_split(const BooleanMatrix& a, const Factorization& f, int i) {
    IndexSet ri = a.row_nbhd(i);
    if (ri.empty()) throw std::invalid_argument("lemma_split requires a nonzero pivot row");
    IndexSet di = delta_set(f, i);
    auto ri_mask = a.col_mask(ri);
    double lam2 = f.lambda * f.lambda;
    double mass_delta_all = static_cast<double>(a.support_in(di, full_index_set(a.cols())));
    double mass_cols = static_cast<double>(a.support_in_mask(full_index_set(a.rows()), ri_mask));
    long delta_support = a.support_in_mask(di, ri_mask);
    if (mass_delta_all / (4.0 * lam2) > mass_cols + f.tol ||
        mass_cols > 2.0 * lam2 * delta_support + f.tol)
        throw std::invalid_argument("lemma_split sandwich precondition violated");

    std::vector<char> in_delta(a.rows(), 0);
    for (int s : di) in_delta[s] = 1;
    int best_j = -1;
    long best_count = -1;
    for (int t : ri) {
        long cnt = 0;
        for (int r : a.col_nbhd(t)) cnt += in_delta[r];
        if (best_j < 0 || cnt < best_count) {
            best_j = t;
            best_count = cnt;
        }
    }

    SplitOutcome out;
    out.pivot_col = best_j;
    out.delta = di;
    out.pivot_row_nbhd = ri;
    out.delta_support = delta_support;
    IndexSet cj_delta;
    for (int r : a.col_nbhd(best_j))
        if (in_delta[r]) cj_delta.push_back(r);
    long cj_support = a.support_in_mask(cj_delta, ri_mask);
    if (2 * cj_support > delta_support) {
        out.kind = SplitKind::Rect;
        out.row_part = std::move(cj_delta);
        out.retained_ones = cj_support;
    } else {
        out.kind = SplitKind::TDDrop;
        std::vector<char> in_cj(a.rows(), 0);
        for (int r : a.col_nbhd(best_j)) in_cj[r] = 1;
        for (int s : di)
            if (!in_cj[s]) out.row_part.push_back(s);
        out.retained_ones = a.support_in_mask(out.row_part, ri_mask);
    }
    return out;
}

}  // namespace blocky
