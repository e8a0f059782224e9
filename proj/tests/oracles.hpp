#pragma once

// Deliberately naive reference implementations used only by the tests.
// Everything here trades speed for obviousness so the fast library code can
// be checked against an independent computation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "blocky/factor.hpp"
#include "blocky/matrix.hpp"

namespace oracles {

// Largest d admitting row/column sequences with A(i_s, j_t) = 1 iff s >= t,
// by enumerating every sequence of distinct rows and columns. Exponential;
// fine for 4x4 and below.
inline bool staircase_extends(const blocky::BooleanMatrix& a, std::vector<int>& rows,
                              std::vector<int>& cols, int d) {
    if (static_cast<int>(rows.size()) == d) return true;
    int s = static_cast<int>(rows.size());
    for (int i = 0; i < a.rows(); ++i) {
        if (std::find(rows.begin(), rows.end(), i) != rows.end()) continue;
        bool ok = true;
        for (int t = 0; t < s && ok; ++t)
            if (!a.get(i, cols[t])) ok = false;  // needs 1s under every earlier column
        if (!ok) continue;
        for (int j = 0; j < a.cols() && ok; ++j) {
            if (std::find(cols.begin(), cols.end(), j) != cols.end()) continue;
            bool col_ok = !a.get(i, j) ? false : true;
            // column j must be 0 on every earlier row
            for (int t = 0; t < s && col_ok; ++t)
                if (a.get(rows[t], j)) col_ok = false;
            if (!col_ok) continue;
            rows.push_back(i);
            cols.push_back(j);
            if (staircase_extends(a, rows, cols, d)) return true;
            rows.pop_back();
            cols.pop_back();
        }
    }
    return false;
}

inline int threshold_dimension(const blocky::BooleanMatrix& a) {
    int limit = std::min(a.rows(), a.cols());
    int best = 0;
    for (int d = 1; d <= limit; ++d) {
        std::vector<int> rows, cols;
        if (staircase_extends(a, rows, cols, d))
            best = d;
        else
            break;  // staircases nest, so the first failure is final
    }
    return best;
}

// Naive O(4^k) Walsh-Hadamard coefficients of a 0/1 function on Z_2^k.
inline std::vector<double> walsh_coeffs(int k, const std::vector<uint8_t>& values) {
    int size = 1 << k;
    std::vector<double> out(size, 0.0);
    for (int a = 0; a < size; ++a) {
        double sum = 0.0;
        for (int x = 0; x < size; ++x)
            sum += values[x] * (__builtin_popcount(a & x) % 2 ? -1.0 : 1.0);
        out[a] = sum / size;
    }
    return out;
}

// Sum of |hat 1_{0..n-1}(a)| over Z_{2n} by direct complex DFT.
inline double halfgraph_norm(int n) {
    int size = 2 * n;
    const double pi = std::acos(-1.0);
    double total = 0.0;
    for (int a = 0; a < size; ++a) {
        std::complex<double> sum = 0.0;
        for (int x = 0; x < n; ++x)
            sum += std::exp(std::complex<double>(0.0, -2.0 * pi * a * x / size));
        total += std::abs(sum) / size;
    }
    return total;
}

// Largest all-1 rectangle by enumerating every row subset (<= 2^m rows).
inline long max_rectangle(const blocky::BooleanMatrix& a) {
    long best = 0;
    for (unsigned mask = 1; mask < (1u << a.rows()); ++mask) {
        long nrows = __builtin_popcount(mask);
        long ncols = 0;
        for (int j = 0; j < a.cols(); ++j) {
            bool all = true;
            for (int i = 0; i < a.rows() && all; ++i)
                if ((mask >> i) & 1u)
                    if (!a.get(i, j)) all = false;
            if (all) ++ncols;
        }
        best = std::max(best, nrows * ncols);
    }
    return best;
}

// Delta_i recomputed entrywise from U.
inline blocky::IndexSet delta_set(const blocky::Factorization& f, int i) {
    blocky::IndexSet out;
    double threshold = 1.0 / (2.0 * f.lambda * f.lambda);
    for (int s = 0; s < f.m(); ++s) {
        double ip = f.U.row(i).dot(f.U.row(s));
        if (ip * ip >= threshold) out.push_back(s);
    }
    return out;
}

// Potential recomputed term by term.
inline double potential(const blocky::BooleanMatrix& a, const blocky::Factorization& f) {
    double total = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        total += f.U.row(i).squaredNorm() * a.row_count_ones(i);
    return total;
}

}  // namespace oracles
