#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "blocky/factor.hpp"
#include "blocky/matrix.hpp"

namespace blocky {

/// Boolean function on Z_2^k together with its Walsh-Hadamard coefficients,
/// normalized so coeffs[a] = 2^-k * sum_x f(x) (-1)^{a.x}.
struct GroupFunction {
    int k = 0;
    std::vector<uint8_t> values;  // 2^k entries, lexicographic in x
    std::vector<double> coeffs;   // 2^k entries

    bool zero() const;
};

GroupFunction make_group_function(int k, std::vector<uint8_t> values);

/// Fast in-place Walsh-Hadamard transform (unnormalized butterflies).
void walsh_transform(std::vector<double>& data);

/// Fourier algebra norm: sum of |coeffs|.
double walsh_algebra_norm(const GroupFunction& f);

struct GroupLift {
    BooleanMatrix matrix;  // A(x,y) = f(x xor y), 2^k x 2^k
    Factorization factor;  // lambda = algebra norm, rows of U unit norm
};

/// Character factorization with exactly known gamma_2 = |f|_A.
/// Requires f not identically zero.
GroupLift group_lift(const GroupFunction& f);

/// Exact gamma_2 of the wrap-around half-graph H on Z_2n: the sum of
/// absolute Fourier coefficients of 1_{0..n-1}, by direct complex DFT.
/// Subtracting 1 lower-bounds gamma_2 of the n x n half-graph itself.
double halfgraph_lower_bound(int n);

struct AlsOptions {
    uint64_t seed = 0;
    int max_iters = 2000;
    int restarts = 8;
    double tol = 1e-7;  // max entrywise reproduction error for success
};

struct AlsResult {
    std::optional<Factorization> factor;
    double best_error = 0.0;  // best max entrywise error over restarts
    int iters_used = 0;
    int restart_used = -1;
};

/// Alternating constrained least squares: solve for U, clip rows to norm 1,
/// solve for V, clip columns to norm lambda_target. Restart 0 is seeded from
/// an SVD split of A; the rest from the seeded generator. Deterministic.
AlsResult als_factorize(const BooleanMatrix& a, double lambda_target, const AlsOptions& opts = {});

// GroupFunction text format: "k" then 2^k characters of 0/1.
GroupFunction parse_group_function(std::istream& in);
void write_group_function(std::ostream& out, const GroupFunction& f);

}  // namespace blocky
