#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "blocky/matrix.hpp"

namespace blocky {

constexpr double kDefaultTol = 1e-9;

/// A = U V with every row of U of l2 norm <= 1 and every column of V of
/// l2 norm <= lambda, up to tol.
struct Factorization {
    Eigen::MatrixXd U;  // m x t, rows u_1..u_m
    Eigen::MatrixXd V;  // t x n, columns v_1..v_n
    double lambda = 1.0;
    double tol = kDefaultTol;

    int m() const { return static_cast<int>(U.rows()); }
    int n() const { return static_cast<int>(V.cols()); }
    int ambient_dim() const { return static_cast<int>(U.cols()); }
};

struct Violation {
    enum Kind { RowNorm, ColNorm, Entry, Shape } kind;
    int i = -1, j = -1;
    double magnitude = 0.0;  // how far past the allowed bound
    std::string describe() const;
};

/// Checks row norms, column norms, and entrywise reproduction of A.
/// Empty result means the factorization is valid.
std::vector<Violation> verify(const BooleanMatrix& a, const Factorization& f);

/// lambda = 1 factorization of a blocky matrix: one coordinate per block,
/// u_i = e_k for i in S_k and v_j = e_k for j in T_k. Exact (tol 0 passes).
Factorization canonical_blocky_factorization(const BlockyCover& cover, int m, int n);

struct PotentialReport {
    double value = 0.0;               // sum over rows of |u_s|^2 * |R_s|
    std::vector<double> per_row;      // the individual terms
    double lower = 0.0, upper = 0.0;  // F/lambda^2 and F
};

PotentialReport potential(const BooleanMatrix& a, const Factorization& f);

/// Delta_i: rows s with <u_i,u_s>^2 >= 1/(2 lambda^2). Exact comparison,
/// ties included.
IndexSet delta_set(const Factorization& f, int i);

/// Ordered pairs (r,s) in C_t x C_t with <u_r,u_s>^2 >= 1/(2 lambda^2).
long large_pair_count(const Factorization& f, const BooleanMatrix& a, int t);

struct InnerProductSums {
    std::vector<double> row_sums;  // sum over r,s in R_i of <v_r,v_s>^2
    std::vector<double> col_sums;  // sum over r,s in C_j of <u_r,u_s>^2
};

InnerProductSums inner_product_sums(const Factorization& f, const BooleanMatrix& a);

struct PivotalRow {
    int row = -1;
    double mass_in_delta = 0.0;  // |A_{Delta_i x R_i}|_F^2
    double mass_cols = 0.0;      // |A_{[m] x R_i}|_F^2
};

/// Row i with R_i nonempty and mass_in_delta >= mass_cols / (2 lambda^2),
/// maximizing the ratio (ties: smallest i). Throws if no row qualifies,
/// which contradicts the factorization being valid.
PivotalRow pivotal_row(const BooleanMatrix& a, const Factorization& f);

struct ProjectionResult {
    BooleanMatrix matrix;  // A with the columns R_i removed
    IndexSet col_map;      // surviving columns, parent coordinates
    Factorization factor;  // rows of U projected orthogonal to u_i, V columns dropped
    long support_drop = 0;
};

/// The column-deletion step: removes columns R_i and replaces each row of U
/// by its component orthogonal to u_i. Requires |u_i| > tol.
ProjectionResult project_columns(const BooleanMatrix& a, const Factorization& f, int i);

/// Sub-factorization for A restricted to row_set x col_set (delete rows of U
/// and columns of V); always a valid lambda-factorization of the restriction.
Factorization restrict_factorization(const Factorization& f, const IndexSet& row_set,
                                     const IndexSet& col_set);

// .lf text format: "m n t lambda" then U (m rows of t values) then V
// (t rows of n values), 17 significant digits.
Factorization parse_lf(std::istream& in);
void write_lf(std::ostream& out, const Factorization& f);

}  // namespace blocky
