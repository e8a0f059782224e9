#include "blocky/factor.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace blocky {

std::string Violation::describe() const {
    std::ostringstream os;
    switch (kind) {
        case RowNorm:
            os << "row " << i + 1 << " of U has norm exceeding 1 by " << magnitude;
            break;
        case ColNorm:
            os << "column " << j + 1 << " of V has norm exceeding lambda by " << magnitude;
            break;
        case Entry:
            os << "entry (" << i + 1 << "," << j + 1 << ") off by " << magnitude;
            break;
        case Shape:
            os << "ambient dimension t exceeds m+n by " << magnitude;
            break;
    }
    return os.str();
}

std::vector<Violation> verify(const BooleanMatrix& a, const Factorization& f) {
    std::vector<Violation> out;
    if (f.m() != a.rows() || f.n() != a.cols())
        throw std::invalid_argument("factorization dimensions do not match matrix");
    if (f.ambient_dim() > a.rows() + a.cols())
        out.push_back({Violation::Shape, -1, -1,
                       static_cast<double>(f.ambient_dim() - a.rows() - a.cols())});
    for (int i = 0; i < f.m(); ++i) {
        double nrm = f.U.row(i).norm();
        if (nrm > 1.0 + f.tol) out.push_back({Violation::RowNorm, i, -1, nrm - 1.0});
    }
    for (int j = 0; j < f.n(); ++j) {
        double nrm = f.V.col(j).norm();
        if (nrm > f.lambda + f.tol) out.push_back({Violation::ColNorm, -1, j, nrm - f.lambda});
    }
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            double err = std::abs(f.U.row(i).dot(f.V.col(j)) - (a.get(i, j) ? 1.0 : 0.0));
            if (err > f.tol) out.push_back({Violation::Entry, i, j, err});
        }
    }
    return out;
}

Factorization canonical_blocky_factorization(const BlockyCover& cover, int m, int n) {
    int t = static_cast<int>(cover.blocks.size());
    Factorization f;
    f.U = Eigen::MatrixXd::Zero(m, t);
    f.V = Eigen::MatrixXd::Zero(t, n);
    f.lambda = 1.0;
    f.tol = 0.0;
    for (int k = 0; k < t; ++k) {
        for (int i : cover.blocks[k].row_set) f.U(i, k) = 1.0;
        for (int j : cover.blocks[k].col_set) f.V(k, j) = 1.0;
    }
    return f;
}

PotentialReport potential(const BooleanMatrix& a, const Factorization& f) {
    PotentialReport rep;
    double fro2 = static_cast<double>(a.support_size());
    rep.lower = fro2 / (f.lambda * f.lambda);
    rep.upper = fro2;
    rep.per_row.resize(a.rows());
    for (int i = 0; i < a.rows(); ++i) {
        rep.per_row[i] = f.U.row(i).squaredNorm() * a.row_count_ones(i);
        rep.value += rep.per_row[i];
    }
    return rep;
}

IndexSet delta_set(const Factorization& f, int i) {
    if (i < 0 || i >= f.m()) throw std::out_of_range("row index out of range");
    double threshold = 1.0 / (2.0 * f.lambda * f.lambda);
    IndexSet out;
    for (int s = 0; s < f.m(); ++s) {
        double ip = f.U.row(i).dot(f.U.row(s));
        if (ip * ip >= threshold) out.push_back(s);
    }
    return out;
}

long large_pair_count(const Factorization& f, const BooleanMatrix& a, int t) {
    const IndexSet& ct = a.col_nbhd(t);
    double threshold = 1.0 / (2.0 * f.lambda * f.lambda);
    long count = 0;
    for (int r : ct)
        for (int s : ct) {
            double ip = f.U.row(r).dot(f.U.row(s));
            if (ip * ip >= threshold) ++count;
        }
    return count;
}

InnerProductSums inner_product_sums(const Factorization& f, const BooleanMatrix& a) {
    InnerProductSums out;
    out.row_sums.resize(a.rows(), 0.0);
    out.col_sums.resize(a.cols(), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        IndexSet ri = a.row_nbhd(i);
        for (int r : ri)
            for (int s : ri) {
                double ip = f.V.col(r).dot(f.V.col(s));
                out.row_sums[i] += ip * ip;
            }
    }
    for (int j = 0; j < a.cols(); ++j) {
        const IndexSet& cj = a.col_nbhd(j);
        for (int r : cj)
            for (int s : cj) {
                double ip = f.U.row(r).dot(f.U.row(s));
                out.col_sums[j] += ip * ip;
            }
    }
    return out;
}

PivotalRow pivotal_row(const BooleanMatrix& a, const Factorization& f) {
    double threshold = 1.0 / (2.0 * f.lambda * f.lambda);
    PivotalRow best;
    double best_ratio = -1.0;
    for (int i = 0; i < a.rows(); ++i) {
        IndexSet ri = a.row_nbhd(i);
        if (ri.empty()) continue;
        auto mask = a.col_mask(ri);
        IndexSet di = delta_set(f, i);
        double in_delta = static_cast<double>(a.support_in_mask(di, mask));
        double total = static_cast<double>(a.support_in_mask(full_index_set(a.rows()), mask));
        double ratio = in_delta / total;
        if (ratio >= threshold && ratio > best_ratio) {
            best_ratio = ratio;
            best = {i, in_delta, total};
        }
    }
    if (best.row < 0)
        throw std::logic_error(
            "no pivotal row found; the factorization cannot be a valid lambda-factorization");
    return best;
}

ProjectionResult project_columns(const BooleanMatrix& a, const Factorization& f, int i) {
    IndexSet ri = a.row_nbhd(i);
    if (ri.empty()) throw std::invalid_argument("pivot row has no 1-entries");
    double ui_norm2 = f.U.row(i).squaredNorm();
    if (std::sqrt(ui_norm2) <= f.tol)
        throw std::invalid_argument("pivot row of U is numerically zero");

    ProjectionResult out;
    out.col_map = complement(ri, a.cols());
    Restriction r = restrict(a, full_index_set(a.rows()), out.col_map);
    out.support_drop = a.support_size() - r.matrix.support_size();
    out.matrix = std::move(r.matrix);

    out.factor.lambda = f.lambda;
    out.factor.tol = f.tol;
    Eigen::VectorXd ui = f.U.row(i).transpose();
    out.factor.U = f.U - (f.U * ui) * (ui.transpose() / ui_norm2);
    out.factor.V.resize(f.V.rows(), static_cast<Eigen::Index>(out.col_map.size()));
    for (size_t j = 0; j < out.col_map.size(); ++j)
        out.factor.V.col(static_cast<Eigen::Index>(j)) = f.V.col(out.col_map[j]);
    return out;
}

Factorization restrict_factorization(const Factorization& f, const IndexSet& row_set,
                                     const IndexSet& col_set) {
    Factorization out;
    out.lambda = f.lambda;
    out.tol = f.tol;
    out.U.resize(static_cast<Eigen::Index>(row_set.size()), f.U.cols());
    for (size_t i = 0; i < row_set.size(); ++i)
        out.U.row(static_cast<Eigen::Index>(i)) = f.U.row(row_set[i]);
    out.V.resize(f.V.rows(), static_cast<Eigen::Index>(col_set.size()));
    for (size_t j = 0; j < col_set.size(); ++j)
        out.V.col(static_cast<Eigen::Index>(j)) = f.V.col(col_set[j]);
    // Deleting rows and columns can leave the ambient dimension above the
    // m + n cap of the smaller matrix. Rotating onto an orthonormal basis Q
    // of U's row space fixes that: U Q Q^T = U, so the product is unchanged,
    // row norms are preserved, and column norms of Q^T V can only shrink.
    Eigen::Index cap = out.U.rows() + out.V.cols();
    if (out.U.cols() > cap && out.U.rows() == 0) {
        out.U.resize(0, 0);
        out.V.resize(0, out.V.cols());
    } else if (out.U.cols() > cap) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(out.U.transpose());
        Eigen::Index rank = std::min<Eigen::Index>(qr.rank(), cap);
        Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(out.U.cols(), rank);
        out.U = out.U * q;
        out.V = q.transpose() * out.V;
    }
    return out;
}

Factorization parse_lf(std::istream& in) {
    long m, n, t;
    double lambda;
    if (!(in >> m >> n >> t >> lambda)) throw ParseError("bad .lf header, expected \"m n t lambda\"", 1);
    if (m < 0 || n < 0 || t < 0) throw ParseError("negative dimension in .lf header", 1);
    if (t > m + n) throw ParseError("ambient dimension t exceeds m+n", 1);
    if (lambda <= 0.0) throw ParseError("lambda must be positive", 1);
    Factorization f;
    f.lambda = lambda;
    f.U.resize(m, t);
    f.V.resize(t, n);
    for (long i = 0; i < m; ++i)
        for (long k = 0; k < t; ++k)
            if (!(in >> f.U(i, k))) throw ParseError("truncated U block", 2);
    for (long k = 0; k < t; ++k)
        for (long j = 0; j < n; ++j)
            if (!(in >> f.V(k, j))) throw ParseError("truncated V block", 2);
    return f;
}

void write_lf(std::ostream& out, const Factorization& f) {
    out << f.m() << ' ' << f.n() << ' ' << f.ambient_dim() << ' ' << std::setprecision(17)
        << f.lambda << '\n';
    for (int i = 0; i < f.m(); ++i) {
        for (int k = 0; k < f.ambient_dim(); ++k) out << (k ? " " : "") << f.U(i, k);
        out << '\n';
    }
    for (int k = 0; k < f.ambient_dim(); ++k) {
        for (int j = 0; j < f.n(); ++j) out << (j ? " " : "") << f.V(k, j);
        out << '\n';
    }
}

}  // namespace blocky
