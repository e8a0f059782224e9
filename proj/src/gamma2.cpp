#include "blocky/gamma2.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <bit>
#include <cmath>
#include <complex>
#include <istream>
#include <ostream>
#include <random>

namespace blocky {

bool GroupFunction::zero() const {
    for (uint8_t v : values)
        if (v) return false;
    return true;
}

void walsh_transform(std::vector<double>& data) {
    size_t n = data.size();
    for (size_t len = 1; len < n; len <<= 1) {
        for (size_t block = 0; block < n; block += 2 * len) {
            for (size_t i = block; i < block + len; ++i) {
                double a = data[i], b = data[i + len];
                data[i] = a + b;
                data[i + len] = a - b;
            }
        }
    }
}

GroupFunction make_group_function(int k, std::vector<uint8_t> values) {
    if (k < 0 || k > 30) throw std::invalid_argument("dimension k out of range");
    size_t size = size_t{1} << k;
    if (values.size() != size) throw std::invalid_argument("values must have 2^k entries");
    GroupFunction f;
    f.k = k;
    f.values = std::move(values);
    f.coeffs.assign(size, 0.0);
    for (size_t x = 0; x < size; ++x) f.coeffs[x] = f.values[x] ? 1.0 : 0.0;
    walsh_transform(f.coeffs);
    double scale = 1.0 / static_cast<double>(size);
    for (double& c : f.coeffs) c *= scale;
    return f;
}

double walsh_algebra_norm(const GroupFunction& f) {
    double total = 0.0;
    for (double c : f.coeffs) total += std::abs(c);
    return total;
}

GroupLift group_lift(const GroupFunction& f) {
    if (f.zero()) throw std::invalid_argument("group_lift requires a nonzero function");
    int size = 1 << f.k;
    double lambda = walsh_algebra_norm(f);

    GroupLift out;
    out.matrix = BooleanMatrix::from_fn(size, size, [&](int x, int y) {
        return f.values[static_cast<size_t>(x ^ y)] != 0;
    });
    out.factor.lambda = lambda;
    out.factor.tol = kDefaultTol;
    out.factor.U.resize(size, size);
    out.factor.V.resize(size, size);
    for (int a = 0; a < size; ++a) {
        double c = f.coeffs[static_cast<size_t>(a)];
        double sign = (c < 0.0) ? -1.0 : 1.0;
        double ru = std::sqrt(std::abs(c) / lambda);
        double rv = sign * std::sqrt(lambda * std::abs(c));
        for (int x = 0; x < size; ++x) {
            double chi = (std::popcount(static_cast<unsigned>(a & x)) & 1) ? -1.0 : 1.0;
            out.factor.U(x, a) = ru * chi;
            out.factor.V(a, x) = rv * chi;
        }
    }
    return out;
}

double halfgraph_lower_bound(int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    int order = 2 * n;
    double total = 0.0;
    for (int a = 0; a < order; ++a) {
        // 1_S hat at a, S = {0..n-1}, by direct summation.
        std::complex<double> step = std::polar(1.0, -2.0 * M_PI * a / order);
        std::complex<double> term(1.0, 0.0), sum(0.0, 0.0);
        for (int x = 0; x < n; ++x) {
            sum += term;
            term *= step;
        }
        total += std::abs(sum) / order;
    }
    return total;
}

namespace {

double reproduction_error(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v,
                          const Eigen::MatrixXd& target) {
    return (u * v - target).cwiseAbs().maxCoeff();
}

void clip_rows(Eigen::MatrixXd& u, double bound) {
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        double nrm = u.row(i).norm();
        if (nrm > bound) u.row(i) *= bound / nrm;
    }
}

void clip_cols(Eigen::MatrixXd& v, double bound) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        double nrm = v.col(j).norm();
        if (nrm > bound) v.col(j) *= bound / nrm;
    }
}

}  // namespace

AlsResult als_factorize(const BooleanMatrix& a, double lambda_target, const AlsOptions& opts) {
    if (lambda_target < 1.0) throw std::invalid_argument("lambda_target must be >= 1");
    int m = a.rows(), n = a.cols();
    int t = std::min(m + n, m * n);
    Eigen::MatrixXd target(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) target(i, j) = a.get(i, j) ? 1.0 : 0.0;

    AlsResult result;
    result.best_error = std::numeric_limits<double>::infinity();
    if (m == 0 || n == 0 || t == 0) {
        result.best_error = (m == 0 || n == 0) ? 0.0 : target.cwiseAbs().maxCoeff();
        if (result.best_error <= opts.tol) {
            Factorization f;
            f.U = Eigen::MatrixXd::Zero(m, t);
            f.V = Eigen::MatrixXd::Zero(t, n);
            f.lambda = lambda_target;
            result.factor = std::move(f);
            result.restart_used = 0;
        }
        return result;
    }

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    for (int restart = 0; restart <= opts.restarts; ++restart) {
        Eigen::MatrixXd u = Eigen::MatrixXd::Zero(m, t);
        Eigen::MatrixXd v = Eigen::MatrixXd::Zero(t, n);
        if (restart == 0) {
            // Split the SVD between the factors; exact whenever the optimal
            // factorization is an orthogonal block structure (e.g. blocky A).
            Eigen::BDCSVD<Eigen::MatrixXd> svd(target,
                                               Eigen::ComputeThinU | Eigen::ComputeThinV);
            Eigen::VectorXd roots = svd.singularValues().cwiseSqrt();
            int r = std::min<int>(static_cast<int>(roots.size()), t);
            u.leftCols(r) = svd.matrixU().leftCols(r) * roots.head(r).asDiagonal();
            v.topRows(r) = roots.head(r).asDiagonal() * svd.matrixV().leftCols(r).transpose();
        } else {
            for (Eigen::Index k = 0; k < t; ++k)
                for (Eigen::Index j = 0; j < n; ++j) v(k, j) = unif(rng);
        }
        clip_rows(u, 1.0);
        clip_cols(v, lambda_target);

        double err = std::numeric_limits<double>::infinity();
        int iter = 0;
        for (; iter < opts.max_iters; ++iter) {
            // U step: least squares rows against fixed V, then clip.
            Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> codv(v.transpose());
            u = codv.solve(target.transpose()).transpose();
            clip_rows(u, 1.0);
            // V step.
            Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> codu(u);
            v = codu.solve(target);
            clip_cols(v, lambda_target);
            err = reproduction_error(u, v, target);
            if (err <= opts.tol) break;
        }
        if (err < result.best_error) {
            result.best_error = err;
            result.iters_used = iter;
            result.restart_used = restart;
            if (err <= opts.tol) {
                Factorization f;
                f.U = u;
                f.V = v;
                f.lambda = lambda_target;
                f.tol = std::max(kDefaultTol, opts.tol);
                result.factor = std::move(f);
                break;
            }
        }
    }
    return result;
}

GroupFunction parse_group_function(std::istream& in) {
    int k;
    if (!(in >> k) || k < 0 || k > 30) throw ParseError("bad group function header, expected k", 1);
    std::string bits;
    if (!(in >> bits)) throw ParseError("missing value string", 2);
    size_t size = size_t{1} << k;
    if (bits.size() != size)
        throw ParseError("expected " + std::to_string(size) + " characters, got " +
                             std::to_string(bits.size()),
                         2);
    std::vector<uint8_t> values(size);
    for (size_t x = 0; x < size; ++x) {
        if (bits[x] == '1')
            values[x] = 1;
        else if (bits[x] != '0')
            throw ParseError(std::string("invalid character '") + bits[x] + "'", 2);
    }
    return make_group_function(k, std::move(values));
}

void write_group_function(std::ostream& out, const GroupFunction& f) {
    out << f.k << '\n';
    for (uint8_t v : f.values) out << (v ? '1' : '0');
    out << '\n';
}

}  // namespace blocky
