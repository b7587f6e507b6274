#ifndef GSM_LINALG_HPP
#define GSM_LINALG_HPP

#include "gsm/matrix.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gsm {

struct EigenDecomposition {
    Vector eigenvalues;   // ascending
    Matrix eigenvectors;  // orthonormal columns, one per eigenvalue
};

/// Thrown when a symmetric-only routine receives a non-symmetric matrix.
class SymmetryError : public std::invalid_argument {
public:
    SymmetryError(Index row, Index col, double deviation)
        : std::invalid_argument(describe(row, col, deviation)), row_(row), col_(col), deviation_(deviation) {}

    Index row() const { return row_; }
    Index col() const { return col_; }
    double deviation() const { return deviation_; }

private:
    static std::string describe(Index r, Index c, double d) {
        std::ostringstream os;
        os << "matrix is not symmetric: |a(" << r << "," << c << ") - a(" << c << "," << r << ")| = " << d;
        return os.str();
    }

    Index row_;
    Index col_;
    double deviation_;
};

inline void require_symmetric(const Matrix& a, double rel_tol = 1e-12) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matrix is not square");
    const double threshold = rel_tol * scale_of(a);
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = i + 1; j < a.cols(); ++j) {
            const double d = std::abs(a(i, j) - a(j, i));
            if (d > threshold) throw SymmetryError(i, j, d);
        }
}

inline EigenDecomposition eig_symmetric(const Matrix& a) {
    require_symmetric(a);
    if (a.rows() == 0) return {Vector(0), Matrix(0, 0)};
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    if (solver.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Zero-eigenvalue rule: lambda counts as zero iff lambda <= N * eps * lambda_max.
/// `relative` overrides the N * eps factor when positive.
struct TolerancePolicy {
    double relative = 0.0;

    double threshold(Index n, double spectral_max) const {
        const double rel = relative > 0.0 ? relative : static_cast<double>(n) * kEps;
        return rel * spectral_max;
    }
};

/// Moore-Penrose pseudoinverse of a symmetric PSD matrix through its
/// eigendecomposition; eigenvalues under the policy threshold are dropped.
inline Matrix pseudoinverse(const Matrix& a, TolerancePolicy policy = {}) {
    const auto ed = eig_symmetric(a);
    const Index n = a.rows();
    if (n == 0) return Matrix(0, 0);
    const double lmax = ed.eigenvalues.cwiseAbs().maxCoeff();
    const double thr = policy.threshold(n, lmax);
    Vector inv = Vector::Zero(n);
    for (Index k = 0; k < n; ++k)
        if (ed.eigenvalues(k) > thr) inv(k) = 1.0 / ed.eigenvalues(k);
    Matrix p = ed.eigenvectors * inv.asDiagonal() * ed.eigenvectors.transpose();
    // symmetrize: the product above is symmetric only up to rounding
    return 0.5 * (p + p.transpose());
}

inline Vector singular_values(const Matrix& a) {
    if (a.size() == 0) return Vector(0);
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues();
}

inline double rank_threshold(const Matrix& a, const Vector& sv, TolerancePolicy policy = {}) {
    const double smax = sv.size() ? sv(0) : 0.0;
    return policy.threshold(std::max(a.rows(), a.cols()), smax);
}

/// Numerical rank from singular values.
inline Index rank(const Matrix& a, TolerancePolicy policy = {}) {
    const Vector sv = singular_values(a);
    if (sv.size() == 0) return 0;
    const double thr = rank_threshold(a, sv, policy);
    Index r = 0;
    for (Index k = 0; k < sv.size(); ++k)
        if (sv(k) > thr) ++r;
    return r;
}

/// Orthonormal basis of the null space from a full SVD. Used as the
/// independent reference for closed-form null space constructions.
inline Matrix nullspace_oracle(const Matrix& a, TolerancePolicy policy = {}) {
    const Index n = a.cols();
    if (a.rows() == 0) return Matrix::Identity(n, n);
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
    const Vector sv = svd.singularValues();
    const double thr = rank_threshold(a, sv, policy);
    Index r = 0;
    for (Index k = 0; k < sv.size(); ++k)
        if (sv(k) > thr) ++r;
    return svd.matrixV().rightCols(n - r);
}

/// Orthonormal basis of the column space.
inline Matrix orthonormal_column_basis(const Matrix& a, TolerancePolicy policy = {}) {
    if (a.cols() == 0 || a.rows() == 0) return Matrix(a.rows(), 0);
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
    const Vector sv = svd.singularValues();
    const double thr = rank_threshold(a, sv, policy);
    Index r = 0;
    for (Index k = 0; k < sv.size(); ++k)
        if (sv(k) > thr) ++r;
    return svd.matrixU().leftCols(r);
}

/// Same column space: equal rank and each basis projects onto the other
/// with residual below `tol`.
inline bool column_space_equal(const Matrix& a, const Matrix& b, double tol = 1e-9) {
    if (a.rows() != b.rows()) throw std::invalid_argument("column_space_equal: row counts differ");
    const Matrix qa = orthonormal_column_basis(a);
    const Matrix qb = orthonormal_column_basis(b);
    if (qa.cols() != qb.cols()) return false;
    if (qa.cols() == 0) return true;
    const double ra = max_abs(Matrix(qa - qb * (qb.transpose() * qa)));
    const double rb = max_abs(Matrix(qb - qa * (qa.transpose() * qb)));
    return ra < tol && rb < tol;
}

/// Residuals of the four Penrose conditions, each relative to max(1, max|A|).
struct PenroseResiduals {
    double a_pinv_a = 0.0;        // A A+ A - A
    double pinv_a_pinv = 0.0;     // A+ A A+ - A+
    double a_pinv_symmetric = 0;  // (A A+)^T - A A+
    double pinv_a_symmetric = 0;  // (A+ A)^T - A+ A

    double worst() const { return std::max({a_pinv_a, pinv_a_pinv, a_pinv_symmetric, pinv_a_symmetric}); }
};

inline PenroseResiduals penrose_residuals(const Matrix& a, const Matrix& pinv) {
    const double s = scale_of(a);
    const Matrix ap = a * pinv;
    const Matrix pa = pinv * a;
    PenroseResiduals r;
    r.a_pinv_a = max_abs(Matrix(ap * a - a)) / s;
    r.pinv_a_pinv = max_abs(Matrix(pa * pinv - pinv)) / s;
    r.a_pinv_symmetric = max_abs(Matrix(ap.transpose() - ap)) / s;
    r.pinv_a_symmetric = max_abs(Matrix(pa.transpose() - pa)) / s;
    return r;
}

}  // namespace gsm

#endif  // GSM_LINALG_HPP
