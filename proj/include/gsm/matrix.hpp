#ifndef GSM_MATRIX_HPP
#define GSM_MATRIX_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Vertex signal x in R^n, indexed by vertex label.
using SignalVector = Eigen::VectorXd;

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr double kAbsoluteFloor = 1e-12;

/// Largest absolute entry. Every `‖·‖∞` residual in this library is this
/// entrywise max norm; zero for empty matrices.
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

/// Reference magnitude used to turn relative tolerances into absolute ones.
template <class Derived>
double scale_of(const Eigen::MatrixBase<Derived>& a) {
    return std::max(1.0, max_abs(a));
}

template <class Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
    return a.allFinite();
}

inline Matrix centering_projector(Index n) {
    return Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
}

/// Indicator vector e_i of length n.
inline Vector unit_vector(Index n, Index i) {
    Vector e = Vector::Zero(n);
    e(i) = 1.0;
    return e;
}

/// Columns of `a` listed in `cols`, in that order.
inline Matrix select_columns(const Matrix& a, const std::vector<Index>& cols) {
    Matrix out(a.rows(), static_cast<Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Index>(k)) = a.col(cols[k]);
    return out;
}

inline Matrix select_rows(const Matrix& a, const std::vector<Index>& rows) {
    Matrix out(static_cast<Index>(rows.size()), a.cols());
    for (std::size_t k = 0; k < rows.size(); ++k) out.row(static_cast<Index>(k)) = a.row(rows[k]);
    return out;
}

/// Sampling matrix Psi with Psi(k, idx[k]) = 1, so that Psi * x = x restricted to idx.
inline Matrix sampling_matrix(Index n, const std::vector<Index>& idx) {
    Matrix psi = Matrix::Zero(static_cast<Index>(idx.size()), n);
    for (std::size_t k = 0; k < idx.size(); ++k) psi(static_cast<Index>(k), idx[k]) = 1.0;
    return psi;
}

/// Indices i with |v_i| > threshold, ascending.
inline std::vector<Index> support_of(const Vector& v, double threshold) {
    std::vector<Index> s;
    for (Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > threshold) s.push_back(i);
    return s;
}

/// Support under the knot rule: |v_i| > rel * max|v|, empty when v vanishes.
inline std::vector<Index> relative_support(const Vector& v, double rel = 1e-7) {
    const double peak = max_abs(v);
    if (peak <= kAbsoluteFloor) return {};
    return support_of(v, rel * peak);
}

}  // namespace gsm

#endif  // GSM_MATRIX_HPP
