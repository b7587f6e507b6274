#ifndef GSM_CIRCULANT_HPP
#define GSM_CIRCULANT_HPP

#include "gsm/graph.hpp"
#include "gsm/linalg.hpp"
#include "gsm/matrix.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <type_traits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gsm {

/// Symmetric Laurent polynomial l(z) = l_0 + sum_i l_i (z^i + z^-i) reduced
/// mod z^n = 1, i.e. a symmetric circulant matrix with first row
/// [l_0, l_1, ..., l_K, 0, ..., 0, l_K, ..., l_1].
///
/// Coefficients run up to K <= n/2. For even n the coefficient at n/2 is
/// the single antipodal entry of the first row and is not doubled; this
/// keeps integer arithmetic exact when products wrap around.
template <class Scalar>
class BasicRepresenterPolynomial {
public:
    BasicRepresenterPolynomial(Index n, std::vector<Scalar> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
        if (n_ < 1) throw std::invalid_argument("representer polynomial needs n >= 1");
        if (coeffs_.empty()) coeffs_.push_back(Scalar{0});
        if (2 * (static_cast<Index>(coeffs_.size()) - 1) > n_)
            throw std::invalid_argument("representer bandwidth exceeds n/2");
        trim();
    }

    /// Recover the coefficients of a symmetric circulant from its first row.
    static BasicRepresenterPolynomial from_first_row(const std::vector<Scalar>& row) {
        const Index n = static_cast<Index>(row.size());
        for (Index i = 1; i < n; ++i)
            if (row[static_cast<std::size_t>(i)] != row[static_cast<std::size_t>(n - i)])
                throw std::invalid_argument("first row is not symmetric");
        std::vector<Scalar> c(row.begin(), row.begin() + n / 2 + 1);
        return BasicRepresenterPolynomial(n, std::move(c));
    }

    static BasicRepresenterPolynomial one(Index n) { return BasicRepresenterPolynomial(n, {Scalar{1}}); }

    Index n() const { return n_; }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    Index bandwidth() const { return static_cast<Index>(coeffs_.size()) - 1; }
    Scalar operator[](Index i) const {
        return i < static_cast<Index>(coeffs_.size()) ? coeffs_[static_cast<std::size_t>(i)] : Scalar{0};
    }

    std::vector<Scalar> first_row() const {
        std::vector<Scalar> row(static_cast<std::size_t>(n_), Scalar{0});
        row[0] = coeffs_[0];
        for (Index i = 1; i < static_cast<Index>(coeffs_.size()); ++i) {
            row[static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i)];
            row[static_cast<std::size_t>(n_ - i)] = coeffs_[static_cast<std::size_t>(i)];
        }
        return row;
    }

    Matrix to_matrix() const {
        const auto row = first_row();
        Matrix m(n_, n_);
        for (Index r = 0; r < n_; ++r)
            for (Index c = 0; c < n_; ++c)
                m(r, c) = static_cast<double>(row[static_cast<std::size_t>(((c - r) % n_ + n_) % n_)]);
        return m;
    }

    /// l(w^k) with w = exp(2 pi i / n); the k-th circulant eigenvalue.
    double evaluate_at_root(Index k) const {
        const auto row = first_row();
        double s = 0.0;
        for (Index m = 0; m < n_; ++m)
            s += static_cast<double>(row[static_cast<std::size_t>(m)]) *
                 std::cos(2.0 * std::numbers::pi * static_cast<double>(k * m % n_) / static_cast<double>(n_));
        return s;
    }

    Vector root_evaluations() const {
        Vector v(n_);
        for (Index k = 0; k < n_; ++k) v(k) = evaluate_at_root(k);
        return v;
    }

    friend bool operator==(const BasicRepresenterPolynomial&, const BasicRepresenterPolynomial&) = default;

private:
    void trim() {
        while (coeffs_.size() > 1 && coeffs_.back() == Scalar{0}) coeffs_.pop_back();
    }

    Index n_;
    std::vector<Scalar> coeffs_;
};

using RepresenterPolynomial = BasicRepresenterPolynomial<double>;
using IntegerRepresenterPolynomial = BasicRepresenterPolynomial<std::int64_t>;

namespace detail {

template <class Scalar>
Scalar weight_as(double w) {
    if constexpr (std::is_integral_v<Scalar>) {
        if (w != std::floor(w)) throw std::invalid_argument("integer arithmetic requested for non-integer weight");
    }
    return static_cast<Scalar>(w);
}

inline void require_strict_band(const CirculantSpec& spec) {
    if (2 * spec.bandwidth() >= spec.n())
        throw std::invalid_argument("bandwidth M = " + std::to_string(spec.bandwidth()) +
                                    " must satisfy M < n/2 (n = " + std::to_string(spec.n()) + ")");
}

}  // namespace detail

/// Representer of L for a circulant graph: l_0 = 2 sum d_k, l_{s_k} = -d_k.
template <class Scalar = double>
BasicRepresenterPolynomial<Scalar> laplacian_representer(const CirculantSpec& spec) {
    detail::require_strict_band(spec);
    std::vector<Scalar> c(static_cast<std::size_t>(spec.bandwidth()) + 1, Scalar{0});
    for (const auto& g : spec.generators()) {
        const Scalar d = detail::weight_as<Scalar>(g.weight);
        c[0] += 2 * d;
        c[static_cast<std::size_t>(g.hop)] = -d;
    }
    return BasicRepresenterPolynomial<Scalar>(spec.n(), std::move(c));
}

/// l_C(z) = 2 - z - z^-1, the simple cycle.
template <class Scalar = double>
BasicRepresenterPolynomial<Scalar> cycle_representer(Index n) {
    return BasicRepresenterPolynomial<Scalar>(n, {Scalar{2}, Scalar{-1}});
}

/// Product of two representers modulo z^n = 1 (cyclic convolution of first
/// rows). When the product's bandwidth reaches n/2 the result simply
/// carries coefficients up to n/2.
template <class Scalar>
BasicRepresenterPolynomial<Scalar> poly_multiply_mod(const BasicRepresenterPolynomial<Scalar>& a,
                                                     const BasicRepresenterPolynomial<Scalar>& b) {
    if (a.n() != b.n()) throw std::invalid_argument("poly_multiply_mod: ambient sizes differ");
    const Index n = a.n();
    const auto ra = a.first_row();
    const auto rb = b.first_row();
    // only k <= n/2: the mirrored half would differ by rounding in floating point
    std::vector<Scalar> out(static_cast<std::size_t>(n / 2) + 1, Scalar{0});
    for (Index k = 0; k <= n / 2; ++k)
        for (Index p = 0; p < n; ++p)
            out[static_cast<std::size_t>(k)] +=
                ra[static_cast<std::size_t>(p)] * rb[static_cast<std::size_t>(((k - p) % n + n) % n)];
    return BasicRepresenterPolynomial<Scalar>(n, std::move(out));
}

/// Closed-form entry of the cycle Laplacian pseudoinverse.
inline double cycle_pinv_entry(Index n, Index i, Index j) {
    if (n < 1 || i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("cycle_pinv_entry: index out of range");
    const double nn = static_cast<double>(n);
    const double t = static_cast<double>(j - i);
    return (nn - 1.0) * (nn + 1.0) / (12.0 * nn) - 0.5 * std::abs(t) + t * t / (2.0 * nn);
}

inline Matrix cycle_pinv(Index n) {
    if (n < 3) throw std::invalid_argument("cycle_pinv needs n >= 3");
    Matrix m(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) m(i, j) = cycle_pinv_entry(n, i, j);
    return m;
}

/// Perturbation factor P with L = P * L_C for a circulant graph containing
/// hop 1 and bandwidth M < n/2:
///   P(z) = sum_i i d_i + sum_{i=1}^{M-1} (sum_{k=i+1}^{M} (k - i) d_k) (z^i + z^-i).
template <class Scalar = double>
BasicRepresenterPolynomial<Scalar> lemma1_decompose(const CirculantSpec& spec) {
    if (!spec.contains(1)) throw std::invalid_argument("decomposition L = P L_C needs generator 1 in S");
    detail::require_strict_band(spec);
    const auto d = spec.weights_by_hop();
    const Index m = spec.bandwidth();
    std::vector<Scalar> c(static_cast<std::size_t>(m), Scalar{0});
    for (Index i = 1; i <= m; ++i) c[0] += static_cast<Scalar>(i) * detail::weight_as<Scalar>(d[static_cast<std::size_t>(i)]);
    for (Index i = 1; i < m; ++i)
        for (Index k = i + 1; k <= m; ++k)
            c[static_cast<std::size_t>(i)] +=
                static_cast<Scalar>(k - i) * detail::weight_as<Scalar>(d[static_cast<std::size_t>(k)]);
    return BasicRepresenterPolynomial<Scalar>(spec.n(), std::move(c));
}

/// Inverse of a circulant through its eigenvalues at the roots of unity.
inline Matrix circulant_inverse_transform(const RepresenterPolynomial& p) {
    const Index n = p.n();
    const Vector lam = p.root_evaluations();
    for (Index k = 0; k < n; ++k)
        if (std::abs(lam(k)) <= kAbsoluteFloor) throw std::invalid_argument("circulant is singular");
    std::vector<double> row(static_cast<std::size_t>(n), 0.0);
    for (Index m = 0; m < n; ++m) {
        double s = 0.0;
        for (Index k = 0; k < n; ++k)
            s += std::cos(2.0 * std::numbers::pi * static_cast<double>(k * m % n) / static_cast<double>(n)) / lam(k);
        row[static_cast<std::size_t>(m)] = s / static_cast<double>(n);
    }
    Matrix out(n, n);
    for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c) out(r, c) = row[static_cast<std::size_t>(((c - r) % n + n) % n)];
    return out;
}

struct PinvFactorization {
    Matrix p_inv;
    double residual = 0.0;            // max |P^-1 L_C+ - L+|
    double scale = 1.0;               // max(1, max |L+|)
    double transform_agreement = 0.0; // max |dense P^-1 - transform-domain P^-1|
};

/// L+ = P^-1 L_C+. P^-1 comes from a Cholesky solve of the positive
/// definite P; the residual is measured against the eigendecomposition
/// pseudoinverse of L.
inline PinvFactorization lemma2_pinv_factorization(const CirculantSpec& spec) {
    const auto p = lemma1_decompose(spec);
    const Index n = spec.n();
    const Matrix pm = p.to_matrix();
    Eigen::LLT<Matrix> llt(pm);
    if (llt.info() != Eigen::Success) throw std::runtime_error("perturbation factor is not positive definite");
    PinvFactorization out;
    out.p_inv = llt.solve(Matrix::Identity(n, n));
    const Matrix lpinv = pseudoinverse(laplacian(compile_circulant(spec)));
    out.scale = scale_of(lpinv);
    out.residual = max_abs(Matrix(out.p_inv * cycle_pinv(n) - lpinv));
    out.transform_agreement = max_abs(Matrix(out.p_inv - circulant_inverse_transform(p)));
    return out;
}

inline bool is_circulant(const Matrix& a, double tol = 1e-12) {
    if (a.rows() != a.cols()) return false;
    const Index n = a.rows();
    const double thr = tol * scale_of(a);
    for (Index r = 1; r < n; ++r)
        for (Index c = 0; c < n; ++c)
            if (std::abs(a(r, c) - a(0, ((c - r) % n + n) % n)) > thr) return false;
    return true;
}

inline Index cyclic_distance(Index i, Index j, Index n) {
    const Index d = ((i - j) % n + n) % n;
    return std::min(d, n - d);
}

struct DecayProfile {
    std::vector<std::pair<Index, double>> entries;  // (cyclic distance, max |entry|)
    bool strictly_decreasing = false;

    double at(Index distance) const { return entries.at(static_cast<std::size_t>(distance)).second; }
};

/// Largest |entry| at each cyclic distance 0..floor(n/2) from the diagonal.
inline DecayProfile decay_profile(const Matrix& p_inv) {
    if (!is_circulant(p_inv, 1e-9)) throw std::invalid_argument("decay_profile expects a circulant matrix");
    const Index n = p_inv.rows();
    DecayProfile prof;
    std::vector<double> best(static_cast<std::size_t>(n / 2 + 1), 0.0);
    for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c) {
            auto& b = best[static_cast<std::size_t>(cyclic_distance(r, c, n))];
            b = std::max(b, std::abs(p_inv(r, c)));
        }
    prof.strictly_decreasing = true;
    for (std::size_t d = 0; d < best.size(); ++d) {
        prof.entries.emplace_back(static_cast<Index>(d), best[d]);
        if (d > 0 && !(best[d] < best[d - 1])) prof.strictly_decreasing = false;
    }
    return prof;
}

}  // namespace gsm

#endif  // GSM_CIRCULANT_HPP
