#ifndef GSM_ANALYSIS_HPP
#define GSM_ANALYSIS_HPP

// Cosparse analysis model with the graph Laplacian as analysis operator:
// null spaces of the row-sampled Laplacian, cosparsity, and the
// uniqueness measures (kappa, spark) derived from them.

#include "gsm/graph.hpp"
#include "gsm/linalg.hpp"
#include "gsm/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace gsm {

/// Zero-sum basis W of size m x (m-1): column k holds m-1-k on row k and
/// -1 on every row below it.
inline Matrix w_matrix(Index m) {
    if (m < 1) throw std::invalid_argument("w_matrix needs m >= 1");
    Matrix w = Matrix::Zero(m, m - 1);
    for (Index k = 0; k < m - 1; ++k) {
        w(k, k) = static_cast<double>(m - 1 - k);
        for (Index r = k + 1; r < m; ++r) w(r, k) = -1.0;
    }
    return w;
}

/// Psi_{Lambda}^T-lifted W: the n x (m-1) matrix placing the rows of W on
/// the complement indices.
inline Matrix lifted_w(const Cosupport& lam, const Matrix& w) {
    const auto& comp = lam.complement();
    if (w.rows() != static_cast<Index>(comp.size()))
        throw std::invalid_argument("W row count must equal the complement size");
    return sampling_matrix(lam.n(), comp).transpose() * w;
}

/// Rows Lambda of L.
inline Matrix sampled_operator(const Matrix& l, const Cosupport& lam) { return select_rows(l, lam.lambda()); }

/// N(Psi_Lambda L) = span{1_N} + L+ Psi^T W c.
struct NullspaceBasis {
    Vector constant_part;
    Matrix smooth_part;
    Cosupport cosupport;
    // |Lambda| = n: only the constant signals survive, smooth_part is empty.
    bool fully_annihilated = false;

    Matrix matrix() const {
        Matrix b(constant_part.size(), smooth_part.cols() + 1);
        b.col(0) = constant_part;
        b.rightCols(smooth_part.cols()) = smooth_part;
        return b;
    }
};

/// Null space basis from a precomputed L+ and an explicit W. Callers are
/// responsible for connectivity.
inline NullspaceBasis prop1_basis(const Matrix& lpinv, const Cosupport& lam, const Matrix& w) {
    const Index n = lam.n();
    if (lpinv.rows() != n || lpinv.cols() != n) throw std::invalid_argument("pseudoinverse size does not match cosupport");
    NullspaceBasis b{Vector::Ones(n), Matrix(n, 0), lam, false};
    if (lam.complement().empty()) {
        b.fully_annihilated = true;
        return b;
    }
    b.smooth_part = lpinv * lifted_w(lam, w);
    return b;
}

inline NullspaceBasis prop1_basis(const Graph& g, const Cosupport& lam) {
    if (lam.n() != g.n()) throw std::invalid_argument("cosupport size does not match graph");
    if (!is_connected(g))
        throw std::invalid_argument("null space basis requires a connected graph (disconnected case unsupported)");
    const Index m = static_cast<Index>(lam.complement().size());
    const Matrix lpinv = pseudoinverse(laplacian(g));
    return prop1_basis(lpinv, lam, m > 0 ? w_matrix(m) : Matrix(0, 0));
}

/// Columns e_{c_k} - e_{c_{k+1}} over consecutive complement indices.
inline Matrix pairwise_difference_basis(const Cosupport& lam) {
    const auto& comp = lam.complement();
    if (comp.size() < 2) throw std::invalid_argument("pairwise difference basis needs at least two free vertices");
    Matrix b = Matrix::Zero(lam.n(), static_cast<Index>(comp.size()) - 1);
    for (std::size_t k = 0; k + 1 < comp.size(); ++k) {
        b(comp[k], static_cast<Index>(k)) = 1.0;
        b(comp[k + 1], static_cast<Index>(k)) = -1.0;
    }
    return b;
}

struct CosparsityResult {
    Index level = 0;  // number of zeros of L x
    Cosupport cosupport;
};

/// Zeros of y = L x: |y_i| <= tol * max|y|, or every index when y vanishes.
inline CosparsityResult cosparsity_of_response(const Vector& y, double tol = 1e-9) {
    const Index n = y.size();
    const double peak = max_abs(y);
    std::vector<Index> zeros;
    for (Index i = 0; i < n; ++i)
        if (peak <= kAbsoluteFloor || std::abs(y(i)) <= tol * peak) zeros.push_back(i);
    const Index level = static_cast<Index>(zeros.size());
    return {level, Cosupport(n, std::move(zeros))};
}

inline CosparsityResult cosparsity(const Graph& g, const SignalVector& x, double tol = 1e-9) {
    if (x.size() != g.n()) throw std::invalid_argument("signal length does not match graph");
    return cosparsity_of_response(laplacian(g) * x, tol);
}

struct KappaResult {
    Index value = 0;
    // l >= n: the signal is constant; the formula n - l does not apply.
    bool full_annihilation = false;
};

/// kappa_L(l) = n - l for l < n on a connected graph.
inline KappaResult kappa(const Graph& g, Index l) {
    if (!is_connected(g)) throw std::invalid_argument("kappa requires a connected graph");
    if (l < 0) throw std::invalid_argument("cosparsity level must be non-negative");
    if (l >= g.n()) return {1, true};
    return {g.n() - l, false};
}

namespace detail {

template <class F>
void for_each_subset_of_size(Index n, Index k, F&& f) {
    std::vector<Index> idx(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        f(idx);
        Index i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (Index j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace detail

/// max over |Lambda| >= l of dim N(Psi_Lambda L), by exhaustive enumeration.
inline Index kappa_bruteforce(const Graph& g, Index l) {
    const Matrix lap = laplacian(g);
    Index best = 0;
    for (Index size = std::max<Index>(l, 0); size <= g.n(); ++size)
        detail::for_each_subset_of_size(g.n(), size, [&](const std::vector<Index>& s) {
            const Matrix rows = select_rows(lap, s);
            best = std::max(best, nullspace_oracle(rows).cols());
        });
    return best;
}

struct UniquenessBound {
    Index m_min = 0;
    // l >= n: x is constant, so no measurement count is needed.
    bool special_case = false;
};

/// Measurements sufficient for at most one l-cosparse solution: 2 (n - l).
inline UniquenessBound uniqueness_bound(Index n, Index l) {
    if (l >= n) return {0, true};
    return {2 * (n - l), false};
}

/// Smallest number of linearly dependent columns; cols + 1 when the
/// columns are independent. Exhaustive, so keep the column count small.
inline Index spark(const Matrix& a, TolerancePolicy policy = {}) {
    const Index c = a.cols();
    for (Index k = 1; k <= c; ++k) {
        bool dependent = false;
        detail::for_each_subset_of_size(c, k, [&](const std::vector<Index>& s) {
            if (!dependent && rank(select_columns(a, s), policy) < k) dependent = true;
        });
        if (dependent) return k;
    }
    return c + 1;
}

/// spark(L+) = n for a connected graph.
inline Index spark_pinv(const Graph& g) {
    if (!is_connected(g)) throw std::invalid_argument("spark of L+ requires a connected graph");
    return g.n();
}

inline Index spark_pinv_bruteforce(const Graph& g) { return spark(pseudoinverse(laplacian(g))); }

/// Smallest singular value among all columns of `a`-subsets of size `k`;
/// used to show every (n-1)-subset of L+ columns is well conditioned.
inline double min_subset_singular_value(const Matrix& a, Index k) {
    double best = std::numeric_limits<double>::infinity();
    detail::for_each_subset_of_size(a.cols(), k, [&](const std::vector<Index>& s) {
        const Vector sv = singular_values(select_columns(a, s));
        best = std::min(best, sv(sv.size() - 1));
    });
    return best;
}

struct UniquenessTrialReport {
    Index trials = 0;
    Index pairs_per_trial = 0;
    // Smallest sigma_min(M B) over trials and cosupport pairs, where B spans
    // W_Lambda1 + W_Lambda2. Zero means two signals share measurements.
    double min_gap = std::numeric_limits<double>::infinity();
    bool passed = false;
};

/// Randomized evidence for the uniqueness bound: draw Gaussian M (m x n)
/// and check that M is injective on every sum of two l-cosparse subspaces.
inline UniquenessTrialReport uniqueness_randomized_check(const Graph& g, Index l, Index m, Index trials,
                                                         std::uint64_t seed, double gap_tol = 1e-6) {
    if (!is_connected(g)) throw std::invalid_argument("uniqueness check requires a connected graph");
    const Index n = g.n();
    const Matrix lap = laplacian(g);
    std::vector<Matrix> spaces;
    detail::for_each_subset_of_size(n, l, [&](const std::vector<Index>& s) {
        spaces.push_back(nullspace_oracle(select_rows(lap, s)));
    });

    std::vector<Matrix> sums;
    for (std::size_t a = 0; a < spaces.size(); ++a)
        for (std::size_t b = a; b < spaces.size(); ++b) {
            Matrix both(n, spaces[a].cols() + spaces[b].cols());
            both << spaces[a], spaces[b];
            sums.push_back(orthonormal_column_basis(both));
        }

    UniquenessTrialReport rep;
    rep.trials = trials;
    rep.pairs_per_trial = static_cast<Index>(sums.size());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (Index t = 0; t < trials; ++t) {
        Matrix meas(m, n);
        for (Index i = 0; i < m; ++i)
            for (Index j = 0; j < n; ++j) meas(i, j) = gauss(rng);
        for (const auto& basis : sums) {
            double gap = 0.0;
            if (basis.cols() <= m) {
                const Vector sv = singular_values(meas * basis);
                gap = sv(sv.size() - 1);
            }
            rep.min_gap = std::min(rep.min_gap, gap);
        }
    }
    rep.passed = rep.min_gap > gap_tol;
    return rep;
}

}  // namespace gsm

#endif  // GSM_ANALYSIS_HPP
