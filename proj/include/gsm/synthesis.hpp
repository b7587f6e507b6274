#ifndef GSM_SYNTHESIS_HPP
#define GSM_SYNTHESIS_HPP

// Sparse synthesis model with dictionary L+, and its refinements on
// circulant graphs, where L+ = P^-1 L_C+ splits into cycle polynomials
// and a banded perturbation.

#include "gsm/analysis.hpp"
#include "gsm/circulant.hpp"
#include "gsm/graph.hpp"
#include "gsm/linalg.hpp"
#include "gsm/matrix.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gsm {

/// x = L+ restricted to the support columns, times coeffs.
inline SignalVector synthesize(const Matrix& lpinv, const std::vector<Index>& support, const Vector& coeffs) {
    if (coeffs.size() != static_cast<Index>(support.size()))
        throw std::invalid_argument("coefficient count must match support size");
    for (Index s : support)
        if (s < 0 || s >= lpinv.cols()) throw std::invalid_argument("support index out of range");
    return select_columns(lpinv, support) * coeffs;
}

inline SignalVector synthesize(const Graph& g, const std::vector<Index>& support, const Vector& coeffs) {
    if (!is_connected(g)) throw std::invalid_argument("synthesis requires a connected graph");
    return synthesize(pseudoinverse(laplacian(g)), support, coeffs);
}

/// Sum-zero test |sum c| <= tol * ||c||_1: the admissible coefficient
/// patterns of analysis-sparse signals on a connected graph.
inline bool structured_sparsity_check(const Vector& c, double tol = 1e-9) {
    return std::abs(c.sum()) <= tol * c.cwiseAbs().sum();
}

/// S+ = L+ S^T.
inline Matrix incidence_pinv(const Matrix& lpinv, const Matrix& s) { return lpinv * s.transpose(); }

inline double projection_residual(const Matrix& l, const Matrix& lpinv) {
    return max_abs(Matrix(l * lpinv - centering_projector(l.rows())));
}

/// max |L (L+ S^T) - S^T|.
inline double discontinuity_property_residual(const Graph& g) {
    const Matrix l = laplacian(g);
    const Matrix s = incidence(g);
    const Matrix lpinv = pseudoinverse(l);
    return max_abs(Matrix(l * incidence_pinv(lpinv, s) - s.transpose()));
}

struct TwoHopKnotReport {
    double residual = 0.0;              // max |L^2 L+ - L|
    bool applicable = false;            // L^2 has at least one structural zero
    std::optional<bool> knot_match;     // unset when not applicable
    std::vector<Index> knots;           // support of (L^2 L+)_j
    std::vector<Index> expected_knots;  // support of L_j
};

/// Knots of the atom (L+)_j under the 2-hop operator L^2 sit on the
/// support of the column L_j.
inline TwoHopKnotReport two_hop_knot_check(const Graph& g, Index j) {
    if (j < 0 || j >= g.n()) throw std::invalid_argument("vertex out of range");
    const Matrix l = laplacian(g);
    const Matrix l2 = l * l;
    const Matrix lpinv = pseudoinverse(l);
    const Matrix l2_lpinv = l2 * lpinv;
    TwoHopKnotReport r;
    r.residual = max_abs(Matrix(l2_lpinv - l));
    r.applicable = (l2.array().abs() <= kAbsoluteFloor * scale_of(l2)).any();
    r.expected_knots = relative_support(l.col(j));
    r.knots = relative_support(l2_lpinv.col(j));
    if (r.applicable) r.knot_match = r.knots == r.expected_knots;
    return r;
}

inline Index wrap(Index i, Index n) { return ((i % n) + n) % n; }

/// Cycle annihilators: order 1 is the edge difference x_i - x_{i+1},
/// order 2 is L_C x, order 4 is L_C^2 x.
inline Vector cyclic_annihilate(const Vector& x, int order) {
    const Index n = x.size();
    Vector y(n);
    switch (order) {
        case 1:
            for (Index i = 0; i < n; ++i) y(i) = x(i) - x(wrap(i + 1, n));
            return y;
        case 2:
            for (Index i = 0; i < n; ++i) y(i) = 2.0 * x(i) - x(wrap(i - 1, n)) - x(wrap(i + 1, n));
            return y;
        case 4:
            return cyclic_annihilate(cyclic_annihilate(x, 2), 2);
        default:
            throw std::invalid_argument("annihilator order must be 1, 2 or 4");
    }
}

/// p-th forward difference sum_k (-1)^(p-k) C(p,k) x_{i+k}, indices cyclic.
inline double forward_difference_at(const Vector& x, Index i, int p) {
    const Index n = x.size();
    double s = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= p; ++k) {
        const double sign = ((p - k) % 2 == 0) ? 1.0 : -1.0;
        s += sign * binom * x(wrap(i + k, n));
        binom = binom * (p - k) / (k + 1);
    }
    return s;
}

/// Largest |p-th forward difference| over windows [i, i+p] that have no
/// knot strictly inside.
inline double off_knot_difference_residual(const Vector& x, int p, const std::vector<Index>& knots) {
    const Index n = x.size();
    std::vector<bool> is_knot(static_cast<std::size_t>(n), false);
    for (Index k : knots) is_knot[static_cast<std::size_t>(wrap(k, n))] = true;
    double worst = 0.0;
    for (Index i = 0; i < n; ++i) {
        bool straddles = false;
        for (int t = 1; t < p; ++t)
            if (is_knot[static_cast<std::size_t>(wrap(i + t, n))]) straddles = true;
        if (!straddles) worst = std::max(worst, std::abs(forward_difference_at(x, i, p)));
    }
    return worst;
}

struct Segment {
    Index start = 0;  // first sample, vertex label
    Index length = 0; // number of consecutive cyclic samples
    std::optional<int> degree;  // unset when no degree up to the cap fits
    double fit_deviation = 0.0; // max residual of a least-squares fit of degree fit_degree
};

struct PiecewiseProfile {
    std::vector<Index> knots;
    std::vector<Segment> segments;
    int operator_order = 2;
    int fit_degree = 2;

    std::optional<int> max_degree() const {
        int best = 0;
        for (const auto& s : segments) {
            if (!s.degree) return std::nullopt;
            best = std::max(best, *s.degree);
        }
        return best;
    }
};

struct ProfileOptions {
    double tol = 1e-9;          // difference vanishes below tol * max(1, max|x|) * 2^p
    double knot_rel = 1e-7;     // knot iff deviation > knot_rel * peak deviation
    int max_degree = 6;
    int fit_degree = 2;
    std::optional<std::vector<Index>> knots;  // skip detection and use these
};

namespace detail {

inline Vector segment_samples(const Vector& x, Index start, Index length) {
    Vector s(length);
    for (Index t = 0; t < length; ++t) s(t) = x(wrap(start + t, x.size()));
    return s;
}

/// Offset b making y - b sparsest at resolution `thr`; ties keep 0.
inline double sparsest_offset(const Vector& y, double thr) {
    auto hits = [&](double b) { return ((y.array() - b).abs() <= thr).count(); };
    double best = 0.0;
    auto best_hits = hits(0.0);
    for (Index i = 0; i < y.size(); ++i) {
        const auto h = hits(y(i));
        if (h > best_hits) {
            best_hits = h;
            best = y(i);
        }
    }
    return best;
}

inline double polyfit_deviation(const Vector& s, int degree) {
    const Index len = s.size();
    const Index cols = std::min<Index>(degree + 1, len);
    if (cols == 0) return 0.0;
    Matrix v(len, cols);
    const double mid = 0.5 * static_cast<double>(len - 1);
    const double half = std::max(1.0, mid);
    for (Index t = 0; t < len; ++t) {
        double u = (static_cast<double>(t) - mid) / half, pw = 1.0;
        for (Index c = 0; c < cols; ++c, pw *= u) v(t, c) = pw;
    }
    const Vector coef = v.colPivHouseholderQr().solve(s);
    return max_abs(Vector(v * coef - s));
}

}  // namespace detail

/// Knots and per-segment polynomial degree of a signal on the cyclic
/// labeling. Knots are the entries of the order-d annihilator output that
/// differ from its most common value; that offset absorbs the constant
/// L_C L_C+ = I - J/n adds to synthesis signals. Segments run knot to knot
/// inclusive for even orders and from the sample after a knot for order 1.
inline PiecewiseProfile piecewise_degree_profile(const Vector& x, int annihilator_order, ProfileOptions opt = {}) {
    const Index n = x.size();
    if (n == 0) throw std::invalid_argument("empty signal");
    const Vector y = cyclic_annihilate(x, annihilator_order);
    const double xs = scale_of(x);

    PiecewiseProfile prof;
    prof.operator_order = annihilator_order;
    prof.fit_degree = opt.fit_degree;
    if (opt.knots) {
        for (Index k : *opt.knots) prof.knots.push_back(wrap(k, n));
        std::sort(prof.knots.begin(), prof.knots.end());
        prof.knots.erase(std::unique(prof.knots.begin(), prof.knots.end()), prof.knots.end());
    } else {
        const double base = detail::sparsest_offset(y, opt.knot_rel * max_abs(y));
        const Vector r = (y.array() - base).matrix();
        const double peak = max_abs(r);
        if (peak > opt.tol * xs) prof.knots = support_of(r, opt.knot_rel * peak);
    }

    auto add_segment = [&](Index start, Index length) {
        Segment seg;
        seg.start = wrap(start, n);
        seg.length = length;
        const Vector s = detail::segment_samples(x, start, length);
        for (int p = 0; p <= opt.max_degree; ++p) {
            const Index windows = length - (p + 1);
            double worst = 0.0;
            for (Index i = 0; i < windows; ++i) worst = std::max(worst, std::abs(forward_difference_at(s, i, p + 1)));
            if (windows <= 0 || worst <= opt.tol * xs * std::pow(2.0, p + 1)) {
                seg.degree = p;
                break;
            }
        }
        seg.fit_deviation = detail::polyfit_deviation(s, opt.fit_degree);
        prof.segments.push_back(seg);
    };

    const auto& k = prof.knots;
    if (k.empty()) {
        add_segment(0, n);
        return prof;
    }
    const bool odd = annihilator_order % 2 == 1;
    for (std::size_t a = 0; a < k.size(); ++a) {
        const Index from = k[a];
        const Index to = (a + 1 < k.size()) ? k[a + 1] : k[0] + n;
        if (odd)
            add_segment(from + 1, to - from);
        else
            add_segment(from, to - from + 1);
    }
    return prof;
}

struct Theorem2Report {
    double lemma2_residual = 0.0;
    double lemma2_scale = 1.0;
    // unperturbed analysis signals P x: second differences off the free vertices
    double analysis_offknot_residual = 0.0;
    std::optional<int> analysis_max_degree;
    bool analysis_knots_in_support = true;  // supp(L_C P x) within the free vertices
    // unperturbed synthesis atoms P (L+)_j = (L_C+)_j: third differences off vertex j
    double synthesis_offknot_residual = 0.0;
    std::optional<int> synthesis_max_degree;
    bool synthesis_knots_match = true;
    // the same second-difference measure on the perturbed analysis signals, for reference
    double perturbed_offknot_residual = 0.0;
    double tol = 1e-10;
    bool passed = false;
};

/// Checks on a circulant graph that the analysis subspace is piecewise
/// linear and the synthesis atoms piecewise quadratic once the factor
/// P^-1 is removed, and that P^-1 is exactly the perturbation.
inline Theorem2Report theorem2_verify(const CirculantSpec& spec, const Cosupport& lam, double tol = 1e-10) {
    const Index n = spec.n();
    if (lam.n() != n) throw std::invalid_argument("cosupport size does not match graph");
    const auto fact = lemma2_pinv_factorization(spec);
    const Matrix p = lemma1_decompose(spec).to_matrix();
    const Matrix lpinv = pseudoinverse(laplacian(compile_circulant(spec)));

    Theorem2Report rep;
    rep.tol = tol;
    rep.lemma2_residual = fact.residual;
    rep.lemma2_scale = fact.scale;

    const auto& comp = lam.complement();
    const Index m = static_cast<Index>(comp.size());
    if (m >= 2) {
        const auto basis = prop1_basis(lpinv, lam, w_matrix(m));
        int deg = 0;
        bool deg_known = true;
        for (Index c = 0; c < basis.smooth_part.cols(); ++c) {
            const Vector x = basis.smooth_part.col(c);
            const Vector u = p * x;
            const double s = scale_of(u);
            rep.analysis_offknot_residual = std::max(rep.analysis_offknot_residual,
                                                     off_knot_difference_residual(u, 2, comp) / s);
            rep.perturbed_offknot_residual = std::max(rep.perturbed_offknot_residual,
                                                      off_knot_difference_residual(x, 2, comp) / scale_of(x));
            for (Index kn : relative_support(cyclic_annihilate(u, 2)))
                if (!std::binary_search(comp.begin(), comp.end(), kn)) rep.analysis_knots_in_support = false;
            ProfileOptions opt;
            opt.knots = comp;
            const auto prof = piecewise_degree_profile(u, 2, opt);
            const auto md = prof.max_degree();
            if (!md) deg_known = false;
            else deg = std::max(deg, *md);
        }
        if (deg_known) rep.analysis_max_degree = deg;
    } else {
        rep.analysis_max_degree = 0;
    }

    int deg = 0;
    bool deg_known = true;
    for (Index j = 0; j < n; ++j) {
        const Vector u = p * lpinv.col(j);
        rep.synthesis_offknot_residual =
            std::max(rep.synthesis_offknot_residual, off_knot_difference_residual(u, 3, {j}) / scale_of(u));
        const auto prof = piecewise_degree_profile(u, 2);
        if (prof.knots != std::vector<Index>{j}) rep.synthesis_knots_match = false;
        const auto md = prof.max_degree();
        if (!md) deg_known = false;
        else deg = std::max(deg, *md);
    }
    if (deg_known) rep.synthesis_max_degree = deg;

    rep.passed = rep.lemma2_residual < 1e-8 * rep.lemma2_scale && rep.analysis_offknot_residual < tol &&
                 rep.synthesis_offknot_residual < tol && rep.analysis_max_degree && *rep.analysis_max_degree <= 1 &&
                 rep.synthesis_max_degree && *rep.synthesis_max_degree <= 2 && rep.analysis_knots_in_support &&
                 rep.synthesis_knots_match;
    return rep;
}

struct CompleteGraphResiduals {
    double residual_s = 0.0;  // max |S+ - S^T / n|
    double residual_l = 0.0;  // max |L+ - L / n^2|
};

inline CompleteGraphResiduals complete_graph_identities(Index n) {
    if (n < 2) throw std::invalid_argument("complete graph identities need n >= 2");
    const Graph g = complete_graph(n);
    const Matrix l = laplacian(g);
    const Matrix s = incidence(g);
    const Matrix lpinv = pseudoinverse(l);
    const double nn = static_cast<double>(n);
    return {max_abs(Matrix(incidence_pinv(lpinv, s) - s.transpose() / nn)), max_abs(Matrix(lpinv - l / (nn * nn)))};
}

struct AbsorptionResult {
    SignalVector p;
    SignalVector x;
    std::vector<Index> cycle_knots;           // support of L_C x
    std::vector<Index> expected_cycle_knots;  // {j + k, j + l} mod n
    std::vector<Index> graph_knots;           // support of L x
    std::vector<Index> expected_graph_knots;  // support of p
    double cycle_residual = 0.0;              // max |L_C x - (e_{j+k} - e_{j+l})|
    double graph_residual = 0.0;              // max |L x - p|
    bool passed = false;
};

/// p = (P_j * (e_k - e_l)) mod n, x = L+ p: x is 2-sparse under L_C and
/// sparse on supp(p) under L.
inline AbsorptionResult absorb_discontinuity(const CirculantSpec& spec, Index j, Index k, Index l) {
    const Index n = spec.n();
    for (Index v : {j, k, l})
        if (v < 0 || v >= n) throw std::invalid_argument("vertex out of range");
    if (k == l) throw std::invalid_argument("absorb_discontinuity needs k != l");
    const Matrix pm = lemma1_decompose(spec).to_matrix();
    const Matrix l_graph = laplacian(compile_circulant(spec));
    const Matrix lpinv = pseudoinverse(l_graph);

    AbsorptionResult r;
    r.p = Vector::Zero(n);
    for (Index t = 0; t < n; ++t) r.p(t) = pm(wrap(t - k, n), j) - pm(wrap(t - l, n), j);
    r.x = lpinv * r.p;

    const Matrix lc = cycle_representer(n).to_matrix();
    const Vector cyc = lc * r.x;
    const Vector target = unit_vector(n, wrap(j + k, n)) - unit_vector(n, wrap(j + l, n));
    r.cycle_residual = max_abs(Vector(cyc - target));
    r.graph_residual = max_abs(Vector(l_graph * r.x - r.p));
    r.cycle_knots = relative_support(cyc);
    r.expected_cycle_knots = relative_support(target);
    r.graph_knots = relative_support(Vector(l_graph * r.x));
    r.expected_graph_knots = relative_support(r.p);
    const double tol = 1e-9 * scale_of(r.p);
    r.passed = r.cycle_knots == r.expected_cycle_knots && r.graph_knots == r.expected_graph_knots &&
               r.cycle_residual < 1e-9 && r.graph_residual < tol;
    return r;
}

}  // namespace gsm

#endif  // GSM_SYNTHESIS_HPP
