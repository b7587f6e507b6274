#ifndef GSM_FIGURE_HPP
#define GSM_FIGURE_HPP

// Atom / difference curves on the cycle and on a wider circulant, plus
// the quantities that describe their shape.

#include "gsm/analysis.hpp"
#include "gsm/circulant.hpp"
#include "gsm/synthesis.hpp"

#include <cmath>
#include <vector>

namespace gsm::figure {

struct Fig1Config {
    Index n = 64;
    Index i = 21;
    Index j = 41;
    std::vector<Index> wide_hops{1, 2, 3};
    Index knot_radius = 5;
};

struct Panel {
    CirculantSpec spec;
    Vector atom_i;
    Vector atom_j;
    Vector difference;  // atom_i - atom_j = L+ (e_i - e_j)
};

struct Fig1Metrics {
    // panel (a): atoms have second difference 1/n off their knot, the
    // difference has none off {i, j}
    double atom_second_difference_residual = 0.0;
    double difference_second_difference_offknot = 0.0;
    // panel (b) against (a) scaled by 1/P(1), the DC gain of P^-1
    double dc_gain = 1.0;
    double deviation_peak = 0.0;
    Index deviation_peak_distance = 0;  // cyclic index distance from the nearest knot
    double deviation_energy_near_knots = 0.0;  // fraction within knot_radius
    double deviation_peak_far = 0.0;           // largest deviation beyond knot_radius
    // panel (c): knots of L x on the wide graph
    std::vector<Index> panel_c_knots;
    Index panel_c_cosparsity = 0;
};

struct Fig1 {
    Fig1Config config;
    Panel cycle;
    Panel wide;
    Vector panel_c;  // equals wide.difference
    Fig1Metrics metrics;
};

inline Panel make_panel(const CirculantSpec& spec, Index i, Index j) {
    const Matrix lp = pseudoinverse(laplacian(compile_circulant(spec)));
    Vector coeffs(2);
    coeffs << 1.0, -1.0;
    return {spec, lp.col(i), lp.col(j), synthesize(lp, {i, j}, coeffs)};
}

inline Fig1 make_fig1(const Fig1Config& cfg = {}) {
    const Index n = cfg.n;
    if (cfg.i < 0 || cfg.j < 0 || cfg.i >= n || cfg.j >= n) throw std::invalid_argument("atom index out of range");
    Fig1 f{cfg, make_panel(CirculantSpec::unweighted(n, {1}), cfg.i, cfg.j),
           make_panel(CirculantSpec::unweighted(n, cfg.wide_hops), cfg.i, cfg.j), Vector(), {}};
    f.panel_c = f.wide.difference;
    auto& m = f.metrics;

    const double inv_n = 1.0 / static_cast<double>(n);
    for (const auto& [atom, knot] : {std::pair{f.cycle.atom_i, cfg.i}, std::pair{f.cycle.atom_j, cfg.j}}) {
        const Vector y = cyclic_annihilate(atom, 2);
        for (Index v = 0; v < n; ++v)
            if (v != knot) m.atom_second_difference_residual = std::max(m.atom_second_difference_residual, std::abs(y(v) + inv_n));
    }
    {
        const Vector y = cyclic_annihilate(f.cycle.difference, 2);
        for (Index v = 0; v < n; ++v)
            if (v != cfg.i && v != cfg.j)
                m.difference_second_difference_offknot = std::max(m.difference_second_difference_offknot, std::abs(y(v)));
    }

    m.dc_gain = lemma1_decompose(f.wide.spec).evaluate_at_root(0);
    const Vector dev = f.wide.difference - f.cycle.difference / m.dc_gain;
    double total = 0.0, near = 0.0;
    for (Index v = 0; v < n; ++v) {
        const Index dist = std::min(cyclic_distance(v, cfg.i, n), cyclic_distance(v, cfg.j, n));
        const double e = dev(v) * dev(v);
        total += e;
        if (dist <= cfg.knot_radius) near += e;
        else m.deviation_peak_far = std::max(m.deviation_peak_far, std::abs(dev(v)));
        if (std::abs(dev(v)) > m.deviation_peak) {
            m.deviation_peak = std::abs(dev(v));
            m.deviation_peak_distance = dist;
        }
    }
    m.deviation_energy_near_knots = total > 0.0 ? near / total : 1.0;

    const auto cs = cosparsity(compile_circulant(f.wide.spec), f.panel_c);
    m.panel_c_knots = cs.cosupport.complement();
    m.panel_c_cosparsity = cs.level;
    return f;
}

}  // namespace gsm::figure

#endif  // GSM_FIGURE_HPP
