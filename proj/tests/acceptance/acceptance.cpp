// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "gsm/gsm.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>

using namespace gsm;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

std::string fmt(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3e", v);
    return b;
}

constexpr std::uint64_t kSeed = 42;

Outcome mpp_axioms() {
    random::Rng rng(kSeed);
    double worst = 0.0, proj = 0.0;
    for (int t = 0; t < 50; ++t) {
        const Graph g = random::connected_graph(rng, random::uniform_index(rng, 2, 64));
        const Matrix l = laplacian(g);
        const Matrix lp = pseudoinverse(l);
        worst = std::max(worst, penrose_residuals(l, lp).worst());
        proj = std::max(proj, projection_residual(l, lp));
    }
    return {worst < 1e-9 && proj < 1e-9, "50 graphs, penrose " + fmt(worst) + ", L L+ - (I - J/n) " + fmt(proj)};
}

Outcome prop1() {
    random::Rng rng(kSeed + 1);
    int span_bad = 0, rank_bad = 0;
    for (int t = 0; t < 200; ++t) {
        const Graph g = random::connected_graph(rng, random::uniform_index(rng, 2, 40));
        const Cosupport lam = random::cosupport(rng, g.n(), 0, g.n() - 1);
        const Matrix b = prop1_basis(g, lam).matrix();
        if (!column_space_equal(b, nullspace_oracle(sampled_operator(laplacian(g), lam)))) ++span_bad;
        if (rank(b) != static_cast<Index>(lam.complement().size())) ++rank_bad;
    }
    return {span_bad == 0 && rank_bad == 0,
            "200 pairs, span mismatches " + std::to_string(span_bad) + ", rank mismatches " + std::to_string(rank_bad)};
}

Outcome cycle_closed_form() {
    double worst = 0.0;
    for (Index n = 3; n <= 256; ++n)
        worst = std::max(worst, max_abs(Matrix(cycle_pinv(n) - pseudoinverse(laplacian(cycle_graph(n))))));
    return {worst < 1e-9, "n = 3..256, max deviation " + fmt(worst)};
}

Outcome lemma1_and_2(bool lemma2) {
    random::Rng rng(kSeed + 3);
    Index int_bad = 0;
    double flt = 0.0, min_eig = std::numeric_limits<double>::infinity(), rel = 0.0;
    for (int t = 0; t < 100; ++t) {
        const auto spec = random::lemma1_spec(rng);
        const Index n = spec.n();
        const auto pi = lemma1_decompose<std::int64_t>(spec);
        if (!(poly_multiply_mod(pi, cycle_representer<std::int64_t>(n)) == laplacian_representer<std::int64_t>(spec))) ++int_bad;
        const Matrix pm = lemma1_decompose(spec).to_matrix();
        const Matrix l = laplacian(compile_circulant(spec));
        flt = std::max(flt, max_abs(Matrix(pm * cycle_representer(n).to_matrix() - l)));
        min_eig = std::min(min_eig, eig_symmetric(pm).eigenvalues(0));
        if (lemma2) {
            const auto f = lemma2_pinv_factorization(spec);
            rel = std::max(rel, f.residual / f.scale);
        }
    }
    if (lemma2) return {rel < 1e-8, "100 specs, max |P^-1 L_C+ - L+| / scale " + fmt(rel)};
    return {int_bad == 0 && flt < 1e-12 && min_eig > 0.0,
            "100 specs, integer mismatches " + std::to_string(int_bad) + ", float " + fmt(flt) + ", min eig(P) " +
                fmt(min_eig)};
}

Outcome theorem2() {
    const auto spec = CirculantSpec::unweighted(64, {1, 2, 3});
    const Cosupport lam = Cosupport::from_complement(64, {21, 41});
    const Matrix p = lemma1_decompose(spec).to_matrix();
    const Matrix lp = pseudoinverse(laplacian(compile_circulant(spec)));
    const auto basis = prop1_basis(lp, lam, w_matrix(2));
    double analysis = 0.0, synthesis = 0.0;
    for (Index c = 0; c < basis.smooth_part.cols(); ++c)
        analysis = std::max(analysis, off_knot_difference_residual(Vector(p * basis.smooth_part.col(c)), 2, lam.complement()));
    for (Index j = 0; j < 64; ++j)
        synthesis = std::max(synthesis, off_knot_difference_residual(Vector(p * lp.col(j)), 3, {j}));
    const auto rep = theorem2_verify(spec, lam);
    return {analysis < 1e-10 && synthesis < 1e-10 && rep.passed,
            "second differences " + fmt(analysis) + ", third differences " + fmt(synthesis) + ", degrees " +
                std::to_string(rep.analysis_max_degree.value_or(-1)) + "/" +
                std::to_string(rep.synthesis_max_degree.value_or(-1))};
}

Outcome complete_graphs() {
    double s = 0.0, l = 0.0;
    for (Index n = 2; n <= 32; ++n) {
        const auto r = complete_graph_identities(n);
        s = std::max(s, r.residual_s);
        l = std::max(l, r.residual_l);
    }
    return {s < 1e-10 && l < 1e-10, "n = 2..32, S+ " + fmt(s) + ", L+ " + fmt(l)};
}

Outcome discontinuity() {
    std::vector<Graph> graphs;
    for (Index n = 3; n <= 64; ++n) graphs.push_back(cycle_graph(n));
    for (Index n = 2; n <= 32; ++n) graphs.push_back(complete_graph(n));
    graphs.push_back(compile_circulant(CirculantSpec::unweighted(64, {1, 2, 3})));
    graphs.push_back(compile_circulant(CirculantSpec::unweighted(40, {1, 3, 4})));
    random::Rng rng(kSeed + 7);
    for (int t = 0; t < 50; ++t) graphs.push_back(random::connected_graph(rng, random::uniform_index(rng, 2, 64)));
    double worst = 0.0;
    for (const auto& g : graphs) worst = std::max(worst, discontinuity_property_residual(g));
    return {worst < 1e-9, std::to_string(graphs.size()) + " graphs, max |L L+ S^T - S^T| " + fmt(worst)};
}

Outcome kappa_spark() {
    int graphs = 0, bad = 0;
    for (const auto& spec : verify::small_connected_circulants(6)) {
        const Graph g = compile_circulant(spec);
        ++graphs;
        for (Index l = 0; l < g.n(); ++l)
            if (kappa_bruteforce(g, l) != g.n() - l || kappa(g, l).value != g.n() - l) ++bad;
        if (spark_pinv_bruteforce(g) != g.n()) ++bad;
    }
    return {bad == 0 && graphs > 0, std::to_string(graphs) + " connected circulants with n <= 6, mismatches " + std::to_string(bad)};
}

Outcome uniqueness() {
    const auto r = uniqueness_randomized_check(cycle_graph(6), 4, 4, 100, kSeed);
    return {r.passed, "100 trials x " + std::to_string(r.pairs_per_trial) + " subspace pairs, min gap " + fmt(r.min_gap)};
}

Outcome figure1() {
    namespace fs = std::filesystem;
    const fs::path out = fs::path(GSM_SCRATCH_DIR) / "fig1";
    fs::remove_all(out);
    cli::RunConfig cfg;
    cfg.command = "fig1";
    cfg.out_dir = out.string();
    if (cli::run(cfg) != 0) return {false, "fig1 command failed"};
    for (const char* f : {"fig1a.csv", "fig1b.csv", "fig1c.csv", "fig1a.svg", "fig1b.svg", "fig1c.svg"}) {
        if (!fs::exists(out / f)) return {false, std::string("missing ") + f};
        if (std::string(f).ends_with(".svg")) {
            const auto s = io::read_file((out / f).string());
            if (s.find(">vertex</text>") == std::string::npos || s.find("<polyline") == std::string::npos)
                return {false, std::string(f) + " lacks axis label or curve"};
        }
    }
    auto table = [&](const char* f) {
        const auto text = io::read_file((out / f).string());
        return io::matrix_from_csv(text.substr(text.find('\n') + 1));
    };
    const Matrix a = table("fig1a.csv"), b = table("fig1b.csv"), c = table("fig1c.csv");
    const Index n = 64;
    // (a): difference exactly piecewise linear with knots 21, 41
    const double a_lin = off_knot_difference_residual(Vector(a.col(3)), 2, {21, 41});
    // (b): deviation from (a) scaled by the DC gain of P^-1
    const double gain = lemma1_decompose(CirculantSpec::unweighted(n, {1, 2, 3})).evaluate_at_root(0);
    const Vector dev = b.col(3) - a.col(3) / gain;
    double total = 0.0, near = 0.0, peak = 0.0;
    Index peak_dist = 0;
    for (Index v = 0; v < n; ++v) {
        const Index d = std::min(cyclic_distance(v, 21, n), cyclic_distance(v, 41, n));
        total += dev(v) * dev(v);
        if (d <= 5) near += dev(v) * dev(v);
        if (std::abs(dev(v)) > peak) peak = std::abs(dev(v)), peak_dist = d;
    }
    // (c): L x vanishes off {21, 41}
    const auto cs = cosparsity(compile_circulant(CirculantSpec::unweighted(n, {1, 2, 3})), Vector(c.col(1)));
    const bool ok = a_lin < 1e-10 && peak_dist <= 5 && near / total >= 0.99 &&
                    cs.cosupport.complement() == std::vector<Index>{21, 41};
    return {ok, "(a) off-knot second difference " + fmt(a_lin) + "; (b) peak deviation at distance " +
                    std::to_string(peak_dist) + ", " + fmt(100.0 * near / total) + "% energy within 5 hops; (c) cosparsity " +
                    std::to_string(cs.level)};
}

Outcome negative_controls() {
    verify::Config cfg;
    cfg.trials = 20;
    const bool clean = verify::prop1_equivalence(cfg).passed() && verify::structured_synthesis(cfg).passed();
    cfg.fault = verify::Fault::w_off_by_one;
    const bool w_caught = !verify::prop1_equivalence(cfg).passed();
    cfg.fault = verify::Fault::nonzero_sum_coeffs;
    const bool c_caught = !verify::structured_synthesis(cfg).passed();
    return {clean && w_caught && c_caught, std::string("clean run ") + (clean ? "passes" : "fails") + ", W off-by-one " +
                                               (w_caught ? "caught" : "missed") + ", non-zero-sum coefficients " +
                                               (c_caught ? "caught" : "missed")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"mpp-axioms", mpp_axioms},
        {"prop1-equivalence", prop1},
        {"cycle-closed-form", cycle_closed_form},
        {"lemma1-exactness", [] { return lemma1_and_2(false); }},
        {"lemma2-residual", [] { return lemma1_and_2(true); }},
        {"theorem2-degrees", theorem2},
        {"complete-graph", complete_graphs},
        {"discontinuity-property", discontinuity},
        {"kappa-spark", kappa_spark},
        {"uniqueness", uniqueness},
        {"figure1", figure1},
        {"negative-controls", negative_controls},
    };
    const auto start = std::chrono::steady_clock::now();
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.ok) ++failed;
        std::printf("%s %2zu %-24s %s\n", o.ok ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/%zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(), secs);
    return failed == 0 ? 0 : 1;
}
