#ifndef GSM_COMMANDS_HPP
#define GSM_COMMANDS_HPP

// Command implementations behind the gsm executable. Each returns the
// process exit code: 0 pass, 1 verification failure, 2 usage/input error.

#include "gsm/analysis.hpp"
#include "gsm/circulant.hpp"
#include "gsm/figure.hpp"
#include "gsm/graph.hpp"
#include "gsm/io.hpp"
#include "gsm/linalg.hpp"
#include "gsm/svg.hpp"
#include "gsm/synthesis.hpp"
#include "gsm/verify.hpp"

#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace gsm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
    std::string command;
    std::optional<std::string> graph_path;
    std::optional<std::string> circulant;  // inline JSON or path
    std::optional<std::vector<Index>> cosupport;
    std::optional<std::vector<Index>> support;
    std::optional<std::vector<double>> coeffs;
    std::string out_dir = ".";
    double tol = 1e-9;
    std::uint64_t seed = 42;
    Index trials = 50;
    verify::Fault fault = verify::Fault::none;
    figure::Fig1Config fig1;
};

/// Usage problems detected after parsing (missing/duplicate sources, bad indices).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GraphSource {
    Graph graph;
    std::optional<CirculantSpec> spec;
};

inline std::optional<GraphSource> resolve_graph(const RunConfig& cfg, bool required) {
    if (cfg.graph_path && cfg.circulant) throw UsageError("give exactly one of --graph and --circulant");
    if (cfg.graph_path) return GraphSource{io::load_graph(*cfg.graph_path), std::nullopt};
    if (cfg.circulant) {
        auto spec = io::load_circulant(*cfg.circulant);
        return GraphSource{compile_circulant(spec), spec};
    }
    if (required) throw UsageError("a graph is required: pass --graph <path> or --circulant <json>");
    return std::nullopt;
}

inline std::filesystem::path prepare_out(const RunConfig& cfg) {
    std::filesystem::path p(cfg.out_dir);
    std::filesystem::create_directories(p);
    return p;
}

inline void write_json(const std::filesystem::path& p, const nlohmann::json& j) { io::write_file(p.string(), j.dump(2) + "\n"); }

inline int cmd_operators(const RunConfig& cfg) {
    const auto src = resolve_graph(cfg, true);
    const Graph& g = src->graph;
    const auto out = prepare_out(cfg);
    const Matrix l = laplacian(g);
    const Matrix s = incidence(g);
    const Matrix lp = pseudoinverse(l);
    const Matrix sp = incidence_pinv(lp, s);
    io::write_file((out / "L.csv").string(), io::matrix_to_csv(l));
    io::write_file((out / "S.csv").string(), io::matrix_to_csv(s));
    io::write_file((out / "Lpinv.csv").string(), io::matrix_to_csv(lp));
    io::write_file((out / "Spinv.csv").string(), io::matrix_to_csv(sp));

    const Index comps = connected_components(g);
    nlohmann::json rep{{"n", g.n()},
                       {"edges", g.edge_count()},
                       {"components", comps},
                       {"connected", comps == 1},
                       {"rank", rank(l)},
                       {"incidence_gram_residual", max_abs(Matrix(s.transpose() * s - l))},
                       {"penrose_worst_relative", penrose_residuals(l, lp).worst()}};
    if (comps == 1) {
        rep["projection_identity_residual"] = projection_residual(l, lp);
        rep["discontinuity_property_residual"] = max_abs(Matrix(l * sp - s.transpose()));
    } else {
        rep["projection_identity_residual"] = nullptr;
        rep["note"] = "graph is disconnected: null space models are not available for it";
    }
    if (is_unweighted_complete(g) && g.n() >= 2) {
        const double nn = static_cast<double>(g.n());
        rep["complete_graph_residual_L"] = max_abs(Matrix(lp - l / (nn * nn)));
        rep["complete_graph_residual_S"] = max_abs(Matrix(sp - s.transpose() / nn));
    }
    if (src->spec && 2 * src->spec->bandwidth() < src->spec->n()) {
        rep["representer"] = io::representer_to_json(laplacian_representer(*src->spec));
        if (src->spec->contains(1)) rep["perturbation_representer"] = io::representer_to_json(lemma1_decompose(*src->spec));
    }
    write_json(out / "report.json", rep);
    return kExitOk;
}

inline void check_indices(const std::vector<Index>& idx, Index n, const char* what) {
    for (Index v : idx)
        if (v < 0 || v >= n) throw UsageError(std::string(what) + " index " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
}

inline int cmd_analysis_basis(const RunConfig& cfg) {
    const auto src = resolve_graph(cfg, true);
    const Graph& g = src->graph;
    if (cfg.cosupport.has_value() == cfg.support.has_value())
        throw UsageError("give exactly one of --cosupport (zero set) and --support (free vertices)");
    if (!is_connected(g)) throw UsageError("analysis basis needs a connected graph");
    const auto& idx = cfg.cosupport ? *cfg.cosupport : *cfg.support;
    check_indices(idx, g.n(), cfg.cosupport ? "cosupport" : "support");
    const Cosupport lam = cfg.cosupport ? Cosupport(g.n(), idx) : Cosupport::from_complement(g.n(), idx);

    const auto out = prepare_out(cfg);
    const Matrix l = laplacian(g);
    const auto basis = prop1_basis(g, lam);
    const Matrix b = basis.matrix();
    io::write_file((out / "basis.csv").string(), io::matrix_to_csv(b));
    write_json(out / "cosupport.json", io::cosupport_to_json(lam));

    nlohmann::json cols = nlohmann::json::array();
    std::vector<bool> knot(static_cast<std::size_t>(g.n()), false);
    for (Index c = 0; c < basis.smooth_part.cols(); ++c) {
        const auto cs = cosparsity(g, basis.smooth_part.col(c), cfg.tol);
        for (Index k : cs.cosupport.complement()) knot[static_cast<std::size_t>(k)] = true;
        cols.push_back({{"column", c + 1}, {"cosparsity", cs.level}, {"knots", cs.cosupport.complement()}});
    }
    std::vector<Index> recovered;
    for (Index v = 0; v < g.n(); ++v)
        if (!knot[static_cast<std::size_t>(v)]) recovered.push_back(v);
    nlohmann::json rep{{"n", g.n()},
                       {"cosupport", lam.lambda()},
                       {"complement", lam.complement()},
                       {"rank", rank(b)},
                       {"fully_annihilated", basis.fully_annihilated},
                       {"oracle_match", column_space_equal(b, nullspace_oracle(sampled_operator(l, lam)), cfg.tol)},
                       {"smooth_columns", cols},
                       {"cosupport_recovered", recovered}};
    write_json(out / "report.json", rep);
    return kExitOk;
}

inline int cmd_synth(const RunConfig& cfg) {
    const auto src = resolve_graph(cfg, true);
    const Graph& g = src->graph;
    if (!cfg.support) throw UsageError("synth needs --support");
    if (!is_connected(g)) throw UsageError("synthesis needs a connected graph");
    const auto& sup = *cfg.support;
    check_indices(sup, g.n(), "support");
    std::vector<double> coeffs = cfg.coeffs ? *cfg.coeffs : std::vector<double>(sup.size(), 1.0);
    if (coeffs.size() != sup.size()) throw UsageError("--coeffs must have one value per support index");

    const auto out = prepare_out(cfg);
    const Vector c = Eigen::Map<const Vector>(coeffs.data(), static_cast<Index>(coeffs.size()));
    const Vector x = synthesize(pseudoinverse(laplacian(g)), sup, c);
    io::write_file((out / "signal.csv").string(), io::signal_to_csv(x));
    const auto cs = cosparsity(g, x, cfg.tol);
    const bool structured = structured_sparsity_check(c, cfg.tol);
    nlohmann::json rep{{"n", g.n()},
                       {"support", sup},
                       {"coeffs", coeffs},
                       {"cosparsity", cs.level},
                       {"knots", cs.cosupport.complement()},
                       {"structured_sparsity", structured}};
    if (!structured) {
        rep["warning"] = "coefficients do not sum to zero: L x is not sparse";
        std::cerr << "warning: coefficients do not sum to zero; the signal is not analysis-sparse\n";
    }
    write_json(out / "report.json", rep);
    return kExitOk;
}

inline int cmd_fig1(const RunConfig& cfg) {
    const auto f = figure::make_fig1(cfg.fig1);
    const auto out = prepare_out(cfg);
    const auto& fc = cfg.fig1;
    const std::string si = std::to_string(fc.i), sj = std::to_string(fc.j);
    std::string hops;
    for (Index h : fc.wide_hops) hops += (hops.empty() ? "" : ",") + std::to_string(h);

    auto panel_files = [&](const figure::Panel& p, const std::string& stem, const std::string& title) {
        io::write_file((out / (stem + ".csv")).string(),
                       io::series_to_csv({"atom_" + si, "atom_" + sj, "difference"}, {p.atom_i, p.atom_j, p.difference}));
        io::write_file((out / (stem + ".svg")).string(),
                       svg::line_plot({{"L+ e_" + si, p.atom_i, "#1f77b4"},
                                       {"L+ e_" + sj, p.atom_j, "#ff7f0e"},
                                       {"L+ (e_" + si + " - e_" + sj + ")", p.difference, "#2ca02c"}},
                                      {title, "vertex", "value"}));
    };
    panel_files(f.cycle, "fig1a", "(a) atoms and difference, S = {1}");
    panel_files(f.wide, "fig1b", "(b) atoms and difference, S = {" + hops + "}");
    io::write_file((out / "fig1c.csv").string(), io::signal_to_csv(f.panel_c));
    io::write_file((out / "fig1c.svg").string(),
                   svg::line_plot({{"L+ (e_" + si + " - e_" + sj + ")", f.panel_c, "#d62728", true}},
                                  {"(c) vertex-domain signal, S = {" + hops + "}", "vertex", "value"}));

    const auto& m = f.metrics;
    nlohmann::json rep{{"n", fc.n},
                       {"atoms", {fc.i, fc.j}},
                       {"wide_hops", fc.wide_hops},
                       {"atom_second_difference_residual", m.atom_second_difference_residual},
                       {"difference_second_difference_offknot", m.difference_second_difference_offknot},
                       {"dc_gain", m.dc_gain},
                       {"deviation_peak", m.deviation_peak},
                       {"deviation_peak_distance", m.deviation_peak_distance},
                       {"deviation_energy_near_knots", m.deviation_energy_near_knots},
                       {"deviation_peak_far", m.deviation_peak_far},
                       {"knot_radius", fc.knot_radius},
                       {"panel_c_knots", m.panel_c_knots},
                       {"panel_c_cosparsity", m.panel_c_cosparsity}};
    write_json(out / "fig1_report.json", rep);
    return kExitOk;
}

inline int cmd_verify(const RunConfig& cfg) {
    verify::Config vc;
    vc.seed = cfg.seed;
    vc.trials = cfg.trials;
    vc.tol = cfg.tol;
    vc.fault = cfg.fault;
    if (auto src = resolve_graph(cfg, false)) {
        vc.graph = src->graph;
        vc.spec = src->spec;
    }
    const auto rep = verify::run_all(vc);
    const auto out = prepare_out(cfg);
    write_json(out / "verify_report.json", rep.to_json());
    for (const auto& s : rep.suites) std::cout << (s.passed() ? "PASS " : "FAIL ") << s.name << "\n";
    if (auto f = rep.first_failure()) {
        std::cerr << "verification failed: " << *f << "\n";
        return kExitVerifyFailed;
    }
    return kExitOk;
}

/// Dispatch with the error-to-exit-code mapping.
inline int run(const RunConfig& cfg) {
    try {
        if (cfg.command == "operators") return cmd_operators(cfg);
        if (cfg.command == "analysis-basis") return cmd_analysis_basis(cfg);
        if (cfg.command == "synth") return cmd_synth(cfg);
        if (cfg.command == "fig1") return cmd_fig1(cfg);
        if (cfg.command == "verify") return cmd_verify(cfg);
        throw UsageError("unknown command '" + cfg.command + "'");
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const io::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace gsm::cli

#endif  // GSM_COMMANDS_HPP
