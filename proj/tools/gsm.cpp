// gsm: graph operators, analysis/synthesis bases, verification, figure 1.

#include "gsm/commands.hpp"

#include <CLI11.hpp>

#include <map>

namespace {

struct RawFlags {
    std::string graph, circulant, cosupport, support, coeffs;
    std::string fault = "none";
    std::string hops = "1,2,3";
};

void add_graph_flags(CLI::App* sub, RawFlags& raw) {
    sub->add_option("--graph", raw.graph, "edge list (\"i j [w]\" per line) or graph JSON");
    sub->add_option("--circulant", raw.circulant, "circulant spec, inline JSON or path");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph signal models: operators, analysis/synthesis bases, verification"};
    app.require_subcommand(1);
    gsm::cli::RunConfig cfg;
    RawFlags raw;

    auto* ops = app.add_subcommand("operators", "write L, S and their pseudoinverses with a report");
    add_graph_flags(ops, raw);

    auto* basis = app.add_subcommand("analysis-basis", "null-space basis of the sampled Laplacian");
    add_graph_flags(basis, raw);
    basis->add_option("--cosupport", raw.cosupport, "zero set of L x, comma list");
    basis->add_option("--support", raw.support, "vertices where L x may be nonzero, comma list");

    auto* synth = app.add_subcommand("synth", "x = L+ (sum of c_k e_k)");
    add_graph_flags(synth, raw);
    synth->add_option("--support", raw.support, "atom indices, comma list")->required();
    synth->add_option("--coeffs", raw.coeffs, "coefficients, comma list (default all ones)");

    auto* fig = app.add_subcommand("fig1", "atom and difference curves on two circulants");
    fig->add_option("--n", cfg.fig1.n, "vertices")->check(CLI::Range(3, 4096));
    fig->add_option("--i", cfg.fig1.i, "first atom");
    fig->add_option("--j", cfg.fig1.j, "second atom");
    fig->add_option("--hops", raw.hops, "generator set of the wide graph");
    fig->add_option("--knot-radius", cfg.fig1.knot_radius, "neighbourhood used for the deviation metrics");

    auto* ver = app.add_subcommand("verify", "run every check suite");
    add_graph_flags(ver, raw);
    ver->add_option("--seed", cfg.seed, "seed for randomized suites");
    ver->add_option("--trials", cfg.trials, "random trials per suite")->check(CLI::PositiveNumber);
    ver->add_option("--inject-fault", raw.fault, "negative control: none, w-off-by-one, nonzero-sum-coeffs")
        ->check(CLI::IsMember({"none", "w-off-by-one", "nonzero-sum-coeffs"}));

    for (auto* sub : {ops, basis, synth, fig, ver}) {
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--tol", cfg.tol, "tolerance")->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return gsm::cli::kExitUsage;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        if (!raw.graph.empty()) cfg.graph_path = raw.graph;
        if (!raw.circulant.empty()) cfg.circulant = raw.circulant;
        if (!raw.cosupport.empty()) cfg.cosupport = gsm::io::parse_index_list(raw.cosupport);
        if (!raw.support.empty()) cfg.support = gsm::io::parse_index_list(raw.support);
        if (!raw.coeffs.empty()) cfg.coeffs = gsm::io::parse_real_list(raw.coeffs);
        cfg.fig1.wide_hops = gsm::io::parse_index_list(raw.hops);
        static const std::map<std::string, gsm::verify::Fault> faults{
            {"none", gsm::verify::Fault::none},
            {"w-off-by-one", gsm::verify::Fault::w_off_by_one},
            {"nonzero-sum-coeffs", gsm::verify::Fault::nonzero_sum_coeffs}};
        cfg.fault = faults.at(raw.fault);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return gsm::cli::kExitUsage;
    }
    return gsm::cli::run(cfg);
}
