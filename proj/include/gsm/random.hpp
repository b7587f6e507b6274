#ifndef GSM_RANDOM_HPP
#define GSM_RANDOM_HPP

// Seeded generators for property checks: connected graphs, circulant
// specs, cosupports.

#include "gsm/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace gsm::random {

using Rng = std::mt19937_64;

inline Index uniform_index(Rng& rng, Index lo, Index hi) {
    return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

/// Random spanning tree plus extra edges, weights in [0.25, 4).
inline Graph connected_graph(Rng& rng, Index n, double extra_edge_probability = 0.15) {
    std::uniform_real_distribution<double> weight(0.25, 4.0);
    std::bernoulli_distribution extra(extra_edge_probability);
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::set<std::pair<Index, Index>> seen;
    std::vector<Edge> edges;
    auto add = [&](Index a, Index b) {
        if (a > b) std::swap(a, b);
        if (seen.insert({a, b}).second) edges.push_back({a, b, weight(rng)});
    };
    for (Index k = 1; k < n; ++k) add(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(uniform_index(rng, 0, k - 1))]);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (extra(rng)) add(i, j);
    return Graph(n, std::move(edges));
}

/// Circulant spec with generator 1, bandwidth M < n/2 and integer weights 1..max_weight.
inline CirculantSpec lemma1_spec(Rng& rng, Index n_min = 8, Index n_max = 64, int max_weight = 5) {
    const Index n = uniform_index(rng, n_min, n_max);
    const Index m_cap = (n - 1) / 2;
    const Index m = uniform_index(rng, 1, std::min<Index>(m_cap, 6));
    std::vector<Generator> gens{{1, static_cast<double>(uniform_index(rng, 1, max_weight))}};
    std::bernoulli_distribution keep(0.5);
    for (Index s = 2; s < m; ++s)
        if (keep(rng)) gens.push_back({s, static_cast<double>(uniform_index(rng, 1, max_weight))});
    if (m > 1) gens.push_back({m, static_cast<double>(uniform_index(rng, 1, max_weight))});
    return CirculantSpec(n, std::move(gens));
}

/// Uniformly sized random subset of [0, n) with |Lambda| in [min_size, max_size].
inline Cosupport cosupport(Rng& rng, Index n, Index min_size, Index max_size) {
    const Index size = uniform_index(rng, min_size, max_size);
    std::vector<Index> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(size));
    return Cosupport(n, std::move(all));
}

}  // namespace gsm::random

#endif  // GSM_RANDOM_HPP
