#ifndef GSM_GRAPH_HPP
#define GSM_GRAPH_HPP

#include "gsm/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gsm {

struct Edge {
    Index i;
    Index j;
    double w;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted graph on vertices 0..n-1. Edges are stored with
/// i < j, sorted lexicographically, without duplicates or self-loops.
/// Immutable once constructed.
class Graph {
public:
    Graph(Index n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        if (n_ < 1) throw std::invalid_argument("graph needs at least one vertex");
        for (auto& e : edges_) {
            if (e.i < 0 || e.j < 0 || e.i >= n_ || e.j >= n_)
                throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(e.i) + ", " +
                                            std::to_string(e.j) + ")");
            if (e.i == e.j) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.i));
            if (!(e.w > 0.0) || !std::isfinite(e.w))
                throw std::invalid_argument("edge weights must be finite and strictly positive");
            if (e.i > e.j) std::swap(e.i, e.j);
        }
        std::sort(edges_.begin(), edges_.end(),
                  [](const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
        for (std::size_t k = 1; k < edges_.size(); ++k)
            if (edges_[k].i == edges_[k - 1].i && edges_[k].j == edges_[k - 1].j)
                throw std::invalid_argument("duplicate edge (" + std::to_string(edges_[k].i) + ", " +
                                            std::to_string(edges_[k].j) + ")");
    }

    Index n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    Index edge_count() const { return static_cast<Index>(edges_.size()); }

private:
    Index n_;
    std::vector<Edge> edges_;
};

struct Generator {
    Index hop;
    double weight;
};

/// Generating set of a circulant graph: hop distances s_k with weights d_k.
class CirculantSpec {
public:
    CirculantSpec(Index n, std::vector<Generator> generators) : n_(n), gens_(std::move(generators)) {
        if (n_ < 2) throw std::invalid_argument("circulant graph needs n >= 2");
        std::sort(gens_.begin(), gens_.end(), [](const Generator& a, const Generator& b) { return a.hop < b.hop; });
        for (std::size_t k = 0; k < gens_.size(); ++k) {
            const auto& g = gens_[k];
            if (g.hop <= 0 || 2 * g.hop > n_)
                throw std::invalid_argument("generator " + std::to_string(g.hop) + " outside (0, n/2] for n = " +
                                            std::to_string(n_));
            if (!(g.weight > 0.0) || !std::isfinite(g.weight))
                throw std::invalid_argument("generator weights must be finite and strictly positive");
            if (k > 0 && gens_[k - 1].hop == g.hop)
                throw std::invalid_argument("duplicate generator " + std::to_string(g.hop));
        }
        if (gens_.empty()) throw std::invalid_argument("circulant spec needs at least one generator");
    }

    /// Unit-weight spec from a list of hops.
    static CirculantSpec unweighted(Index n, const std::vector<Index>& hops) {
        std::vector<Generator> g;
        for (Index s : hops) g.push_back({s, 1.0});
        return CirculantSpec(n, std::move(g));
    }

    Index n() const { return n_; }
    const std::vector<Generator>& generators() const { return gens_; }
    Index bandwidth() const { return gens_.back().hop; }

    bool contains(Index hop) const {
        return std::any_of(gens_.begin(), gens_.end(), [&](const Generator& g) { return g.hop == hop; });
    }

    /// d_i indexed by hop distance, zero where i is not a generator. Size M + 1.
    std::vector<double> weights_by_hop() const {
        std::vector<double> d(static_cast<std::size_t>(bandwidth()) + 1, 0.0);
        for (const auto& g : gens_) d[static_cast<std::size_t>(g.hop)] = g.weight;
        return d;
    }

private:
    Index n_;
    std::vector<Generator> gens_;
};

/// Cosupport Lambda (sorted) together with its complement in [0, n).
class Cosupport {
public:
    Cosupport(Index n, std::vector<Index> lambda) : n_(n), lambda_(std::move(lambda)) {
        std::sort(lambda_.begin(), lambda_.end());
        for (std::size_t k = 0; k < lambda_.size(); ++k) {
            if (lambda_[k] < 0 || lambda_[k] >= n_)
                throw std::invalid_argument("index " + std::to_string(lambda_[k]) + " out of range [0, " +
                                            std::to_string(n_) + ")");
            if (k > 0 && lambda_[k] == lambda_[k - 1])
                throw std::invalid_argument("duplicate index " + std::to_string(lambda_[k]));
        }
        std::vector<bool> in(static_cast<std::size_t>(n_), false);
        for (Index i : lambda_) in[static_cast<std::size_t>(i)] = true;
        for (Index i = 0; i < n_; ++i)
            if (!in[static_cast<std::size_t>(i)]) complement_.push_back(i);
    }

    static Cosupport from_complement(Index n, std::vector<Index> complement) {
        Cosupport c(n, std::move(complement));
        return Cosupport(n, c.complement());
    }

    Index n() const { return n_; }
    const std::vector<Index>& lambda() const { return lambda_; }
    const std::vector<Index>& complement() const { return complement_; }

    friend bool operator==(const Cosupport&, const Cosupport&) = default;

private:
    Index n_;
    std::vector<Index> lambda_;
    std::vector<Index> complement_;
};

/// Edges (i, (i + s) mod n) with weight d for each generator; an s = n/2
/// generator contributes each antipodal edge once.
inline Graph compile_circulant(const CirculantSpec& spec) {
    const Index n = spec.n();
    std::vector<Edge> edges;
    for (const auto& g : spec.generators()) {
        const bool antipodal = 2 * g.hop == n;
        const Index count = antipodal ? n / 2 : n;
        for (Index i = 0; i < count; ++i) {
            const Index j = (i + g.hop) % n;
            edges.push_back({std::min(i, j), std::max(i, j), g.weight});
        }
    }
    return Graph(n, std::move(edges));
}

inline Graph complete_graph(Index n) {
    std::vector<Edge> edges;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
    return Graph(n, std::move(edges));
}

inline Graph cycle_graph(Index n) { return compile_circulant(CirculantSpec::unweighted(n, {1})); }

inline Matrix adjacency(const Graph& g) {
    Matrix a = Matrix::Zero(g.n(), g.n());
    for (const auto& e : g.edges()) {
        a(e.i, e.j) = e.w;
        a(e.j, e.i) = e.w;
    }
    return a;
}

/// L = D - A. The diagonal is accumulated from the row's own off-diagonal
/// entries so that L * 1 vanishes exactly.
inline Matrix laplacian(const Graph& g) {
    Matrix l = -adjacency(g);
    for (Index i = 0; i < g.n(); ++i) {
        double deg = 0.0;
        for (Index j = 0; j < g.n(); ++j)
            if (j != i) deg -= l(i, j);
        l(i, i) = deg;
    }
    return l;
}

/// Oriented incidence matrix, |E| x n. Row k follows edge k of g.edges()
/// and carries +sqrt(w) at the lower endpoint and -sqrt(w) at the higher.
inline Matrix incidence(const Graph& g) {
    Matrix s = Matrix::Zero(g.edge_count(), g.n());
    Index k = 0;
    for (const auto& e : g.edges()) {
        const double r = std::sqrt(e.w);
        s(k, e.i) = r;
        s(k, e.j) = -r;
        ++k;
    }
    return s;
}

inline std::vector<std::vector<Index>> neighbor_lists(const Graph& g) {
    std::vector<std::vector<Index>> adj(static_cast<std::size_t>(g.n()));
    for (const auto& e : g.edges()) {
        adj[static_cast<std::size_t>(e.i)].push_back(e.j);
        adj[static_cast<std::size_t>(e.j)].push_back(e.i);
    }
    return adj;
}

/// Unweighted BFS hop counts from `source`; -1 marks unreachable vertices.
inline std::vector<Index> hop_distances(const Graph& g, Index source) {
    const auto adj = neighbor_lists(g);
    std::vector<Index> dist(static_cast<std::size_t>(g.n()), -1);
    std::queue<Index> q;
    dist[static_cast<std::size_t>(source)] = 0;
    q.push(source);
    while (!q.empty()) {
        const Index v = q.front();
        q.pop();
        for (Index u : adj[static_cast<std::size_t>(v)]) {
            if (dist[static_cast<std::size_t>(u)] < 0) {
                dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
                q.push(u);
            }
        }
    }
    return dist;
}

/// Component label per vertex, labels 0..k-1 in order of first appearance.
inline std::vector<Index> component_labels(const Graph& g) {
    const auto adj = neighbor_lists(g);
    std::vector<Index> label(static_cast<std::size_t>(g.n()), -1);
    Index next = 0;
    for (Index s = 0; s < g.n(); ++s) {
        if (label[static_cast<std::size_t>(s)] >= 0) continue;
        std::vector<Index> stack{s};
        label[static_cast<std::size_t>(s)] = next;
        while (!stack.empty()) {
            const Index v = stack.back();
            stack.pop_back();
            for (Index u : adj[static_cast<std::size_t>(v)]) {
                if (label[static_cast<std::size_t>(u)] < 0) {
                    label[static_cast<std::size_t>(u)] = next;
                    stack.push_back(u);
                }
            }
        }
        ++next;
    }
    return label;
}

inline Index connected_components(const Graph& g) {
    const auto label = component_labels(g);
    return label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
}

inline bool is_connected(const Graph& g) { return connected_components(g) == 1; }

/// Whether (L^k)_{ij} vanishes for every pair farther apart than k hops.
inline bool khop_localization_check(const Graph& g, int k, double tol = kAbsoluteFloor) {
    if (k < 1) throw std::invalid_argument("k-hop localization needs k >= 1");
    const Matrix l = laplacian(g);
    Matrix power = l;
    for (int p = 1; p < k; ++p) power = power * l;
    const double threshold = tol * scale_of(power);
    for (Index i = 0; i < g.n(); ++i) {
        const auto dist = hop_distances(g, i);
        for (Index j = 0; j < g.n(); ++j) {
            const Index d = dist[static_cast<std::size_t>(j)];
            if ((d < 0 || d > k) && std::abs(power(i, j)) > threshold) return false;
        }
    }
    return true;
}

/// Complete graph with unit weight on every pair.
inline bool is_unweighted_complete(const Graph& g) {
    const Index n = g.n();
    if (g.edge_count() != n * (n - 1) / 2) return false;
    return std::all_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.w == 1.0; });
}

}  // namespace gsm

#endif  // GSM_GRAPH_HPP
