#ifndef GSM_IO_HPP
#define GSM_IO_HPP

#include "gsm/circulant.hpp"
#include "gsm/graph.hpp"
#include "gsm/matrix.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsm::io {

using json = nlohmann::json;

/// Malformed or unreadable input files.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << content;
}

/// {"n": int, "edges": [[i, j, w], ...]}
inline Graph graph_from_json(const json& j) {
    try {
        const Index n = j.at("n").get<Index>();
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() < 2 || e.size() > 3) throw InputError("edge entries must be [i, j] or [i, j, w]");
            edges.push_back({e[0].get<Index>(), e[1].get<Index>(), e.size() == 3 ? e[2].get<double>() : 1.0});
        }
        return Graph(n, std::move(edges));
    } catch (const json::exception& ex) {
        throw InputError(std::string("invalid graph JSON: ") + ex.what());
    }
}

inline json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (const auto& e : g.edges()) edges.push_back({e.i, e.j, e.w});
    return {{"n", g.n()}, {"edges", edges}};
}

/// {"n": int, "generators": [[s, d], ...]}; a bare hop s means d = 1.
inline CirculantSpec circulant_from_json(const json& j) {
    try {
        const Index n = j.at("n").get<Index>();
        std::vector<Generator> gens;
        for (const auto& g : j.at("generators")) {
            if (g.is_number_integer())
                gens.push_back({g.get<Index>(), 1.0});
            else if (g.is_array() && g.size() == 2)
                gens.push_back({g[0].get<Index>(), g[1].get<double>()});
            else
                throw InputError("generator entries must be [s, d] or s");
        }
        return CirculantSpec(n, std::move(gens));
    } catch (const json::exception& ex) {
        throw InputError(std::string("invalid circulant JSON: ") + ex.what());
    }
}

inline json circulant_to_json(const CirculantSpec& spec) {
    json gens = json::array();
    for (const auto& g : spec.generators()) gens.push_back({g.hop, g.weight});
    return {{"n", spec.n()}, {"generators", gens}};
}

/// Edge list text: one "i j [w]" per line, '#' starts a comment. The vertex
/// count is one past the largest endpoint.
inline Graph graph_from_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Edge> edges;
    Index n = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() < 2 || tok.size() > 3)
            throw InputError("edge list line " + std::to_string(lineno) + ": expected \"i j w\"");
        try {
            std::size_t used = 0;
            Edge e{std::stol(tok[0], &used), 0, 1.0};
            if (used != tok[0].size()) throw std::invalid_argument(tok[0]);
            e.j = std::stol(tok[1], &used);
            if (used != tok[1].size()) throw std::invalid_argument(tok[1]);
            if (tok.size() == 3) {
                e.w = std::stod(tok[2], &used);
                if (used != tok[2].size()) throw std::invalid_argument(tok[2]);
            }
            n = std::max({n, e.i + 1, e.j + 1});
            edges.push_back(e);
        } catch (const std::logic_error&) {
            throw InputError("edge list line " + std::to_string(lineno) + ": malformed number");
        }
    }
    if (n == 0) throw InputError("edge list contains no edges");
    return Graph(n, std::move(edges));
}

inline json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& ex) {
        throw InputError("cannot parse " + what + ": " + ex.what());
    }
}

/// JSON graph when the file starts with '{', edge list otherwise.
inline Graph load_graph(const std::string& path) {
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return graph_from_json(parse_json(text, path));
    return graph_from_edge_list(text);
}

/// Inline JSON object or a path to a file holding one.
inline CirculantSpec load_circulant(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    const bool inline_json = first != std::string::npos && arg[first] == '{';
    const std::string text = inline_json ? arg : read_file(arg);
    return circulant_from_json(parse_json(text, inline_json ? "circulant spec" : arg));
}

template <class Scalar>
json representer_to_json(const BasicRepresenterPolynomial<Scalar>& p) {
    return {{"n", p.n()}, {"coeffs", p.coeffs()}};
}

inline RepresenterPolynomial representer_from_json(const json& j) {
    try {
        return RepresenterPolynomial(j.at("n").get<Index>(), j.at("coeffs").get<std::vector<double>>());
    } catch (const json::exception& ex) {
        throw InputError(std::string("invalid representer JSON: ") + ex.what());
    }
}

inline json cosupport_to_json(const Cosupport& c) { return c.lambda(); }

inline Cosupport cosupport_from_json(Index n, const json& j) { return Cosupport(n, j.get<std::vector<Index>>()); }

/// 17 significant digits, scientific.
inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

inline std::string matrix_to_csv(const Matrix& a) {
    std::string out;
    for (Index r = 0; r < a.rows(); ++r) {
        for (Index c = 0; c < a.cols(); ++c) {
            if (c) out += ',';
            out += format_real(a(r, c));
        }
        out += '\n';
    }
    return out;
}

inline Matrix matrix_from_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::logic_error&) {
                throw InputError("matrix CSV: malformed cell '" + cell + "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size()) throw InputError("matrix CSV: ragged rows");
        rows.push_back(std::move(row));
    }
    const Index r = static_cast<Index>(rows.size());
    const Index c = r ? static_cast<Index>(rows.front().size()) : 0;
    Matrix a(r, c);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j) a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    if (!a.allFinite()) throw InputError("matrix CSV: non-finite entry");
    return a;
}

/// Two columns: vertex,value.
inline std::string signal_to_csv(const Vector& x) {
    std::string out = "vertex,value\n";
    for (Index i = 0; i < x.size(); ++i) out += std::to_string(i) + ',' + format_real(x(i)) + '\n';
    return out;
}

/// Vertex column followed by one named column per series.
inline std::string series_to_csv(const std::vector<std::string>& names, const std::vector<Vector>& cols) {
    std::string out = "vertex";
    for (const auto& nm : names) out += ',' + nm;
    out += '\n';
    const Index n = cols.empty() ? 0 : cols.front().size();
    for (Index i = 0; i < n; ++i) {
        out += std::to_string(i);
        for (const auto& c : cols) out += ',' + format_real(c(i));
        out += '\n';
    }
    return out;
}

inline std::vector<Index> parse_index_list(const std::string& s) {
    std::vector<Index> out;
    std::istringstream in(s);
    for (std::string tok; std::getline(in, tok, ',');) {
        if (tok.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            std::size_t used = 0;
            const long v = std::stol(tok, &used);
            if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw InputError("malformed index '" + tok + "'");
        }
    }
    return out;
}

inline std::vector<double> parse_real_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream in(s);
    for (std::string tok; std::getline(in, tok, ',');) {
        if (tok.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            out.push_back(std::stod(tok));
        } catch (const std::logic_error&) {
            throw InputError("malformed number '" + tok + "'");
        }
    }
    return out;
}

}  // namespace gsm::io

#endif  // GSM_IO_HPP
