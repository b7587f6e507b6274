#include "gsm/io.hpp"
#include "gsm/svg.hpp"

#include <gtest/gtest.h>

using namespace gsm;

TEST(Io, GraphJsonRoundTrip) {
    const Graph g(4, {{0, 1, 1.5}, {2, 3, 0.25}, {1, 2, 2.0}});
    const Graph back = io::graph_from_json(io::graph_to_json(g));
    EXPECT_EQ(back.n(), 4);
    EXPECT_EQ(back.edges(), g.edges());
    EXPECT_THROW(io::graph_from_json(io::parse_json(R"({"n": 3})", "t")), io::InputError);
}

TEST(Io, CirculantJson) {
    const auto s = io::circulant_from_json(io::parse_json(R"({"n": 10, "generators": [[1, 2.0], 3]})", "t"));
    EXPECT_EQ(s.n(), 10);
    ASSERT_EQ(s.generators().size(), 2u);
    EXPECT_EQ(s.generators()[0].weight, 2.0);
    EXPECT_EQ(s.generators()[1].hop, 3);
    EXPECT_EQ(s.generators()[1].weight, 1.0);
    const auto again = io::circulant_from_json(io::circulant_to_json(s));
    EXPECT_EQ(again.bandwidth(), 3);
    EXPECT_THROW(io::parse_json("{", "t"), io::InputError);
    EXPECT_THROW(io::load_circulant(R"({"n": 10})"), io::InputError);
}

TEST(Io, EdgeList) {
    const Graph g = io::graph_from_edge_list("# square\n0 1\n1 2 2.5\n\n2 3  # tail\n3 0 1\n");
    EXPECT_EQ(g.n(), 4);
    EXPECT_EQ(g.edge_count(), 4);
    EXPECT_EQ(g.edges()[2], (Edge{1, 2, 2.5}));
    EXPECT_THROW(io::graph_from_edge_list("0 x\n"), io::InputError);
}

TEST(Io, RepresenterAndCosupport) {
    const RepresenterPolynomial p(9, {4, -1, -1});
    EXPECT_EQ(io::representer_to_json(p).dump(), R"({"coeffs":[4.0,-1.0,-1.0],"n":9})");
    EXPECT_EQ(io::representer_from_json(io::representer_to_json(p)), p);
    const Cosupport c(6, {5, 0, 2});
    EXPECT_EQ(io::cosupport_to_json(c).dump(), "[0,2,5]");
    EXPECT_EQ(io::cosupport_from_json(6, io::cosupport_to_json(c)), c);
}

TEST(Io, CsvFormats) {
    EXPECT_EQ(io::format_real(0.3125), "3.1250000000000000e-01");
    EXPECT_EQ(io::format_real(-1.0 / 3.0), "-3.3333333333333331e-01");
    Matrix a(2, 2);
    a << 1.0 / 3.0, -2.0, 0.0, 1e-300;
    EXPECT_EQ(io::matrix_from_csv(io::matrix_to_csv(a)), a);
    EXPECT_THROW(io::matrix_from_csv("1,2\n3\n"), io::InputError);
    Vector x(2);
    x << 1.0, -0.5;
    EXPECT_EQ(io::signal_to_csv(x), "vertex,value\n0,1.0000000000000000e+00\n1,-5.0000000000000000e-01\n");
    EXPECT_EQ(io::series_to_csv({"a", "b"}, {x, x}),
              "vertex,a,b\n0,1.0000000000000000e+00,1.0000000000000000e+00\n1,-5.0000000000000000e-01,-5.0000000000000000e-01\n");
}

TEST(Io, Lists) {
    EXPECT_EQ(io::parse_index_list("2, 5,7"), (std::vector<Index>{2, 5, 7}));
    EXPECT_EQ(io::parse_real_list("1,-1e-3"), (std::vector<double>{1.0, -1e-3}));
    EXPECT_THROW(io::parse_index_list("1,b"), io::InputError);
    EXPECT_THROW(io::parse_index_list("1.5"), io::InputError);
}

TEST(Svg, HasAxesLabelsAndSeries) {
    Vector x(5);
    x << 0, 1, -1, 2, 0.5;
    const std::string s = svg::line_plot({{"signal <x>", x, "#000000", true}}, {"title", "vertex", "amplitude"});
    EXPECT_EQ(s.rfind("<svg", 0), 0u);
    EXPECT_NE(s.find("<polyline"), std::string::npos);
    EXPECT_NE(s.find("<circle"), std::string::npos);
    EXPECT_NE(s.find(">amplitude</text>"), std::string::npos);
    EXPECT_NE(s.find("signal &lt;x&gt;"), std::string::npos);
    EXPECT_NE(s.find("</svg>"), std::string::npos);
    // flat data must not divide by zero
    EXPECT_EQ(svg::line_plot({{"flat", Vector::Zero(4)}}, {}).find("nan"), std::string::npos);
}
