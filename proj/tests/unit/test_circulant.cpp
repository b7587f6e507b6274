#include "gsm/circulant.hpp"
#include "gsm/linalg.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace gsm;

using IntPoly = IntegerRepresenterPolynomial;

TEST(Representer, LaplacianExamples) {
    EXPECT_EQ(laplacian_representer(CirculantSpec::unweighted(9, {1})).coeffs(), (std::vector<double>{2, -1}));
    EXPECT_EQ(laplacian_representer(CirculantSpec::unweighted(8, {1, 2})).coeffs(), (std::vector<double>{4, -1, -1}));
    EXPECT_EQ(laplacian_representer(CirculantSpec(16, {{1, 2.0}, {3, 1.0}})).coeffs(),
              (std::vector<double>{6, -2, 0, -1}));
}

TEST(Representer, MatrixMatchesCompiledLaplacian) {
    for (const auto& spec : {CirculantSpec::unweighted(9, {1}), CirculantSpec::unweighted(8, {1, 2}),
                             CirculantSpec(16, {{1, 2.0}, {3, 1.0}}), CirculantSpec(11, {{2, 0.5}, {5, 3.0}})}) {
        const Matrix l = laplacian(compile_circulant(spec));
        EXPECT_EQ(max_abs(Matrix(laplacian_representer(spec).to_matrix() - l)), 0.0);
    }
}

TEST(Representer, RequiresStrictBand) {
    EXPECT_THROW(laplacian_representer(CirculantSpec::unweighted(6, {1, 3})), std::invalid_argument);
    EXPECT_THROW(laplacian_representer<std::int64_t>(CirculantSpec(9, {{1, 0.5}})), std::invalid_argument);
}

TEST(Representer, RootEvaluationsAreEigenvalues) {
    const auto p = laplacian_representer(CirculantSpec(13, {{1, 1.0}, {2, 2.5}, {4, 0.75}}));
    Vector ev = p.root_evaluations();
    std::sort(ev.begin(), ev.end());
    const auto e = eig_symmetric(p.to_matrix());
    EXPECT_LT(max_abs(Vector(ev - e.eigenvalues)), 1e-12);
    const auto cyc = oracle::cycle_spectrum(4);
    Vector c4 = cycle_representer(4).root_evaluations();
    std::sort(c4.begin(), c4.end());
    for (Index k = 0; k < 4; ++k) EXPECT_NEAR(c4(k), cyc[static_cast<std::size_t>(k)], 1e-14);
}

TEST(Representer, FirstRowRoundTripWithAntipodalEntry) {
    const std::vector<std::int64_t> row{5, -1, 0, -2, 0, -1};
    const auto p = IntPoly::from_first_row(row);
    EXPECT_EQ(p.coeffs(), (std::vector<std::int64_t>{5, -1, 0, -2}));
    EXPECT_EQ(p.first_row(), row);
    EXPECT_THROW(IntPoly::from_first_row({1, 2, 3}), std::invalid_argument);
}

TEST(PolyMultiply, Examples) {
    const auto a = IntPoly(8, {3, 1});
    EXPECT_EQ(poly_multiply_mod(a, IntPoly::one(8)), a);
    EXPECT_EQ(poly_multiply_mod(a, cycle_representer<std::int64_t>(8)).coeffs(),
              (std::vector<std::int64_t>{4, -1, -1}));
    EXPECT_EQ(poly_multiply_mod(cycle_representer<std::int64_t>(8), cycle_representer<std::int64_t>(8)).coeffs(),
              (std::vector<std::int64_t>{6, -4, 1}));
}

TEST(PolyMultiply, MatchesDenseProductIncludingWrap) {
    const RepresenterPolynomial a(7, {1.5, -0.5, 2.0, 0.25});
    const RepresenterPolynomial b(7, {3.0, 1.0, 0.0, -1.0});
    const Matrix dense = a.to_matrix() * b.to_matrix();
    EXPECT_LT(max_abs(Matrix(poly_multiply_mod(a, b).to_matrix() - dense)), 1e-12);
}

TEST(CyclePinv, FrozenEntriesAgainstOracle) {
    EXPECT_DOUBLE_EQ(cycle_pinv_entry(4, 0, 0), 15.0 / 48.0);
    EXPECT_DOUBLE_EQ(cycle_pinv_entry(4, 0, 2), -0.1875);
    const Matrix ref = oracle::pinv(oracle::cycle_laplacian(4));
    const Matrix c = cycle_pinv(4);
    EXPECT_LT(oracle::max_abs(c - ref), 1e-14);
    EXPECT_NEAR(c.row(0).sum(), 0.0, 1e-15);
    EXPECT_THROW(cycle_pinv(2), std::invalid_argument);
}

TEST(CyclePinv, ProjectionIdentityAndOracle) {
    for (Index n : {3, 5, 16, 64, 101}) {
        const Matrix c = cycle_pinv(n);
        const Matrix lc = cycle_representer(n).to_matrix();
        EXPECT_LT(max_abs(Matrix(lc * c - centering_projector(n))), 1e-9) << n;
        EXPECT_LT(oracle::max_abs(c - oracle::pinv(oracle::cycle_laplacian(static_cast<int>(n)))), 1e-9) << n;
    }
}

TEST(Factorization, FrozenFactors) {
    EXPECT_EQ(lemma1_decompose<std::int64_t>(CirculantSpec::unweighted(10, {1})).coeffs(),
              (std::vector<std::int64_t>{1}));
    EXPECT_EQ(lemma1_decompose<std::int64_t>(CirculantSpec::unweighted(10, {1, 2})).coeffs(),
              (std::vector<std::int64_t>{3, 1}));
    EXPECT_EQ(lemma1_decompose<std::int64_t>(CirculantSpec::unweighted(64, {1, 2, 3})).coeffs(),
              (std::vector<std::int64_t>{6, 3, 1}));
}

TEST(Factorization, FrozenFactorsReproduceLaplacianByHand) {
    // (3 + z + 1/z)(2 - z - 1/z) and (6 + 3(z + 1/z) + (z^2 + 1/z^2))(2 - z - 1/z), expanded by hand
    std::vector<double> r12(16, 0.0), r123(64, 0.0);
    r12[0] = 4;
    r12[1] = r12[15] = r12[2] = r12[14] = -1;
    r123[0] = 6;
    for (int k : {1, 2, 3}) r123[static_cast<std::size_t>(k)] = r123[static_cast<std::size_t>(64 - k)] = -1;
    EXPECT_EQ(oracle::max_abs(lemma1_decompose(CirculantSpec::unweighted(16, {1, 2})).to_matrix() *
                                  cycle_representer(16).to_matrix() -
                              oracle::circulant(r12)),
              0.0);
    EXPECT_EQ(oracle::max_abs(lemma1_decompose(CirculantSpec::unweighted(64, {1, 2, 3})).to_matrix() *
                                  cycle_representer(64).to_matrix() -
                              oracle::circulant(r123)),
              0.0);
}

TEST(Factorization, Preconditions) {
    EXPECT_THROW(lemma1_decompose(CirculantSpec::unweighted(10, {2, 3})), std::invalid_argument);
    EXPECT_THROW(lemma1_decompose(CirculantSpec::unweighted(6, {1, 3})), std::invalid_argument);
}

TEST(FactoredPinv, Residuals) {
    const auto id = lemma2_pinv_factorization(CirculantSpec::unweighted(12, {1}));
    EXPECT_LT(max_abs(Matrix(id.p_inv - Matrix::Identity(12, 12))), 1e-14);
    EXPECT_LT(id.residual, 1e-12);
    const auto a = lemma2_pinv_factorization(CirculantSpec::unweighted(16, {1, 2}));
    EXPECT_LT(a.residual, 1e-9);
    EXPECT_LT(a.transform_agreement, 1e-10);
    const auto b = lemma2_pinv_factorization(CirculantSpec::unweighted(64, {1, 2, 3}));
    EXPECT_LT(b.residual, 1e-8);
    EXPECT_LT(b.transform_agreement, 1e-10);
    // against the QR oracle rather than the library's own pseudoinverse
    const Matrix l = laplacian(compile_circulant(CirculantSpec::unweighted(64, {1, 2, 3})));
    EXPECT_LT(oracle::max_abs(b.p_inv * cycle_pinv(64) - oracle::pinv(l)), 1e-8);
}

TEST(Decay, IdentityProfile) {
    const auto prof = decay_profile(Matrix::Identity(6, 6));
    ASSERT_EQ(prof.entries.size(), 4u);
    EXPECT_EQ(prof.at(0), 1.0);
    for (Index d = 1; d <= 3; ++d) EXPECT_EQ(prof.at(d), 0.0);
    EXPECT_THROW(decay_profile(laplacian(Graph(3, {{0, 1, 1.0}}))), std::invalid_argument);
}

TEST(Decay, TwoHopFactorMatchesAnalyticRoot) {
    // 3 + z + 1/z = -(1/r)(1 - r z)(1 - r/z) with r = (-3 + sqrt 5)/2, so the
    // inverse decays as |r|^d with diagonal 1/sqrt 5
    const auto f = lemma2_pinv_factorization(CirculantSpec::unweighted(64, {1, 2}));
    const auto prof = decay_profile(f.p_inv);
    EXPECT_TRUE(prof.strictly_decreasing);
    const double r = (std::sqrt(5.0) - 3.0) / 2.0;
    EXPECT_NEAR(prof.at(0), 1.0 / std::sqrt(5.0), 1e-12);
    EXPECT_NEAR(prof.at(10) / prof.at(0), std::pow(std::abs(r), 10), 1e-12);
    EXPECT_LT(prof.at(10), 1e-4 * prof.at(0));
    EXPECT_NEAR(prof.at(10) / prof.at(0), 6.6107e-5, 1e-8);  // regression value
}

TEST(Decay, ThreeHopFactorDecays) {
    const auto prof = decay_profile(lemma2_pinv_factorization(CirculantSpec::unweighted(64, {1, 2, 3})).p_inv);
    // oscillating sign pattern, so compare envelopes instead of neighbours
    EXPECT_LT(prof.at(10), 1e-2 * prof.at(0));
    EXPECT_LT(prof.at(32), 1e-10 * prof.at(0));
    auto window_max = [&](Index from) {
        double m = 0.0;
        for (Index d = from; d < from + 8 && d <= 32; ++d) m = std::max(m, prof.at(d));
        return m;
    };
    for (Index w = 0; w + 8 <= 24; w += 8) EXPECT_LT(window_max(w + 8), 1e-2 * window_max(w)) << w;
}

TEST(Circulant, Helpers) {
    EXPECT_TRUE(is_circulant(cycle_pinv(9)));
    EXPECT_FALSE(is_circulant(laplacian(Graph(3, {{0, 1, 1.0}}))));
    EXPECT_EQ(cyclic_distance(1, 62, 64), 3);
    EXPECT_EQ(cyclic_distance(0, 32, 64), 32);
}
