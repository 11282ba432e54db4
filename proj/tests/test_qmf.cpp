#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <relaynet/qmf.hpp>

using namespace relaynet;
using cd = std::complex<double>;

namespace {

// Entropy of the rounded Gaussian by Simpson integration of the density over each cell.
double simpson_rounded_entropy(double mu, double var) {
    const double s = std::sqrt(var);
    auto pdf = [&](double x) { return std::exp(-(x - mu) * (x - mu) / (2 * var)) / (s * std::sqrt(2 * std::numbers::pi)); };
    double h = 0;
    for (long k = std::lround(mu - 15 * s) - 1; k <= std::lround(mu + 15 * s) + 1; ++k) {
        const int N = 400;
        double a = k - 0.5, step = 1.0 / N, p = pdf(a) + pdf(a + 1);
        for (int i = 1; i < N; ++i) p += (i % 2 ? 4 : 2) * pdf(a + i * step);
        p *= step / 3;
        if (p > 1e-300) h -= p * std::log2(p);
    }
    return h;
}

GaussNetwork p2p(double gain2) {
    auto net = make_gauss_network({"S", "D"}, "S", {"D"});
    add_gauss_edge(net, 0, 1, std::sqrt(gain2));
    return net;
}

} // namespace

TEST(Quantizer, Examples) {
    EXPECT_EQ(quantize({1.4, 2.6}), (QPoint{1, 3}));
    EXPECT_EQ(quantize({0, 0}), (QPoint{0, 0}));
    EXPECT_EQ(quantize({-0.5, 0.5}), (QPoint{-1, 1}));
}

TEST(Quantizer, DistortionAtMostHalf) {
    Rng rng(1);
    double worst = 0;
    for (int i = 0; i < 1000000; ++i) {
        cd v(rng.uniform(-1e4, 1e4), rng.uniform(-3, 3));
        QPoint q = quantize(v);
        worst = std::max({worst, std::abs(v.real() - q.re), std::abs(v.imag() - q.im)});
    }
    EXPECT_LE(worst, 0.5 + 1e-12);
}

TEST(Constants, EntropyBound) {
    double c = entropy_bound_constant();
    EXPECT_NEAR(c, 5.89, 0.01);
    EXPECT_LT(c, 6.0);
    double sum = 0;
    for (int k = 1; k <= 200; ++k) {
        double f = (k - 0.5) * (k - 0.5) / 2;
        sum += f * std::exp(-f);
    }
    EXPECT_NEAR(c, 2 * std::numbers::log2e * sum + 2.5 + std::log2(3.0), 1e-6);
    double first = 2 * std::numbers::log2e * 0.125 * std::exp(-0.125);
    EXPECT_NEAR(first, 0.31825, 1e-4);
}

TEST(Constants, LogElevenPiE) { EXPECT_NEAR(lemma9_constant(), 6.5536, 1e-3); }

TEST(Entropy, RoundedGaussianMatchesIntegration) {
    for (auto [mu, var] : {std::pair{0.0, 0.5}, {0.3, 1.0}, {-2.7, 4.0}, {0.5, 0.01}, {10.2, 30.0}})
        EXPECT_NEAR(rounded_gaussian_entropy(mu, var), simpson_rounded_entropy(mu, var), 1e-7);
}

TEST(Entropy, PluginOnKnownLaw) {
    Rng rng(2);
    std::vector<std::uint64_t> keys(200000);
    for (auto& k : keys) k = rng.below(8);
    auto e = plugin_entropy(keys);
    EXPECT_NEAR(e.value, 3.0, 0.01);
}

TEST(CondEntropy, ZeroInputIsQuantizedNoise) {
    auto r = cond_entropy_quantized([](Rng&) { return cd{}; }, 1000000, 3);
    // unit-power complex noise: each real part has variance 1/2
    double exact = 2 * rounded_gaussian_entropy(0, 0.5);
    EXPECT_NEAR(r.h_vz_given_v.value, exact, 4 * r.h_vz_given_v.sigma + 1e-3);
    EXPECT_NEAR(r.h_vz_given_v_re.value, exact / 2, 4 * r.h_vz_given_v_re.sigma + 1e-3);
    EXPECT_NEAR(r.h_v_given_vz.value, 0.0, 1e-12);
}

TEST(CondEntropy, NoiseFreeDegenerate) {
    auto r = cond_entropy_quantized([](Rng&) { return cd{3.2, -1}; }, 10000, 4, 0.0);
    EXPECT_EQ(r.h_vz_given_v.value, 0.0);
    EXPECT_EQ(r.h_v_given_vz.value, 0.0);
}

TEST(CondEntropy, BoundedForSeveralInputLaws) {
    std::vector<ComplexSampler> laws = {
        [](Rng& r) { return r.complex_normal(); },
        [](Rng& r) { return r.complex_normal(1e4); },
        [](Rng& r) { return cd{r.uniform(-50, 50), r.uniform(-50, 50)}; },
    };
    for (const auto& law : laws) {
        auto r = cond_entropy_quantized(law, 200000, 5);
        EXPECT_LE(r.h_vz_given_v.value, 12.0);
        EXPECT_LE(r.h_v_given_vz.value, 12.0);
        EXPECT_LE(r.h_vz_given_v_re.value, 6.0);
        EXPECT_LE(r.h_v_given_vz_re.value, 6.0);
    }
}

TEST(MiGap, ZeroMatrix) {
    auto r = mi_gap_check(Eigen::MatrixXcd::Zero(1, 1), 10000, 6);
    EXPECT_EQ(r.i_gauss, 0.0);
    EXPECT_EQ(r.i_q.value, 0.0);
    EXPECT_NEAR(r.i_qnoise.value, 0.0, 0.02);
    EXPECT_EQ(r.gap_gauss_q, 0.0);
}

TEST(MiGap, ScalarUnitGain) {
    auto r = mi_gap_check(Eigen::MatrixXcd::Identity(1, 1), 200000, 7);
    EXPECT_NEAR(r.i_gauss, 1.0, 1e-12);
    EXPECT_LE(r.gap_gauss_qnoise, 7.0 + 3 * r.sigma_gauss_qnoise);
    EXPECT_LE(r.gap_q_qnoise, 12.0 + 3 * r.sigma_q_qnoise);
    EXPECT_LE(r.gap_gauss_q, 19.0 + 3 * r.sigma_gauss_q);
}

TEST(MiGap, RejectsLargeMatrices) { EXPECT_THROW(mi_gap_check(Eigen::MatrixXcd::Zero(3, 1), 100, 1), ArgumentError); }

TEST(Chernoff, ZeroChannel) {
    auto r = chernoff_event_check(Eigen::MatrixXcd::Zero(2, 2), 4, 1000, 8);
    EXPECT_EQ(r.p_hat, 1.0);
    EXPECT_GE(r.bound, 1.0);
}

TEST(Chernoff, ScalarMatchesExactCellProbability) {
    for (auto [h, T] : {std::pair{3.0, 1}, {10.0, 2}, {1.5, 3}}) {
        Eigen::MatrixXcd H(1, 1);
        H(0, 0) = h;
        const std::size_t N = 100000;
        auto r = chernoff_event_check(H, T, N, 9);
        double p = std::pow(1 - std::exp(-1 / (h * h)), T);
        EXPECT_NEAR(r.p_hat, p, 4 * std::sqrt(p * (1 - p) / N) + 1.0 / N);
        EXPECT_LE(r.p_hat, r.bound + 3 * r.sigma + 1.0 / N);
    }
}

TEST(Chernoff, BoundFallsWithBlockLength) {
    Eigen::MatrixXcd H(1, 1);
    H(0, 0) = 10;
    for (int T = 1; T < 8; ++T) EXPECT_LT(chernoff_bound(H, T + 1), chernoff_bound(H, T));
}

TEST(Qmf, ZeroRate) {
    auto r = simulate_qmf(p2p(1.0), 4, 0.0, 100, 10);
    EXPECT_EQ(r.errors, 0u);
    auto relay = make_gauss_network({"S", "R", "D"}, "S", {"D"});
    add_gauss_edge(relay, 0, 1, 1.0);
    add_gauss_edge(relay, 1, 2, 1.0);
    EXPECT_EQ(simulate_qmf(relay, 4, 0.0, 50, 10).errors, 0u);
}

TEST(Qmf, StrongPointToPointLink) {
    auto r = simulate_qmf(p2p(100.0), 8, 1.0, 400, 11);
    EXPECT_LT(r.p_hat, 0.1);
}

TEST(Qmf, LongerBlocksHelp) {
    auto a = simulate_qmf(p2p(10.0), 2, 1.0, 2000, 12);
    auto b = simulate_qmf(p2p(10.0), 8, 1.0, 2000, 12);
    EXPECT_LT(b.p_hat, a.p_hat);
}

TEST(Qmf, LongerBlocksHelpThroughARelay) {
    auto line = make_gauss_network({"S", "R", "D"}, "S", {"D"});
    add_gauss_edge(line, 0, 1, 4.0);
    add_gauss_edge(line, 1, 2, 4.0);
    auto a = simulate_qmf(line, 2, 1.0, 400, 14);
    auto b = simulate_qmf(line, 4, 1.0, 400, 14);
    EXPECT_LT(b.p_hat, a.p_hat);
}

TEST(Qmf, CellProbabilities) {
    double total = 0;
    for (long k = -10; k <= 10; ++k) total += std::exp(detail::log_cell_prob(0.3, k, 0.5));
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NEAR(std::exp(detail::log_cell_prob(0.0, 0, 0.5)), std::erf(0.5), 1e-12);
    EXPECT_TRUE(std::isfinite(detail::log_cell_prob(0.0, 30, 0.5)));
    EXPECT_NEAR(detail::log_cell_prob(0.2, -7, 0.5), detail::log_cell_prob(-0.2, 7, 0.5), 1e-12);
    EXPECT_NEAR(detail::log_cell_prob(0.0, 20, 0.5), std::log(0.5 * (std::erfc(19.5) - std::erfc(20.5))), 1e-9);
}

TEST(Qmf, DeterministicAndThreadIndependent) {
    auto relay = make_gauss_network({"S", "R", "D"}, "S", {"D"});
    add_gauss_edge(relay, 0, 1, 3.0);
    add_gauss_edge(relay, 1, 2, 3.0);
    auto a = simulate_qmf(relay, 4, 0.5, 40, 13, 16, true, 1);
    auto b = simulate_qmf(relay, 4, 0.5, 40, 13, 16, true, 3);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t k = 0; k < a.records.size(); ++k) {
        EXPECT_EQ(a.records[k].symbol, b.records[k].symbol);
        EXPECT_EQ(a.records[k].decoded, b.records[k].decoded);
    }
}

TEST(Qmf, Rejections) {
    EXPECT_THROW(simulate_qmf(p2p(1.0), 8, 3.0, 10, 1), ResourceError);
    EXPECT_THROW(simulate_qmf(p2p(1.0), 0, 1.0, 10, 1), ArgumentError);
    auto nonlayered = gauss_relay_network(1.0, 1.0, 1.0);
    EXPECT_THROW(simulate_qmf(nonlayered, 2, 1.0, 10, 1), ArgumentError);
    std::vector<std::string> ids = {"a", "b", "c", "d", "e", "f"};
    EXPECT_THROW(simulate_qmf(make_gauss_network(ids, "a", {"f"}), 2, 1.0, 10, 1), ResourceError);
}
