#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "gaussian.hpp"
#include "network.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "stats.hpp"

namespace relaynet {

// ---------------------------------------------------------------- quantizer

struct QPoint {
    long re;
    long im;
    friend bool operator==(const QPoint&, const QPoint&) = default;
};

// Nearest integer per component; halves round away from zero.
inline QPoint quantize(std::complex<double> v) {
    return {std::lround(v.real()), std::lround(v.imag())};
}

inline double entropy_bound_constant() {
    const double log2e = std::numbers::log2e;
    double sum = 0.0;
    for (int k = 1;; ++k) {
        double f = (k - 0.5) * (k - 0.5) / 2;
        double term = f * std::exp(-f);
        sum += term;
        // for k >= 3 consecutive terms shrink by at least e^{-2}, so the tail is below term * e^{-2}/(1-e^{-2})
        if (k >= 3 && term < 1e-9) {
            sum += term * std::exp(-2.0) / (1 - std::exp(-2.0));
            break;
        }
    }
    return 2 * log2e * sum + 2.5 + std::log2(3.0);
}

inline double lemma9_constant() { return std::log2(11 * std::numbers::pi * std::numbers::e); }

// ---------------------------------------------------------------- entropy helpers

inline double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Entropy (bits) of round(mu + N(0, var)) computed from exact cell probabilities.
inline double rounded_gaussian_entropy(double mu, double var) {
    if (var <= 0) return 0.0;
    const double s = std::sqrt(var);
    long lo = std::lround(mu - 12 * s) - 1, hi = std::lround(mu + 12 * s) + 1;
    double h = 0.0;
    for (long k = lo; k <= hi; ++k) {
        double p = std_normal_cdf((k + 0.5 - mu) / s) - std_normal_cdf((k - 0.5 - mu) / s);
        if (p > 0) h -= p * std::log2(p);
    }
    return h;
}

struct EntropyEstimate {
    double value = 0.0; // bits
    double sigma = 0.0; // delta-method standard error
};

// Plug-in entropy of a sample of discrete keys (keys are sorted in place).
inline EntropyEstimate plugin_entropy(std::vector<std::uint64_t>& keys) {
    EntropyEstimate e;
    const double N = static_cast<double>(keys.size());
    if (keys.empty()) return e;
    std::sort(keys.begin(), keys.end());
    double h = 0.0, h2 = 0.0;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        double p = static_cast<double>(j - i) / N;
        double l = -std::log2(p);
        h += p * l;
        h2 += p * l * l;
        i = j;
    }
    e.value = h;
    e.sigma = std::sqrt(std::max(0.0, h2 - h * h) / N);
    return e;
}

namespace detail {

inline std::uint64_t pack_component(long v) {
    constexpr long off = 1L << 15;
    if (v <= -off || v >= off) throw ResourceError("quantized value out of range for entropy estimation");
    return static_cast<std::uint64_t>(v + off) & 0xFFFF;
}

inline std::uint64_t pack_points(const QPoint* p, std::size_t n) {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < n; ++i) k = (k << 32) | (pack_component(p[i].re) << 16) | pack_component(p[i].im);
    return k;
}

} // namespace detail

// ---------------------------------------------------------------- conditional entropy of quantized values

using ComplexSampler = std::function<std::complex<double>(Rng&)>;

struct CondEntropyResult {
    EntropyEstimate h_vz_given_v; // H([v+z] | [v])
    EntropyEstimate h_v_given_vz; // H([v] | [v+z])
    EntropyEstimate h_vz_given_v_re; // real part only
    EntropyEstimate h_v_given_vz_re;
};

// z ~ CN(0, noise_var); noise_var = 0 is the noise-free plumbing variant.
inline CondEntropyResult cond_entropy_quantized(const ComplexSampler& sampler, std::size_t samples, std::uint64_t seed,
                                                double noise_var = 1.0) {
    if (samples < 1) throw ArgumentError("samples must be >= 1");
    Rng rng(seed);
    std::vector<std::uint64_t> joint(samples), qv(samples), qvz(samples), jre(samples), vre(samples), vzre(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        std::complex<double> v = sampler(rng);
        std::complex<double> z = noise_var > 0 ? rng.complex_normal(noise_var) : std::complex<double>{};
        QPoint a = quantize(v), b = quantize(v + z);
        QPoint ab[2] = {a, b};
        joint[i] = detail::pack_points(ab, 2);
        qv[i] = detail::pack_points(&a, 1);
        qvz[i] = detail::pack_points(&b, 1);
        vre[i] = detail::pack_component(a.re);
        vzre[i] = detail::pack_component(b.re);
        jre[i] = (vre[i] << 16) | vzre[i];
    }
    auto hj = plugin_entropy(joint), hv = plugin_entropy(qv), hvz = plugin_entropy(qvz);
    auto hjr = plugin_entropy(jre), hvr = plugin_entropy(vre), hvzr = plugin_entropy(vzre);
    auto diff = [](EntropyEstimate a, EntropyEstimate b) {
        return EntropyEstimate{a.value - b.value, std::sqrt(a.sigma * a.sigma + b.sigma * b.sigma)};
    };
    return {diff(hj, hv), diff(hj, hvz), diff(hjr, hvr), diff(hjr, hvzr)};
}

// ---------------------------------------------------------------- mutual-information gaps

struct MiGapReport {
    int n = 0;
    double i_gauss = 0.0;      // I(x; Gx+z), exact
    EntropyEstimate i_q;       // I(x; [Gx]) = H([Gx])
    EntropyEstimate i_qnoise;  // I(x; [Gx+z]) = H([Gx+z]) - H([Gx+z] | x)
    double gap_gauss_q = 0.0;  // |I(x;Gx+z) - I(x;[Gx])|, bound 19n
    double gap_q_qnoise = 0.0; // |I(x;[Gx+z]) - I(x;[Gx])|, bound 12n
    double gap_gauss_qnoise = 0.0; // I(x;Gx+z) - I(x;[Gx+z]), bound 7n
    double sigma_gauss_q = 0.0;
    double sigma_q_qnoise = 0.0;
    double sigma_gauss_qnoise = 0.0;
};

inline MiGapReport mi_gap_check(const Eigen::MatrixXcd& G, std::size_t samples, std::uint64_t seed) {
    const auto n = static_cast<std::size_t>(G.rows()), m = static_cast<std::size_t>(G.cols());
    if (n < 1 || n > 2 || m < 1 || m > 2) throw ArgumentError("mi_gap_check supports matrices up to 2x2");
    if (samples < 2) throw ArgumentError("samples must be >= 2");
    MiGapReport r;
    r.n = static_cast<int>(n);
    r.i_gauss = log_det_capacity(G, 1.0);

    Rng rng(seed);
    std::vector<std::uint64_t> kq(samples), kqn(samples);
    double hc = 0.0, hc2 = 0.0; // exact H([Gx+z] | x) per sample
    Eigen::VectorXcd x(m);
    QPoint qa[2], qb[2];
    for (std::size_t i = 0; i < samples; ++i) {
        for (std::size_t k = 0; k < m; ++k) x(k) = rng.complex_normal();
        Eigen::VectorXcd gx = G * x;
        double hcond = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            std::complex<double> z = rng.complex_normal();
            qa[k] = quantize(gx(k));
            qb[k] = quantize(gx(k) + z);
            hcond += rounded_gaussian_entropy(gx(k).real(), 0.5) + rounded_gaussian_entropy(gx(k).imag(), 0.5);
        }
        kq[i] = detail::pack_points(qa, n);
        kqn[i] = detail::pack_points(qb, n);
        hc += hcond;
        hc2 += hcond * hcond;
    }
    const double N = static_cast<double>(samples);
    double hc_mean = hc / N;
    double hc_sigma = std::sqrt(std::max(0.0, hc2 / N - hc_mean * hc_mean) / N);

    r.i_q = plugin_entropy(kq);
    auto h_noisy = plugin_entropy(kqn);
    r.i_qnoise = {h_noisy.value - hc_mean, std::sqrt(h_noisy.sigma * h_noisy.sigma + hc_sigma * hc_sigma)};

    r.gap_gauss_q = std::abs(r.i_gauss - r.i_q.value);
    r.sigma_gauss_q = r.i_q.sigma;
    r.gap_q_qnoise = std::abs(r.i_qnoise.value - r.i_q.value);
    r.sigma_q_qnoise = std::hypot(r.i_qnoise.sigma, r.i_q.sigma);
    r.gap_gauss_qnoise = r.i_gauss - r.i_qnoise.value;
    r.sigma_gauss_qnoise = r.i_qnoise.sigma;
    return r;
}

// ---------------------------------------------------------------- small-ball event

struct ChernoffReport {
    double p_hat = 0.0;
    double sigma = 0.0;
    double bound = 0.0;
    double mutual_info = 0.0;
    std::size_t trials = 0;
};

inline double chernoff_bound(const Eigen::MatrixXcd& H, int T) {
    double I = log_det_capacity(H, 1.0);
    double k = static_cast<double>(std::min(H.rows(), H.cols()));
    return std::exp2(-T * (I - k));
}

// P(for all j <= T: max_i |(H x_j)_i| <= sqrt 2), x entries CN(0, 2).
inline ChernoffReport chernoff_event_check(const Eigen::MatrixXcd& H, int T, std::size_t trials, std::uint64_t seed) {
    if (H.rows() < 1 || H.rows() > 3 || H.cols() < 1 || H.cols() > 3) throw ArgumentError("H must be at most 3x3");
    if (T < 1 || T > 8) throw ArgumentError("T must be in 1..8");
    if (trials < 1) throw ArgumentError("trials must be >= 1");
    ChernoffReport r;
    r.trials = trials;
    r.mutual_info = log_det_capacity(H, 1.0);
    r.bound = chernoff_bound(H, T);
    Rng rng(seed);
    std::size_t hits = 0;
    Eigen::VectorXcd x(H.cols());
    for (std::size_t t = 0; t < trials; ++t) {
        bool all = true;
        for (int j = 0; j < T && all; ++j) {
            for (Eigen::Index k = 0; k < H.cols(); ++k) x(k) = rng.complex_normal(2.0);
            Eigen::VectorXcd y = H * x;
            for (Eigen::Index k = 0; k < y.size(); ++k)
                if (std::norm(y(k)) > 2.0) all = false;
        }
        hits += all;
    }
    auto p = proportion(hits, trials);
    r.p_hat = p.p_hat;
    r.sigma = p.sigma;
    return r;
}

// ---------------------------------------------------------------- end-to-end simulation

inline constexpr double kQmfMaxRateTimesT = 16.0;
inline constexpr std::size_t kQmfNodeCap = 5;

struct QmfTrial {
    std::uint64_t symbol;
    std::uint64_t decoded;
};

struct QmfOutcome {
    std::size_t trials = 0;
    std::size_t errors = 0;
    double p_hat = 0.0;
    double sigma = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t messages = 1;
    std::vector<QmfTrial> records;
};

namespace detail {

inline double log_erfc(double x) {
    if (x < 25) return std::log(std::erfc(x));
    return -x * x - std::log(x * std::sqrt(std::numbers::pi)) + std::log1p(-0.5 / (x * x));
}

// log P(round(mu + n) = k) for n ~ N(0, var), accurate in both tails.
inline double log_cell_prob(double mu, long k, double var) {
    const double s = std::sqrt(2 * var);
    double lo = (k - 0.5 - mu) / s, hi = (k + 0.5 - mu) / s;
    if (lo < 0 && hi > 0) return std::log(0.5 * (std::erfc(lo) - std::erfc(hi)));
    if (hi <= 0) { // mirror into the upper tail
        double t = -lo;
        lo = -hi;
        hi = t;
    }
    double a = log_erfc(lo), b = log_erfc(hi);
    return std::log(0.5) + a + std::log1p(-std::exp(b - a));
}

using QBlocks = std::vector<std::vector<QPoint>>; // per node, empty for non-relays

class QmfNetworkRun {
public:
    QmfNetworkRun(const GaussNetwork& net, int T, std::uint64_t ts) : net_(net), T_(T), ts_(ts) {
        auto L = is_layered(net);
        for (std::size_t v = 0; v < net.size(); ++v)
            if (L.layer[v] >= 0) order_.push_back(static_cast<int>(v));
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return L.layer[a] < L.layer[b]; });
        dest_ = net.dest();
        for (int v : order_)
            if (v != net.source && v != dest_) relays_.push_back(v);
    }

    bool has_relays() const { return !relays_.empty(); }

    void source_codeword(std::uint64_t w, std::vector<std::complex<double>>& x) const {
        Rng r(hash_combine(hash_combine(ts_, 0x736f75726365ULL), w));
        x.resize(T_);
        for (auto& c : x) c = r.complex_normal();
    }

    // Random Gaussian codeword assigned by relay v to the quantized block q.
    void relay_map(int v, const std::vector<QPoint>& q, std::vector<std::complex<double>>& x) const {
        std::uint64_t h = hash_combine(ts_, 0x72656c6179ULL + static_cast<std::uint64_t>(v));
        for (const auto& p : q) {
            h = hash_combine(h, static_cast<std::uint64_t>(p.re));
            h = hash_combine(h, static_cast<std::uint64_t>(p.im));
        }
        Rng r(h);
        x.resize(T_);
        for (auto& c : x) c = r.complex_normal();
    }

    // Noise-free signal at D. Relays quantize their input plus noise drawn from `noise`;
    // the quantized blocks are written to `q`.
    std::vector<std::complex<double>> propagate(const std::vector<std::complex<double>>& xs, Rng& noise,
                                                QBlocks& q) const {
        return run(xs, [&](int v, const std::vector<std::complex<double>>& y) {
            q[v].resize(T_);
            for (int t = 0; t < T_; ++t) q[v][t] = quantize(y[t] + noise.complex_normal());
        }, q);
    }

    // Same with every relay forced to the blocks in `q`; returns log P(q | x_S) in `logp`.
    std::vector<std::complex<double>> propagate_fixed(const std::vector<std::complex<double>>& xs, const QBlocks& q,
                                                      double& logp) const {
        logp = 0.0;
        QBlocks copy = q;
        return run(xs, [&](int v, const std::vector<std::complex<double>>& y) {
            for (int t = 0; t < T_; ++t)
                logp += log_cell_prob(y[t].real(), q[v][t].re, 0.5) + log_cell_prob(y[t].imag(), q[v][t].im, 0.5);
        }, copy);
    }

    QBlocks empty_blocks() const { return QBlocks(net_.size()); }

private:
    template <class AtRelay>
    std::vector<std::complex<double>> run(const std::vector<std::complex<double>>& xs, AtRelay&& at_relay,
                                          QBlocks& q) const {
        const std::size_t n = net_.size();
        std::vector<std::vector<std::complex<double>>> x(n);
        std::vector<std::complex<double>> y(T_);
        for (int v : order_) {
            if (v == net_.source) {
                x[v] = xs;
                continue;
            }
            std::fill(y.begin(), y.end(), std::complex<double>{});
            for (const auto& e : net_.edges)
                if (e.to == v && !x[e.from].empty())
                    for (int t = 0; t < T_; ++t) y[t] += e.H(0, 0) * x[e.from][t];
            if (v == dest_) return y;
            at_relay(v, y);
            relay_map(v, q[v], x[v]);
        }
        return std::vector<std::complex<double>>(T_);
    }

    const GaussNetwork& net_;
    int T_;
    std::uint64_t ts_;
    int dest_;
    std::vector<int> order_;
    std::vector<int> relays_;
};

inline double log_sum_exp(const std::vector<double>& v) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double x : v) mx = std::max(mx, x);
    if (!std::isfinite(mx)) return mx;
    double acc = 0.0;
    for (double x : v) acc += std::exp(x - mx);
    return mx + std::log(acc);
}

} // namespace detail

// Destination metric for message w: sum over relay blocks q of P(q | w) N(y_D; s(q)).
// The realized blocks q* are evaluated exactly; the remaining mass is estimated from
// mc_samples common-random draws of q ~ P(. | w) that differ from q*. With random relay
// maps the q* term carries almost all of the sum, so this tracks exact ML closely
// without enumerating every quantized block.
inline QmfOutcome simulate_qmf(const GaussNetwork& net, int T, double R_in, std::size_t trials, std::uint64_t seed,
                               std::size_t mc_samples = 64, bool keep_records = false, unsigned threads = 0) {
    if (T < 1) throw ArgumentError("T must be >= 1");
    if (R_in < 0) throw ArgumentError("R_in must be >= 0");
    if (trials < 1) throw ArgumentError("trials must be >= 1");
    if (R_in * T > kQmfMaxRateTimesT + 1e-12) throw ResourceError("R_in*T must be <= 16");
    if (net.size() > kQmfNodeCap) throw ResourceError("simulate_qmf supports at most 5 nodes");
    if (!net.single_antenna()) throw ArgumentError("simulate_qmf requires single-antenna nodes");
    if (!is_layered(net).layered) throw ArgumentError("simulate_qmf requires a layered network");
    if (net.dest() < 0) throw ArgumentError("network has no destination");
    if (mc_samples < 1) throw ArgumentError("mc_samples must be >= 1");

    QmfOutcome out;
    out.trials = trials;
    out.messages = static_cast<std::uint64_t>(std::ceil(std::exp2(R_in * T) - 1e-9));
    std::vector<QmfTrial> rec(trials);
    parallel_for(
        trials,
        [&](std::size_t t) {
            std::uint64_t ts = trial_seed(seed, t);
            detail::QmfNetworkRun run(net, T, ts);
            Rng pick(hash_combine(ts, 0x73796d626f6cULL));
            std::uint64_t u = pick.below(out.messages);
            if (out.messages == 1) {
                rec[t] = {0, 0};
                return;
            }

            std::vector<std::complex<double>> xs;
            run.source_codeword(u, xs);
            Rng noise(hash_combine(ts, 0x6e6f697365ULL));
            detail::QBlocks qstar = run.empty_blocks(), qk = run.empty_blocks();
            auto s = run.propagate(xs, noise, qstar);
            std::vector<std::complex<double>> c(T);
            for (int k = 0; k < T; ++k) {
                QPoint p = quantize(s[k] + noise.complex_normal());
                c[k] = {static_cast<double>(p.re), static_cast<double>(p.im)};
            }
            auto dist = [&](const std::vector<std::complex<double>>& sk) {
                double d = 0.0;
                for (int j = 0; j < T; ++j) d += std::norm(c[j] - sk[j]);
                return d;
            };

            const bool relays = run.has_relays();
            const double logK = std::log(static_cast<double>(mc_samples));
            std::uint64_t best = 0;
            double best_ll = -std::numeric_limits<double>::infinity();
            std::vector<double> terms;
            for (std::uint64_t w = 0; w < out.messages; ++w) {
                run.source_codeword(w, xs);
                double val;
                if (!relays) {
                    val = -dist(run.propagate(xs, noise, qk));
                } else {
                    terms.clear();
                    double logp = 0.0;
                    auto sstar = run.propagate_fixed(xs, qstar, logp);
                    terms.push_back(logp - dist(sstar));
                    for (std::size_t k = 0; k < mc_samples; ++k) {
                        Rng mc(hash_combine(hash_combine(ts, 0x6d63ULL), k));
                        auto sk = run.propagate(xs, mc, qk);
                        if (qk != qstar) terms.push_back(-dist(sk) - logK);
                    }
                    val = detail::log_sum_exp(terms);
                }
                if (val > best_ll) {
                    best_ll = val;
                    best = w;
                }
            }
            rec[t] = {u, best};
        },
        threads);
    for (const auto& r : rec) out.errors += r.symbol != r.decoded;
    auto p = proportion(out.errors, trials);
    out.p_hat = p.p_hat;
    out.sigma = p.sigma;
    out.ci_low = p.ci_low;
    out.ci_high = p.ci_high;
    if (keep_records) out.records = std::move(rec);
    return out;
}

} // namespace relaynet
