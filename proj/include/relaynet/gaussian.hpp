#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "gf2.hpp"
#include "maxflow.hpp"
#include "network.hpp"
#include "random.hpp"
#include "simplex.hpp"

namespace relaynet {

using cd = std::complex<double>;

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }

inline double rate_factor(SnrConvention c) { return c == SnrConvention::Real ? 0.5 : 1.0; }

// n = ceil(log SNR)^+ (complex) or ceil(1/2 log SNR)^+ (real)
inline int snr_to_levels(double snr, SnrConvention c = SnrConvention::Complex) {
    if (!(snr > 1.0)) return 0;
    double v = rate_factor(c) * std::log2(snr);
    double r = std::round(v);
    if (std::abs(v - r) < 1e-12) v = r;
    return std::max(0, static_cast<int>(std::ceil(v)));
}

// ---------------------------------------------------------------- MIMO

// Eigenvalues of G G^* (or G^* G, whichever is smaller), clipped at 0, descending.
inline std::vector<double> gram_eigenvalues(const Eigen::MatrixXcd& G) {
    if (G.size() == 0) return {};
    Eigen::MatrixXcd M = G.rows() <= G.cols() ? Eigen::MatrixXcd(G * G.adjoint()) : Eigen::MatrixXcd(G.adjoint() * G);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    for (double& e : ev) e = std::max(e, 0.0);
    std::sort(ev.rbegin(), ev.rend());
    return ev;
}

// log2 det(I + P G G^*)
inline double log_det_capacity(const Eigen::MatrixXcd& G, double P) {
    double c = 0.0;
    for (double e : gram_eigenvalues(G)) c += std::log2(1.0 + P * e);
    return c;
}

enum class Allocation { Waterfill, EqualPower };

struct MimoCutChannel {
    Eigen::MatrixXcd G;
    double per_antenna_power = 1.0;
};

// Water-filling of total power Ptot over eigenmodes; returns per-mode powers.
// The water level is solved exactly on the active set.
inline std::vector<double> waterfill_powers(const std::vector<double>& lambda, double Ptot) {
    std::vector<double> p(lambda.size(), 0.0);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        if (lambda[i] > 0) idx.push_back(i);
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return lambda[a] > lambda[b]; });
    for (std::size_t k = idx.size(); k >= 1; --k) {
        double inv = 0.0;
        for (std::size_t i = 0; i < k; ++i) inv += 1.0 / lambda[idx[i]];
        double mu = (Ptot + inv) / static_cast<double>(k);
        if (mu - 1.0 / lambda[idx[k - 1]] > 0) {
            for (std::size_t i = 0; i < k; ++i) p[idx[i]] = mu - 1.0 / lambda[idx[i]];
            break;
        }
    }
    return p;
}

// Sum-power (m*P) allocation across the modes of an n x m channel; bits.
inline double mimo_capacity(const MimoCutChannel& ch, Allocation alloc) {
    const auto m = static_cast<double>(ch.G.cols());
    const auto K = static_cast<std::size_t>(std::min(ch.G.rows(), ch.G.cols()));
    if (K == 0) return 0.0;
    auto ev = gram_eigenvalues(ch.G);
    ev.resize(K, 0.0);
    const double Ptot = m * ch.per_antenna_power;
    double c = 0.0;
    if (alloc == Allocation::EqualPower) {
        for (double e : ev) c += std::log2(1.0 + Ptot / static_cast<double>(K) * e);
    } else {
        auto p = waterfill_powers(ev, Ptot);
        for (std::size_t i = 0; i < K; ++i) c += std::log2(1.0 + p[i] * ev[i]);
    }
    return c;
}

// Capacity of the linear finite-field MIMO channel obtained from real-valued gains.
inline long lff_mimo_capacity(const Eigen::MatrixXd& H, SnrConvention conv) {
    const auto rows = static_cast<std::size_t>(H.rows()), cols = static_cast<std::size_t>(H.cols());
    std::vector<int> n(rows * cols);
    int q = 0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            n[r * cols + c] = snr_to_levels(H(r, c) * H(r, c), conv);
            q = std::max(q, n[r * cols + c]);
        }
    BitMatrix G(rows * q, cols * q);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (n[r * cols + c] > 0) G.paste(shift_matrix(q, n[r * cols + c]), r * q, c * q);
    return static_cast<long>(rank(G));
}

// ---------------------------------------------------------------- cut-set bounds

// Channel across a cut: columns are the transmit antennas of nodes in Omega with
// a crossing edge, rows are the receive antennas of nodes in Omega^c.
// `sender`/`receiver` masks restrict the active links (half-duplex modes).
inline Eigen::MatrixXcd cut_channel(const GaussNetwork& net, const Cut& cut, std::uint64_t sender = ~std::uint64_t{0},
                                    std::uint64_t receiver = ~std::uint64_t{0}) {
    const int n = static_cast<int>(net.size());
    auto active = [&](const GaussEdge& e) {
        return cut.contains(e.from) && !cut.contains(e.to) && ((sender >> e.from) & 1U) && ((receiver >> e.to) & 1U);
    };
    std::vector<int> col0(n, -1), row0(n, -1);
    int cols = 0, rows = 0;
    for (int v = 0; v < n; ++v) {
        bool tx = false;
        for (const auto& e : net.edges)
            if (e.from == v && active(e)) tx = true;
        if (tx) {
            col0[v] = cols;
            cols += net.tx_antennas[v];
        }
        if (!cut.contains(v) && ((receiver >> v) & 1U)) {
            row0[v] = rows;
            rows += net.rx_antennas[v];
        }
    }
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(rows, cols);
    for (const auto& e : net.edges)
        if (active(e)) G.block(row0[e.to], col0[e.from], e.H.rows(), e.H.cols()) = e.H;
    return G;
}

struct GaussCutValue {
    Cut cut;
    double upper;
    double iid;
};

struct GaussCutsetResult {
    double upper = 0.0;
    double iid = 0.0;
    Cut argmin_upper;
    Cut argmin_iid;
    std::vector<GaussCutValue> per_cut;
};

inline GaussCutsetResult cutset_bounds(const GaussNetwork& net, int dest = -1, bool keep_table = false,
                                       std::size_t cap = kDefaultNodeCap) {
    if (dest < 0) dest = net.dest();
    if (dest < 0) throw ArgumentError("network has no destination");
    const double f = rate_factor(net.convention);
    GaussCutsetResult res;
    res.upper = res.iid = std::numeric_limits<double>::infinity();
    for (const Cut& c : enumerate_cuts(net, dest, cap)) {
        MimoCutChannel ch{cut_channel(net, c), net.power};
        double up = f * mimo_capacity(ch, Allocation::Waterfill);
        double iid = f * log_det_capacity(ch.G, net.power);
        if (keep_table) res.per_cut.push_back({c, up, iid});
        if (up < res.upper) {
            res.upper = up;
            res.argmin_upper = c;
        }
        if (iid < res.iid) {
            res.iid = iid;
            res.argmin_iid = c;
        }
    }
    return res;
}

// ---------------------------------------------------------------- single relay

inline double df_rate_relay(cd h_sd, cd h_sr, cd h_rd) {
    double sd = std::norm(h_sd), sr = std::norm(h_sr), rd = std::norm(h_rd);
    return std::max(std::log2(1 + sd), std::min(std::log2(1 + sr), std::log2(1 + sd + rd)));
}

// Maximizes a unimodal function on [lo, hi]; endpoints are checked explicitly.
template <class Fn>
double golden_max(Fn&& f, double lo, double hi, double tol = 1e-9) {
    const double g = (std::sqrt(5.0) - 1) / 2;
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        }
    }
    return std::max({fc, fd, f(0.5 * (a + b)), f(lo), f(hi)});
}

inline double relay_cutset(cd h_sd, cd h_sr, cd h_rd) {
    double sd = std::norm(h_sd), sr = std::norm(h_sr), rd = std::norm(h_rd);
    auto obj = [&](double rho) {
        double bc = std::log2(1 + (1 - rho * rho) * (sd + sr));
        double mac = std::log2(1 + sd + rd + 2 * rho * std::sqrt(sd * rd));
        return std::min(bc, mac);
    };
    return golden_max(obj, 0.0, 1.0);
}

// ---------------------------------------------------------------- diamond

inline double diamond_cutset(cd h_sa1, cd h_sa2, cd h_a1d, cd h_a2d) {
    double s1 = std::norm(h_sa1), s2 = std::norm(h_sa2), d1 = std::norm(h_a1d), d2 = std::norm(h_a2d);
    double a1 = std::abs(h_a1d), a2 = std::abs(h_a2d);
    return std::min({std::log2(1 + s1 + s2), std::log2(1 + (a1 + a2) * (a1 + a2)),
                     std::log2(1 + s1) + std::log2(1 + d2), std::log2(1 + s2) + std::log2(1 + d1)});
}

inline double pdf_rate_diamond(cd h_sa1, cd h_sa2, cd h_a1d, cd h_a2d) {
    if (std::abs(h_sa1) < std::abs(h_sa2)) {
        std::swap(h_sa1, h_sa2);
        std::swap(h_a1d, h_a2d);
    }
    double s1 = std::norm(h_sa1), s2 = std::norm(h_sa2), d1 = std::norm(h_a1d), d2 = std::norm(h_a2d);
    if (std::abs(h_sa1) <= std::abs(h_a1d)) return std::log2(1 + s1);
    double alpha = d1 / s1;
    double partial = std::log2(1 + d1) + std::min(std::log2(1 + (1 - alpha) * s2 / (alpha * s2 + 1)),
                                                  std::log2(1 + d2 / (1 + d1)));
    return partial;
}

// Upper bound on any decode-forward rate in the diamond: the relays in the
// decoding set A must all decode, and D sees at most coherent combining from A.
inline double diamond_df_bound(cd h_sa1, cd h_sa2, cd h_a1d, cd h_a2d) {
    double s[2] = {std::norm(h_sa1), std::norm(h_sa2)};
    double a[2] = {std::abs(h_a1d), std::abs(h_a2d)};
    double best = 0.0;
    for (int mask = 1; mask < 4; ++mask) {
        double dec = std::numeric_limits<double>::infinity(), amp = 0.0;
        for (int i = 0; i < 2; ++i)
            if ((mask >> i) & 1) {
                dec = std::min(dec, std::log2(1 + s[i]));
                amp += a[i];
            }
        best = std::max(best, std::min(dec, std::log2(1 + amp * amp)));
    }
    return best;
}

// Not a formula from the literature this toolkit follows: amplify-forward with unit
// transmit power at each relay and phases aligned at the destination.
inline double af_rate_diamond(cd h_sa1, cd h_sa2, cd h_a1d, cd h_a2d) {
    double s[2] = {std::norm(h_sa1), std::norm(h_sa2)};
    double d[2] = {std::norm(h_a1d), std::norm(h_a2d)};
    double sig = 0.0, noise = 1.0;
    for (int i = 0; i < 2; ++i) {
        double beta2 = 1.0 / (s[i] + 1.0);
        sig += std::sqrt(d[i] * beta2 * s[i]);
        noise += d[i] * beta2;
    }
    return std::log2(1 + sig * sig / noise);
}

// ---------------------------------------------------------------- MAC / BC regions

struct RegionGap {
    int n1 = 0, n2 = 0;
    double mac_shortfall = 0.0;
    double bc_shortfall = 0.0;
    double mac_at[2] = {0, 0}; // deterministic rate pair attaining the MAC shortfall
    double bc_at[2] = {0, 0};
};

namespace detail {

// Smallest delta >= 0 with (r - delta)^+ inside the region; `inside` must be downward closed.
template <class Inside>
double shortfall(double r1, double r2, Inside&& inside) {
    auto ok = [&](double d) { return inside(std::max(0.0, r1 - d), std::max(0.0, r2 - d)); };
    if (ok(0.0)) return 0.0;
    double lo = 0.0, hi = std::max(r1, r2);
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

} // namespace detail

inline bool gaussian_mac_contains(double s1, double s2, double r1, double r2, double f = 1.0) {
    const double e = 1e-12;
    return r1 <= f * std::log2(1 + s1) + e && r2 <= f * std::log2(1 + s2) + e &&
           r1 + r2 <= f * std::log2(1 + s1 + s2) + e;
}

// Degraded Gaussian BC (s1 >= s2) with superposition: user 1 gets power fraction a.
inline bool gaussian_bc_contains(double s1, double s2, double r1, double r2, double f = 1.0) {
    const double e = 1e-12;
    double a = s1 > 0 ? (std::exp2(r1 / f) - 1) / s1 : (r1 > e ? 2.0 : 0.0);
    if (a > 1 + e) return false;
    a = std::clamp(a, 0.0, 1.0);
    return r2 <= f * std::log2(1 + (1 - a) * s2 / (a * s2 + 1)) + e;
}

inline RegionGap region_gap_mac_bc(double snr1, double snr2, SnrConvention conv = SnrConvention::Complex,
                                   int samples = 64) {
    if (!(snr1 >= snr2 && snr2 >= 0)) throw ArgumentError("region_gap_mac_bc requires snr1 >= snr2 >= 0");
    const double f = rate_factor(conv);
    RegionGap g;
    g.n1 = snr_to_levels(snr1, conv);
    g.n2 = snr_to_levels(snr2, conv);
    const double n1 = g.n1, n2 = g.n2;

    // Boundary of both deterministic regions: R2 <= n2, R1 + R2 <= n1 (and R1 <= n1).
    std::vector<std::pair<double, double>> pts;
    for (int k = 0; k <= samples; ++k) {
        double t = static_cast<double>(k) / samples;
        pts.emplace_back(n1 - t * n2, t * n2);      // dominant face
        pts.emplace_back(t * (n1 - n2), n2);        // top face
        pts.emplace_back(n1, 0.0);
    }
    for (auto [r1, r2] : pts) {
        double m = detail::shortfall(r1, r2, [&](double a, double b) { return gaussian_mac_contains(snr1, snr2, a, b, f); });
        if (m > g.mac_shortfall) {
            g.mac_shortfall = m;
            g.mac_at[0] = r1;
            g.mac_at[1] = r2;
        }
        double b = detail::shortfall(r1, r2, [&](double a, double c) { return gaussian_bc_contains(snr1, snr2, a, c, f); });
        if (b > g.bc_shortfall) {
            g.bc_shortfall = b;
            g.bc_at[0] = r1;
            g.bc_at[1] = r2;
        }
    }
    return g;
}

// ---------------------------------------------------------------- half-duplex

struct ModeSchedule {
    std::vector<std::uint64_t> modes; // bit v set iff node v transmits
    std::vector<double> t;
};

struct HalfDuplexResult {
    double rate = 0.0;
    ModeSchedule schedule;
    std::size_t cuts = 0;
    bool iid_inputs = true; // per-mode values use i.i.d. inputs, a lower bound on the joint maximum
};

inline constexpr std::size_t kHalfDuplexNodeCap = 12;

inline std::vector<std::uint64_t> half_duplex_modes(const GaussNetwork& net, int dest) {
    std::vector<int> free;
    for (int v = 0; v < static_cast<int>(net.size()); ++v)
        if (v != net.source && v != dest) free.push_back(v);
    std::vector<std::uint64_t> modes;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << free.size()); ++m) {
        std::uint64_t tx = std::uint64_t{1} << net.source;
        for (std::size_t k = 0; k < free.size(); ++k)
            if ((m >> k) & 1U) tx |= std::uint64_t{1} << free[k];
        modes.push_back(tx);
    }
    return modes;
}

inline HalfDuplexResult half_duplex_cutset(const GaussNetwork& net, int dest = -1) {
    if (dest < 0) dest = net.dest();
    if (dest < 0) throw ArgumentError("network has no destination");
    if (net.size() > kHalfDuplexNodeCap)
        throw ResourceError("half-duplex bound is limited to " + std::to_string(kHalfDuplexNodeCap) + " nodes");
    const double f = rate_factor(net.convention);
    auto modes = half_duplex_modes(net, dest);
    auto cuts = enumerate_cuts(net, dest);
    const std::size_t M = modes.size();
    const std::uint64_t all = (std::uint64_t{1} << net.size()) - 1;

    // variables: t_1..t_M, lambda. maximize lambda.
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (const Cut& c : cuts) {
        std::vector<double> row(M + 1, 0.0);
        for (std::size_t m = 0; m < M; ++m) {
            Eigen::MatrixXcd G = cut_channel(net, c, modes[m], all & ~modes[m]);
            row[m] = -f * log_det_capacity(G, net.power);
        }
        row[M] = 1.0;
        A.push_back(std::move(row));
        b.push_back(0.0);
    }
    std::vector<double> sum(M + 1, 1.0);
    sum[M] = 0.0;
    A.push_back(sum);
    b.push_back(1.0);
    std::vector<double> c(M + 1, 0.0);
    c[M] = 1.0;
    auto lp = simplex_max(A, b, c);

    HalfDuplexResult res;
    res.rate = std::max(0.0, lp.value);
    res.cuts = cuts.size();
    res.schedule.modes = modes;
    res.schedule.t.assign(lp.x.begin(), lp.x.begin() + static_cast<std::ptrdiff_t>(M));
    double tot = 0.0;
    for (double& t : res.schedule.t) {
        t = std::max(0.0, t);
        tot += t;
    }
    if (tot < 1.0) res.schedule.t[0] += 1.0 - tot; // cut values are >= 0, extra time never hurts
    return res;
}

// ---------------------------------------------------------------- fading

using GainSampler = std::function<GaussNetwork(Rng&)>;

inline GainSampler constant_sampler(GaussNetwork net) {
    return [net](Rng&) { return net; };
}

// Each entry of every H_ij is multiplied by an independent CN(0,1) draw.
inline GainSampler rayleigh_sampler(GaussNetwork tmpl) {
    return [tmpl](Rng& rng) {
        GaussNetwork n = tmpl;
        for (auto& e : n.edges)
            for (Eigen::Index r = 0; r < e.H.rows(); ++r)
                for (Eigen::Index c = 0; c < e.H.cols(); ++c) e.H(r, c) *= rng.complex_normal();
        return n;
    };
}

inline GainSampler two_point_sampler(GaussNetwork a, GaussNetwork b, double p_a) {
    return [a, b, p_a](Rng& rng) { return rng.uniform() < p_a ? a : b; };
}

struct ErgodicResult {
    double mean = 0.0;
    double stderr_ = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::vector<double> samples;
};

inline std::vector<double> sample_cutset(const GainSampler& sampler, std::size_t trials, std::uint64_t seed) {
    std::vector<double> v(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(trial_seed(seed, t));
        v[t] = cutset_bounds(sampler(rng)).upper;
    }
    return v;
}

inline ErgodicResult ergodic_cutset(const GainSampler& sampler, std::size_t trials, std::uint64_t seed) {
    if (trials < 1) throw ArgumentError("trials must be >= 1");
    ErgodicResult r;
    r.samples = sample_cutset(sampler, trials, seed);
    double s = 0.0;
    for (double x : r.samples) s += x;
    r.mean = s / static_cast<double>(trials);
    double ss = 0.0;
    for (double x : r.samples) ss += (x - r.mean) * (x - r.mean);
    r.stderr_ = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials)) : 0.0;
    r.ci_low = r.mean - 1.96 * r.stderr_;
    r.ci_high = r.mean + 1.96 * r.stderr_;
    return r;
}

struct OutagePoint {
    double R;
    double lower; // P{C < R}
    double upper; // P{C < R + kappa}
};

inline std::vector<OutagePoint> outage_curve(const GainSampler& sampler, const std::vector<double>& rates,
                                             double kappa, std::size_t trials, std::uint64_t seed) {
    if (kappa < 0) throw ArgumentError("kappa must be >= 0");
    if (trials < 1) throw ArgumentError("trials must be >= 1");
    auto c = sample_cutset(sampler, trials, seed);
    std::vector<OutagePoint> out;
    for (double R : rates) {
        std::size_t lo = 0, hi = 0;
        for (double x : c) {
            lo += x < R;
            hi += x < R + kappa;
        }
        out.push_back({R, static_cast<double>(lo) / trials, static_cast<double>(hi) / trials});
    }
    return out;
}

// ---------------------------------------------------------------- low-rate bound

struct RoutingBound {
    double flow = 0.0;
    int degree = 0; // max degree of the undirected support graph
    double lambda = 0.0; // 1 / (2 d (d+1))
};

inline RoutingBound orthogonal_routing_bound(const GaussNetwork& net, int dest = -1) {
    if (!net.single_antenna()) throw ArgumentError("orthogonal_routing_bound requires single-antenna nodes");
    if (dest < 0) dest = net.dest();
    const std::size_t n = net.size();
    std::vector<std::vector<char>> nb(n, std::vector<char>(n, 0));
    for (const auto& e : net.edges)
        if (std::norm(e.H(0, 0)) > 0) nb[e.from][e.to] = nb[e.to][e.from] = 1;
    RoutingBound r;
    for (std::size_t v = 0; v < n; ++v) {
        int d = 0;
        for (std::size_t u = 0; u < n; ++u) d += nb[v][u];
        r.degree = std::max(r.degree, d);
    }
    if (r.degree == 0) return r;
    const double d = r.degree;
    r.lambda = 1.0 / (2 * d * (d + 1));
    const double f = rate_factor(net.convention);
    MaxFlow mf(n);
    for (const auto& e : net.edges) {
        double g = std::norm(e.H(0, 0));
        if (g > 0) mf.add_edge(e.from, e.to, r.lambda * f * std::log2(1 + d * g));
    }
    r.flow = mf.run(net.source, dest);
    return r;
}

// ---------------------------------------------------------------- gap surface

struct SurfacePoint {
    double x_db; // |h_RD|^2 / |h_SD|^2
    double y_db; // |h_SR|^2 / |h_SD|^2
    double gap;
};

struct GapSurface {
    std::vector<SurfacePoint> points;
    double max_gap = -std::numeric_limits<double>::infinity();
    double min_gap = std::numeric_limits<double>::infinity();
    SurfacePoint argmax{};
};

inline std::vector<double> db_range(double lo, double hi, double step) {
    if (!(step > 0) || hi < lo) throw ArgumentError("invalid dB range");
    std::vector<double> v;
    auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long k = 0; k <= count; ++k) v.push_back(lo + static_cast<double>(k) * step);
    return v;
}

inline double relay_gap_at(double x_db, double y_db, double sd_db) {
    double sd = db_to_lin(sd_db);
    cd h_sd(std::sqrt(sd), 0), h_rd(std::sqrt(sd * db_to_lin(x_db)), 0), h_sr(std::sqrt(sd * db_to_lin(y_db)), 0);
    return relay_cutset(h_sd, h_sr, h_rd) - df_rate_relay(h_sd, h_sr, h_rd);
}

// Row-major: x outer, y inner.
inline GapSurface df_gap_surface(const std::vector<double>& xs, const std::vector<double>& ys, double sd_db = 20.0) {
    GapSurface s;
    for (double x : xs)
        for (double y : ys) {
            SurfacePoint p{x, y, relay_gap_at(x, y, sd_db)};
            s.points.push_back(p);
            if (p.gap > s.max_gap) {
                s.max_gap = p.gap;
                s.argmax = p;
            }
            s.min_gap = std::min(s.min_gap, p.gap);
        }
    return s;
}

} // namespace relaynet
