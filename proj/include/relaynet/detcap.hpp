#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "gf2.hpp"
#include "network.hpp"

namespace relaynet {

struct CutValue {
    Cut cut;
    long value;
};

struct CapacityResult {
    long value = 0;
    Cut argmin_cut;
    std::vector<CutValue> per_cut; // filled only on request
};

inline CapacityResult min_cut_capacity(const DetNetwork& net, int dest = -1, bool keep_table = false,
                                       std::size_t cap = kDefaultNodeCap) {
    if (dest < 0) dest = net.dest();
    if (dest < 0) throw ArgumentError("network has no destination");
    CapacityResult res;
    res.value = std::numeric_limits<long>::max();
    for (const Cut& c : enumerate_cuts(net, dest, cap)) {
        long r = static_cast<long>(rank(cut_transfer_matrix(net, c)));
        if (keep_table) res.per_cut.push_back({c, r});
        if (r < res.value) {
            res.value = r;
            res.argmin_cut = c;
        }
    }
    return res;
}

inline CapacityResult multicast_capacity(const DetNetwork& net, const std::vector<int>& dests,
                                         bool keep_table = false, std::size_t cap = kDefaultNodeCap) {
    if (dests.empty()) throw ArgumentError("multicast requires at least one destination");
    CapacityResult best;
    best.value = std::numeric_limits<long>::max();
    for (int d : dests) {
        auto r = min_cut_capacity(net, d, keep_table, cap);
        if (keep_table) best.per_cut.insert(best.per_cut.end(), r.per_cut.begin(), r.per_cut.end());
        if (r.value < best.value) {
            best.value = r.value;
            best.argmin_cut = r.argmin_cut;
        }
    }
    return best;
}

inline long relay_closed_form(long n_sr, long n_sd, long n_rd) {
    if (n_sr < 0 || n_sd < 0 || n_rd < 0) throw ArgumentError("gains must be non-negative");
    long branch = n_sd > std::min(n_sr, n_rd) ? n_sd : std::min(n_sr, n_rd);
    long minmax = std::min(std::max(n_sr, n_sd), std::max(n_rd, n_sd));
    if (branch != minmax) throw std::logic_error("relay closed form branches disagree");
    return branch;
}

inline long diamond_closed_form(long n_sa1, long n_sa2, long n_a1d, long n_a2d) {
    if (n_sa1 < 0 || n_sa2 < 0 || n_a1d < 0 || n_a2d < 0) throw ArgumentError("gains must be non-negative");
    return std::min({std::max(n_sa1, n_sa2), std::max(n_a1d, n_a2d), n_sa1 + n_a2d, n_sa2 + n_a1d});
}

// ---------------------------------------------------------------- unfolding

inline constexpr std::size_t kUnfoldNodeCap = 10;

struct UnfoldedCapacity {
    double value = 0.0;
    double cbar = 0.0;
    int K = 0;
};

// Rank of the channel block from original nodes in A (stage i) to nodes outside B (stage i+1).
inline std::size_t stage_rank(const DetNetwork& net, std::uint64_t A, std::uint64_t B) {
    std::vector<int> tx, rx;
    for (std::size_t v = 0; v < net.size(); ++v) {
        if ((A >> v) & 1U) tx.push_back(static_cast<int>(v));
        if (!((B >> v) & 1U)) rx.push_back(static_cast<int>(v));
    }
    auto q = static_cast<std::size_t>(net.q);
    BitMatrix G(rx.size() * q, tx.size() * q);
    bool any = false;
    for (std::size_t r = 0; r < rx.size(); ++r)
        for (std::size_t c = 0; c < tx.size(); ++c) {
            int g = net.gain(tx[c], rx[r]);
            if (g > 0) {
                G.paste(shift_matrix(net.q, g), r * q, c * q);
                any = true;
            }
        }
    return any ? rank(G) : 0;
}

// Min cut of the K-stage unfolded network. Each unfolded cut is a sequence of
// per-stage subsets, and its value splits into independent stage-to-stage terms,
// so the minimum is a shortest path over subset states.
inline UnfoldedCapacity unfolded_capacity(const DetNetwork& net, int K, double cbar, int dest = -1,
                                          std::size_t cap = kUnfoldNodeCap) {
    if (K < 1) throw ArgumentError("unfolded_capacity requires K >= 1");
    if (dest < 0) dest = net.dest();
    if (dest < 0) throw ArgumentError("network has no destination");
    const std::size_t n = net.size();
    if (n > cap)
        throw ResourceError("unfolded capacity is limited to " + std::to_string(cap) + " original nodes, got " +
                            std::to_string(n));
    const std::uint64_t states = std::uint64_t{1} << n;
    const double wire = K * cbar;

    std::vector<double> rk(states * states);
    for (std::uint64_t A = 0; A < states; ++A)
        for (std::uint64_t B = 0; B < states; ++B) rk[A * states + B] = static_cast<double>(stage_rank(net, A, B));

    const std::uint64_t S = std::uint64_t{1} << net.source;
    const std::uint64_t D = std::uint64_t{1} << dest;
    std::vector<double> dp(states), next(states);
    for (std::uint64_t B = 0; B < states; ++B) dp[B] = rk[S * states + B] + ((B & S) ? 0.0 : wire);
    for (int i = 1; i < K; ++i) {
        for (std::uint64_t B = 0; B < states; ++B) {
            double best = std::numeric_limits<double>::infinity();
            for (std::uint64_t A = 0; A < states; ++A) {
                double v = dp[A] + rk[A * states + B] + wire * std::popcount(A & ~B);
                best = std::min(best, v);
            }
            next[B] = best;
        }
        std::swap(dp, next);
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t A = 0; A < states; ++A) best = std::min(best, dp[A] + ((A & D) ? wire : 0.0));
    return {best, cbar, K};
}

inline UnfoldedCapacity unfolded_capacity(const DetNetwork& net, int K) {
    double cbar = static_cast<double>(min_cut_capacity(net).value);
    return unfolded_capacity(net, K, cbar);
}

// ---------------------------------------------------------------- functional networks

inline void validate_tables(const FunctionalNetwork& fn) {
    for (const auto& t : fn.tables) {
        std::size_t cells = 1;
        for (int u : t.inputs) cells *= static_cast<std::size_t>(fn.alphabet.at(u));
        if (t.values.size() != cells) throw ArgumentError("function table for '" + fn.ids[t.node] + "' is incomplete");
    }
}

// Express a linear finite-field network (q <= 2) as lookup tables with alphabet 2^q.
inline FunctionalNetwork to_functional(const DetNetwork& net) {
    if (net.q > 2) throw ArgumentError("to_functional supports q <= 2");
    FunctionalNetwork fn;
    fn.ids = net.ids;
    fn.source = net.source;
    fn.destinations = net.destinations;
    fn.alphabet.assign(net.size(), 1);
    const int q = std::max(net.q, 1);
    const int A = 1 << q;
    for (const auto& e : net.edges) fn.alphabet[e.from] = A;
    for (std::size_t v = 0; v < net.size(); ++v) {
        FunctionTable t;
        t.node = static_cast<int>(v);
        std::vector<int> gains;
        for (const auto& e : net.edges)
            if (e.to == static_cast<int>(v)) {
                t.inputs.push_back(e.from);
                gains.push_back(e.gain);
            }
        if (t.inputs.empty()) continue;
        std::size_t cells = 1;
        for (std::size_t k = 0; k < t.inputs.size(); ++k) cells *= A;
        for (std::size_t cell = 0; cell < cells; ++cell) {
            std::size_t rest = cell;
            int y = 0;
            for (std::size_t k = t.inputs.size(); k-- > 0;) {
                int x = static_cast<int>(rest % A);
                rest /= A;
                // bit 0 of the integer is the lowest level; S^(q-n) drops the q-n lowest levels
                y ^= x >> (q - gains[k]);
            }
            t.values.push_back(y);
        }
        fn.tables.push_back(std::move(t));
    }
    return fn;
}

namespace detail {

inline std::vector<std::vector<double>> simplex_grid(int alphabet, int grid) {
    std::vector<std::vector<double>> out;
    if (alphabet == 1) return {{1.0}};
    std::vector<int> c(alphabet, 0);
    auto rec = [&](auto&& self, int k, int left) -> void {
        if (k == alphabet - 1) {
            c[k] = left;
            std::vector<double> p(alphabet);
            for (int i = 0; i < alphabet; ++i) p[i] = static_cast<double>(c[i]) / grid;
            out.push_back(std::move(p));
            return;
        }
        for (int v = 0; v <= left; ++v) {
            c[k] = v;
            self(self, k + 1, left - v);
        }
    };
    rec(rec, 0, grid);
    return out;
}

inline double entropy_bits(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0) h -= x * std::log2(x);
    return h;
}

} // namespace detail

struct GeneralRateResult {
    double rate = 0.0;
    std::vector<std::vector<double>> pmf; // per node
    bool exhaustive = true;
};

// Evaluates min over cuts of H(Y_{Omega^c} | X_{Omega^c}) for a product input distribution.
class FunctionalCutEvaluator {
public:
    explicit FunctionalCutEvaluator(const FunctionalNetwork& fn, std::size_t cap = 5) : fn_(fn) {
        if (fn.size() > cap) throw ResourceError("general_det_rate supports at most " + std::to_string(cap) + " nodes");
        validate_tables(fn);
        n_ = fn.size();
        combos_ = 1;
        for (int a : fn.alphabet) combos_ *= static_cast<std::size_t>(a);

        // outputs per joint input
        std::vector<std::vector<int>> y(combos_, std::vector<int>(n_, 0));
        std::vector<int> x(n_);
        for (std::size_t idx = 0; idx < combos_; ++idx) {
            decode(idx, x);
            for (const auto& t : fn.tables) {
                std::size_t cell = 0;
                for (int u : t.inputs) cell = cell * fn.alphabet[u] + x[u];
                y[idx][t.node] = t.values[cell];
            }
        }

        for (int d : fn.destinations)
            for (const Cut& c : enumerate_cuts(n_, fn.source, d)) {
                CutIndex ci;
                ci.cut = c;
                std::map<std::vector<int>, int> keys;
                ci.pair.resize(combos_);
                for (std::size_t idx = 0; idx < combos_; ++idx) {
                    decode(idx, x);
                    std::vector<int> key;
                    for (std::size_t v = 0; v < n_; ++v)
                        if (!c.contains(static_cast<int>(v))) {
                            key.push_back(x[v]);
                            key.push_back(y[idx][v]);
                        }
                    auto it = keys.emplace(key, static_cast<int>(keys.size())).first;
                    ci.pair[idx] = it->second;
                }
                ci.npairs = keys.size();
                cuts_.push_back(std::move(ci));
            }
    }

    double evaluate(const std::vector<std::vector<double>>& pmf, Cut* argmin = nullptr) const {
        std::vector<double> px(combos_);
        std::vector<int> x(n_);
        for (std::size_t idx = 0; idx < combos_; ++idx) {
            decode(idx, x);
            double p = 1.0;
            for (std::size_t v = 0; v < n_; ++v) p *= pmf[v][x[v]];
            px[idx] = p;
        }
        std::vector<double> hx(n_);
        for (std::size_t v = 0; v < n_; ++v) hx[v] = detail::entropy_bits(pmf[v]);
        double best = std::numeric_limits<double>::infinity();
        std::vector<double> acc;
        for (const auto& ci : cuts_) {
            acc.assign(ci.npairs, 0.0);
            for (std::size_t idx = 0; idx < combos_; ++idx) acc[ci.pair[idx]] += px[idx];
            double h = detail::entropy_bits(acc);
            for (std::size_t v = 0; v < n_; ++v)
                if (!ci.cut.contains(static_cast<int>(v))) h -= hx[v];
            h = std::max(h, 0.0);
            if (h < best) {
                best = h;
                if (argmin) *argmin = ci.cut;
            }
        }
        return cuts_.empty() ? 0.0 : best;
    }

private:
    struct CutIndex {
        Cut cut;
        std::vector<int> pair;
        std::size_t npairs = 0;
    };

    void decode(std::size_t idx, std::vector<int>& x) const {
        for (std::size_t v = n_; v-- > 0;) {
            x[v] = static_cast<int>(idx % fn_.alphabet[v]);
            idx /= fn_.alphabet[v];
        }
    }

    const FunctionalNetwork& fn_;
    std::size_t n_ = 0;
    std::size_t combos_ = 1;
    std::vector<CutIndex> cuts_;
};

inline constexpr std::size_t kExhaustiveGridLimit = 20000;

inline GeneralRateResult general_det_rate(const FunctionalNetwork& fn, int grid = 8) {
    if (grid < 1) throw ArgumentError("grid must be >= 1");
    if (!is_layered(fn).layered) throw ArgumentError("general_det_rate requires a layered network");
    FunctionalCutEvaluator eval(fn);
    const std::size_t n = fn.size();

    std::vector<std::vector<std::vector<double>>> choices(n);
    std::size_t total = 1;
    for (std::size_t v = 0; v < n; ++v) {
        choices[v] = detail::simplex_grid(fn.alphabet[v], grid);
        total = total > kExhaustiveGridLimit ? total : total * choices[v].size();
    }

    GeneralRateResult res;
    std::vector<std::vector<double>> pmf(n);
    if (total <= kExhaustiveGridLimit) {
        std::vector<std::size_t> pick(n, 0);
        res.rate = -1.0;
        while (true) {
            for (std::size_t v = 0; v < n; ++v) pmf[v] = choices[v][pick[v]];
            double r = eval.evaluate(pmf);
            if (r > res.rate + 1e-12) {
                res.rate = r;
                res.pmf = pmf;
            }
            std::size_t v = 0;
            while (v < n && ++pick[v] == choices[v].size()) pick[v++] = 0;
            if (v == n) break;
        }
        return res;
    }

    // coordinate ascent over the same grid, starting from the uniform distribution
    res.exhaustive = false;
    for (std::size_t v = 0; v < n; ++v) pmf[v].assign(fn.alphabet[v], 1.0 / fn.alphabet[v]);
    res.rate = eval.evaluate(pmf);
    res.pmf = pmf;
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t v = 0; v < n; ++v) {
            if (choices[v].size() == 1) continue;
            auto trial = res.pmf;
            for (const auto& p : choices[v]) {
                trial[v] = p;
                double r = eval.evaluate(trial);
                if (r > res.rate + 1e-12) {
                    res.rate = r;
                    res.pmf = trial;
                    improved = true;
                }
            }
        }
    }
    return res;
}

} // namespace relaynet
