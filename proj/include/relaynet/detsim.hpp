#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "detcap.hpp"
#include "errors.hpp"
#include "gf2.hpp"
#include "network.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "stats.hpp"

namespace relaynet {

inline constexpr double kMaxRateTimesT = 20.0;

enum class SourceMap {
    Random,   // i.i.d. uniform codeword per message
    Linear,   // x_S(w) = L * bits(w); for linearity checks only
    Explicit, // caller-supplied table
};

struct RelayCode {
    int T = 1;
    double R = 0.0;
    int q = 0;
    std::uint64_t messages = 1;
    std::vector<std::optional<BitMatrix>> F; // per node, qT x qT, set for relays
    SourceMap source_map = SourceMap::Random;
    std::uint64_t table_seed = 0;
    BitMatrix L;                  // Linear source map
    std::vector<BitVector> table; // Explicit source map

    std::size_t block_bits() const { return static_cast<std::size_t>(q) * T; }

    // Random map only: writes the packed codeword of w into out.
    void random_codeword_words(std::uint64_t w, std::uint64_t* out, std::size_t nwords) const {
        const std::size_t n = block_bits();
        for (std::size_t k = 0; k < nwords; ++k) out[k] = hash_combine(table_seed, w * nwords + k);
        if (n % 64) out[nwords - 1] &= (std::uint64_t{1} << (n % 64)) - 1;
    }

    BitVector codeword(std::uint64_t w) const {
        const std::size_t n = block_bits();
        switch (source_map) {
        case SourceMap::Explicit:
            return table.at(w);
        case SourceMap::Linear: {
            BitVector b(L.cols());
            for (std::size_t k = 0; k < L.cols(); ++k) b.set(k, (w >> k) & 1U);
            return L * b;
        }
        case SourceMap::Random:
        default: {
            BitVector x(n);
            random_codeword_words(w, x.words().data(), x.words().size());
            return x;
        }
        }
    }
};

inline std::uint64_t message_count(double R, int T) {
    return static_cast<std::uint64_t>(std::ceil(std::exp2(R * T) - 1e-9));
}

inline void check_sim_args(const DetNetwork& net, int T, double R) {
    if (T < 1) throw ArgumentError("T must be >= 1");
    if (R < 0) throw ArgumentError("R must be >= 0");
    if (R * T > kMaxRateTimesT + 1e-12)
        throw ResourceError("R*T must be <= 20 so that the message set can be enumerated");
    if (!is_layered(net).layered)
        throw ArgumentError("network is not layered; unfold it first (see the unfold command)");
    if (net.dest() < 0) throw ArgumentError("network has no destination");
}

inline RelayCode sample_code(const DetNetwork& net, int T, double R, std::uint64_t seed,
                             SourceMap map = SourceMap::Random) {
    check_sim_args(net, T, R);
    RelayCode code;
    code.T = T;
    code.R = R;
    code.q = net.q;
    code.messages = message_count(R, T);
    code.source_map = map;
    Rng rng(seed);
    const std::size_t n = code.block_bits();
    code.F.resize(net.size());
    for (std::size_t v = 0; v < net.size(); ++v) {
        bool relay = static_cast<int>(v) != net.source &&
                     std::find(net.destinations.begin(), net.destinations.end(), static_cast<int>(v)) ==
                         net.destinations.end();
        if (relay) code.F[v] = random_bit_matrix(n, n, rng);
    }
    code.table_seed = rng();
    if (map == SourceMap::Linear) {
        std::size_t bits = 0;
        while ((std::uint64_t{1} << bits) < code.messages) ++bits;
        code.L = random_bit_matrix(n, bits, rng);
    }
    return code;
}

// y += S^(q-n) x applied independently in each of the T time slots.
inline void add_shifted(BitVector& y, const BitVector& x, int q, int gain, int T) {
    const int s = q - gain;
    for (int t = 0; t < T; ++t) {
        std::size_t base = static_cast<std::size_t>(t) * q;
        for (int i = s; i < q; ++i)
            if (x.get(base + i - s)) y.flip(base + i);
    }
}

// Received block at every node for source input x_s; layered order.
inline std::vector<BitVector> propagate(const DetNetwork& net, const RelayCode& code, const BitVector& x_s) {
    const auto L = is_layered(net);
    const std::size_t n = code.block_bits();
    std::vector<int> order;
    for (std::size_t v = 0; v < net.size(); ++v)
        if (L.layer[v] >= 0) order.push_back(static_cast<int>(v));
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return L.layer[a] < L.layer[b]; });

    std::vector<BitVector> y(net.size(), BitVector(n)), x(net.size(), BitVector(n));
    for (int v : order) {
        if (v == net.source) {
            x[v] = x_s;
            continue;
        }
        for (const auto& e : net.edges)
            if (e.to == v && L.layer[e.from] >= 0) add_shifted(y[v], x[e.from], code.q, e.gain, code.T);
        if (code.F[v]) x[v] = *code.F[v] * y[v];
    }
    return y;
}

inline BitVector simulate_block(const DetNetwork& net, const RelayCode& code, std::uint64_t w, int dest = -1) {
    if (w >= code.messages) throw ArgumentError("message index out of range");
    if (dest < 0) dest = net.dest();
    return propagate(net, code, code.codeword(w))[dest];
}

// End-to-end map x_S -> y_D; columns are the responses to unit codewords.
inline BitMatrix end_to_end_matrix(const DetNetwork& net, const RelayCode& code, int dest = -1) {
    if (dest < 0) dest = net.dest();
    const std::size_t n = code.block_bits();
    BitMatrix A(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        BitVector e(n);
        e.set(c);
        BitVector y = propagate(net, code, e)[dest];
        for (std::size_t r = 0; r < n; ++r)
            if (y.get(r)) A.set(r, c);
    }
    return A;
}

struct SimOutcome {
    std::size_t trials = 0;
    std::size_t errors = 0;
    double p_hat = 0.0;
    double sigma = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double bound = 0.0;
    long mincut = 0;
    std::vector<std::uint8_t> error_flags;
};

inline double union_bound(double R, int T, std::size_t nodes, long mincut) {
    double log2b = R * T + static_cast<double>(nodes - 2) - static_cast<double>(T) * mincut;
    return std::min(1.0, std::exp2(log2b));
}

namespace detail {

// Images A*x for packed codewords using one 256-entry table per input byte.
class ByteImage {
public:
    explicit ByteImage(const BitMatrix& A) : n_(A.cols()), out_words_((A.rows() + 63) / 64) {
        nbytes_ = (n_ + 7) / 8;
        table_.assign(nbytes_ * 256 * out_words_, 0);
        for (std::size_t b = 0; b < nbytes_; ++b)
            for (std::size_t bit = 0; bit < 8; ++bit) {
                std::size_t col = b * 8 + bit;
                if (col >= n_) break;
                std::vector<std::uint64_t> colw(out_words_, 0);
                for (std::size_t r = 0; r < A.rows(); ++r)
                    if (A.get(r, col)) colw[r >> 6] |= std::uint64_t{1} << (r & 63);
                for (std::size_t v = 0; v < 256; ++v)
                    if ((v >> bit) & 1U)
                        for (std::size_t k = 0; k < out_words_; ++k) table_[(b * 256 + v) * out_words_ + k] ^= colw[k];
            }
    }

    void apply(const std::uint64_t* x, std::uint64_t* out) const {
        std::fill(out, out + out_words_, 0);
        for (std::size_t b = 0; b < nbytes_; ++b) {
            std::size_t v = (x[b >> 3] >> ((b & 7) * 8)) & 0xFF;
            const std::uint64_t* t = &table_[(b * 256 + v) * out_words_];
            for (std::size_t k = 0; k < out_words_; ++k) out[k] ^= t[k];
        }
    }

    std::size_t out_words() const { return out_words_; }

private:
    std::size_t n_, out_words_, nbytes_ = 0;
    std::vector<std::uint64_t> table_;
};

} // namespace detail

// True iff message w is not the unique preimage of its destination output.
inline bool decode_fails(const DetNetwork& net, const RelayCode& code, std::uint64_t w, int dest = -1) {
    if (code.messages <= 1) return false;
    detail::ByteImage img(end_to_end_matrix(net, code, dest));
    const std::size_t W = img.out_words();
    std::vector<std::uint64_t> target(W), other(W);
    BitVector xw = code.codeword(w);
    img.apply(xw.words().data(), target.data());
    if (code.source_map == SourceMap::Random) {
        std::vector<std::uint64_t> xv(xw.words().size());
        for (std::uint64_t v = 0; v < code.messages; ++v) {
            if (v == w) continue;
            code.random_codeword_words(v, xv.data(), xv.size());
            img.apply(xv.data(), other.data());
            if (other == target) return true;
        }
        return false;
    }
    for (std::uint64_t v = 0; v < code.messages; ++v) {
        if (v == w) continue;
        BitVector xv = code.codeword(v);
        img.apply(xv.words().data(), other.data());
        if (other == target) return true;
    }
    return false;
}

inline SimOutcome estimate_error(const DetNetwork& net, int T, double R, std::size_t trials, std::uint64_t seed,
                                 bool keep_flags = false, unsigned threads = 0) {
    if (trials < 1) throw ArgumentError("trials must be >= 1");
    check_sim_args(net, T, R);
    SimOutcome out;
    out.trials = trials;
    out.mincut = min_cut_capacity(net).value;
    out.bound = union_bound(R, T, net.size(), out.mincut);

    std::vector<std::uint8_t> flags(trials, 0);
    parallel_for(
        trials,
        [&](std::size_t t) {
            std::uint64_t ts = trial_seed(seed, t);
            RelayCode code = sample_code(net, T, R, ts);
            Rng pick(hash_combine(ts, 0x6d657373616765ULL));
            std::uint64_t w = pick.below(code.messages);
            flags[t] = decode_fails(net, code, w) ? 1 : 0;
        },
        threads);

    for (auto f : flags) out.errors += f;
    auto p = proportion(out.errors, trials);
    out.p_hat = p.p_hat;
    out.sigma = p.sigma;
    out.ci_low = p.ci_low;
    out.ci_high = p.ci_high;
    if (keep_flags) out.error_flags = std::move(flags);
    return out;
}

} // namespace relaynet
