#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "errors.hpp"
#include "gf2.hpp"

namespace relaynet {

inline constexpr std::size_t kDefaultNodeCap = 24;

struct DetEdge {
    int from;
    int to;
    int gain;
};

struct DetNetwork {
    std::vector<std::string> ids;
    int source = 0;
    std::vector<int> destinations;
    std::vector<DetEdge> edges; // gain > 0 only
    int q = 0;

    std::size_t size() const { return ids.size(); }
    bool multicast() const { return destinations.size() > 1; }
    int dest() const { return destinations.empty() ? -1 : destinations.front(); }

    int gain(int i, int j) const {
        for (const auto& e : edges)
            if (e.from == i && e.to == j) return e.gain;
        return 0;
    }

    int index(const std::string& id) const {
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (ids[i] == id) return static_cast<int>(i);
        throw ArgumentError("unknown node '" + id + "'");
    }
};

enum class SnrConvention { Complex, Real };

struct GaussEdge {
    int from;
    int to;
    Eigen::MatrixXcd H; // rx_antennas(to) x tx_antennas(from)
};

struct GaussNetwork {
    std::vector<std::string> ids;
    std::vector<int> tx_antennas;
    std::vector<int> rx_antennas;
    int source = 0;
    std::vector<int> destinations;
    std::vector<GaussEdge> edges;
    double power = 1.0;
    SnrConvention convention = SnrConvention::Complex;

    std::size_t size() const { return ids.size(); }
    int dest() const { return destinations.empty() ? -1 : destinations.front(); }

    const GaussEdge* edge(int i, int j) const {
        for (const auto& e : edges)
            if (e.from == i && e.to == j) return &e;
        return nullptr;
    }
    std::complex<double> h(int i, int j) const {
        const GaussEdge* e = edge(i, j);
        return e ? e->H(0, 0) : std::complex<double>{};
    }
    bool single_antenna() const {
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (tx_antennas[i] != 1 || rx_antennas[i] != 1) return false;
        return true;
    }
};

// Functional deterministic network: each receiving node's output is a lookup
// table over the symbols of its in-neighbours.
struct FunctionTable {
    int node;
    std::vector<int> inputs;
    std::vector<int> values; // row-major over inputs, first input most significant
};

struct FunctionalNetwork {
    std::vector<std::string> ids;
    int source = 0;
    std::vector<int> destinations;
    std::vector<int> alphabet; // transmit alphabet size per node, 1 if silent
    std::vector<FunctionTable> tables;

    std::size_t size() const { return ids.size(); }
};

using AnyNetwork = std::variant<DetNetwork, GaussNetwork, FunctionalNetwork>;

// ---------------------------------------------------------------- builders

inline DetNetwork make_det_network(std::vector<std::string> ids, const std::string& source,
                                   const std::vector<std::string>& dests,
                                   const std::vector<std::tuple<std::string, std::string, int>>& edges) {
    DetNetwork net;
    net.ids = std::move(ids);
    net.source = net.index(source);
    for (const auto& d : dests) net.destinations.push_back(net.index(d));
    for (const auto& [a, b, g] : edges) {
        if (g < 0) throw ArgumentError("negative gain");
        int i = net.index(a), j = net.index(b);
        if (i == j) throw ArgumentError("self-loop on '" + a + "'");
        if (net.gain(i, j) != 0) throw ArgumentError("duplicate edge");
        if (g == 0) continue;
        net.edges.push_back({i, j, g});
        net.q = std::max(net.q, g);
    }
    return net;
}

inline DetNetwork p2p_network(int n) { return make_det_network({"S", "D"}, "S", {"D"}, {{"S", "D", n}}); }

inline DetNetwork relay_network(int n_sr, int n_sd, int n_rd) {
    return make_det_network({"S", "R", "D"}, "S", {"D"},
                            {{"S", "R", n_sr}, {"S", "D", n_sd}, {"R", "D", n_rd}});
}

inline DetNetwork diamond_network(int n_sa1, int n_sa2, int n_a1d, int n_a2d) {
    return make_det_network({"S", "A1", "A2", "D"}, "S", {"D"},
                            {{"S", "A1", n_sa1}, {"S", "A2", n_sa2}, {"A1", "D", n_a1d}, {"A2", "D", n_a2d}});
}

inline GaussNetwork make_gauss_network(std::vector<std::string> ids, const std::string& source,
                                       const std::vector<std::string>& dests) {
    GaussNetwork net;
    net.ids = std::move(ids);
    net.tx_antennas.assign(net.ids.size(), 1);
    net.rx_antennas.assign(net.ids.size(), 1);
    auto idx = [&](const std::string& id) {
        for (std::size_t i = 0; i < net.ids.size(); ++i)
            if (net.ids[i] == id) return static_cast<int>(i);
        throw ArgumentError("unknown node '" + id + "'");
    };
    net.source = idx(source);
    for (const auto& d : dests) net.destinations.push_back(idx(d));
    return net;
}

inline void add_gauss_edge(GaussNetwork& net, int from, int to, Eigen::MatrixXcd H) {
    if (from == to) throw ArgumentError("self-loop");
    if (H.rows() != net.rx_antennas[to] || H.cols() != net.tx_antennas[from])
        throw ArgumentError("H dimensions do not match antenna counts");
    if (net.edge(from, to)) throw ArgumentError("duplicate edge");
    net.edges.push_back({from, to, std::move(H)});
}

inline void add_gauss_edge(GaussNetwork& net, int from, int to, std::complex<double> h) {
    Eigen::MatrixXcd H(1, 1);
    H(0, 0) = h;
    add_gauss_edge(net, from, to, H);
}

inline GaussNetwork gauss_relay_network(std::complex<double> h_sr, std::complex<double> h_sd,
                                        std::complex<double> h_rd) {
    auto net = make_gauss_network({"S", "R", "D"}, "S", {"D"});
    add_gauss_edge(net, 0, 1, h_sr);
    add_gauss_edge(net, 0, 2, h_sd);
    add_gauss_edge(net, 1, 2, h_rd);
    return net;
}

// ---------------------------------------------------------------- parsing

namespace detail {

inline void check_keys(const nlohmann::json& j, const std::string& where,
                       std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ParseError(where + ": expected object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) throw ParseError(where + ": unknown field '" + it.key() + "'");
    }
}

inline const nlohmann::json& need(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
    return j.at(key);
}

inline std::string need_string(const nlohmann::json& j, const char* key, const std::string& where) {
    const auto& v = need(j, key, where);
    if (!v.is_string()) throw ParseError(where + "/" + key + ": expected string");
    return v.get<std::string>();
}

inline long need_int(const nlohmann::json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ParseError(where + ": expected integer");
    return v.get<long>();
}

} // namespace detail

inline AnyNetwork parse_network(const std::string& text) {
    using nlohmann::json;
    using detail::check_keys;
    using detail::need;
    using detail::need_int;
    using detail::need_string;

    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    check_keys(doc, "", {"model", "snr_convention", "nodes", "source", "destinations", "edges", "tables", "power"});
    std::string model = need_string(doc, "model", "");
    if (model != "det" && model != "gauss") throw ParseError("/model: expected \"det\" or \"gauss\"");
    bool gauss = model == "gauss";
    if (!gauss && doc.contains("snr_convention")) throw ParseError("/snr_convention: only valid for gauss");
    if (!gauss && doc.contains("power")) throw ParseError("/power: only valid for gauss");
    if (gauss && doc.contains("tables")) throw ParseError("/tables: only valid for det");

    const json& nodes = need(doc, "nodes", "");
    if (!nodes.is_array() || nodes.empty()) throw ParseError("/nodes: expected non-empty array");
    std::vector<std::string> ids;
    std::vector<int> tx, rx;
    std::map<std::string, int> index;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        std::string at = "/nodes/" + std::to_string(k);
        check_keys(nodes[k], at, {"id", "tx_antennas", "rx_antennas"});
        std::string id = need_string(nodes[k], "id", at);
        if (index.count(id)) throw ParseError(at + "/id: duplicate node '" + id + "'");
        long t = nodes[k].contains("tx_antennas") ? need_int(nodes[k]["tx_antennas"], at + "/tx_antennas") : 1;
        long r = nodes[k].contains("rx_antennas") ? need_int(nodes[k]["rx_antennas"], at + "/rx_antennas") : 1;
        if (t < 1 || r < 1) throw ParseError(at + ": antenna counts must be >= 1");
        if (!gauss && (t != 1 || r != 1)) throw ParseError(at + ": det nodes have one antenna");
        index[id] = static_cast<int>(ids.size());
        ids.push_back(id);
        tx.push_back(static_cast<int>(t));
        rx.push_back(static_cast<int>(r));
    }
    auto node_ref = [&](const std::string& id, const std::string& at) {
        auto it = index.find(id);
        if (it == index.end()) throw ParseError(at + ": unknown node '" + id + "'");
        return it->second;
    };

    int source = node_ref(need_string(doc, "source", ""), "/source");
    const json& dj = need(doc, "destinations", "");
    if (!dj.is_array() || dj.empty()) throw ParseError("/destinations: expected non-empty array");
    std::vector<int> dests;
    for (std::size_t k = 0; k < dj.size(); ++k) {
        std::string at = "/destinations/" + std::to_string(k);
        if (!dj[k].is_string()) throw ParseError(at + ": expected string");
        int d = node_ref(dj[k].get<std::string>(), at);
        if (d == source) throw ParseError(at + ": destination equals source");
        if (std::find(dests.begin(), dests.end(), d) != dests.end()) throw ParseError(at + ": duplicate destination");
        dests.push_back(d);
    }

    const json& ej = need(doc, "edges", "");
    if (!ej.is_array()) throw ParseError("/edges: expected array");

    if (doc.contains("tables")) {
        if (!ej.empty()) throw ParseError("/edges: must be empty when tables are given");
        const json& tj = doc["tables"];
        if (!tj.is_array()) throw ParseError("/tables: expected array");
        FunctionalNetwork fn;
        fn.ids = ids;
        fn.source = source;
        fn.destinations = dests;
        fn.alphabet.assign(ids.size(), 0);
        std::set<int> seen;
        for (std::size_t k = 0; k < tj.size(); ++k) {
            std::string at = "/tables/" + std::to_string(k);
            check_keys(tj[k], at, {"node", "inputs", "alphabets", "values"});
            FunctionTable t;
            t.node = node_ref(need_string(tj[k], "node", at), at + "/node");
            if (!seen.insert(t.node).second) throw ParseError(at + "/node: duplicate table");
            const json& in = need(tj[k], "inputs", at);
            const json& al = need(tj[k], "alphabets", at);
            if (!in.is_array() || !al.is_array() || in.size() != al.size())
                throw ParseError(at + ": inputs and alphabets must be arrays of equal length");
            std::size_t cells = 1;
            for (std::size_t m = 0; m < in.size(); ++m) {
                std::string am = at + "/inputs/" + std::to_string(m);
                if (!in[m].is_string()) throw ParseError(am + ": expected string");
                int u = node_ref(in[m].get<std::string>(), am);
                if (u == t.node) throw ParseError(am + ": self-loop");
                long a = need_int(al[m], at + "/alphabets/" + std::to_string(m));
                if (a < 1 || a > 4) throw ParseError(at + "/alphabets/" + std::to_string(m) + ": alphabet must be 1..4");
                if (fn.alphabet[u] != 0 && fn.alphabet[u] != a)
                    throw ParseError(am + ": inconsistent alphabet for '" + ids[u] + "'");
                fn.alphabet[u] = static_cast<int>(a);
                t.inputs.push_back(u);
                cells *= static_cast<std::size_t>(a);
            }
            const json& vals = need(tj[k], "values", at);
            if (!vals.is_array()) throw ParseError(at + "/values: expected array");
            if (vals.size() != cells)
                throw ParseError(at + "/values: expected " + std::to_string(cells) + " entries, got " +
                                 std::to_string(vals.size()));
            for (std::size_t m = 0; m < vals.size(); ++m)
                t.values.push_back(static_cast<int>(need_int(vals[m], at + "/values/" + std::to_string(m))));
            fn.tables.push_back(std::move(t));
        }
        for (auto& a : fn.alphabet)
            if (a == 0) a = 1;
        return fn;
    }

    if (!gauss) {
        DetNetwork net;
        net.ids = ids;
        net.source = source;
        net.destinations = dests;
        for (std::size_t k = 0; k < ej.size(); ++k) {
            std::string at = "/edges/" + std::to_string(k);
            check_keys(ej[k], at, {"from", "to", "gain"});
            int i = node_ref(need_string(ej[k], "from", at), at + "/from");
            int j = node_ref(need_string(ej[k], "to", at), at + "/to");
            if (i == j) throw ParseError(at + ": self-loop");
            long g = need_int(need(ej[k], "gain", at), at + "/gain");
            if (g < 0) throw ParseError(at + "/gain: negative gain");
            for (std::size_t m = 0; m < k; ++m)
                if (ej[m]["from"] == ej[k]["from"] && ej[m]["to"] == ej[k]["to"])
                    throw ParseError(at + ": duplicate edge");
            if (g == 0) continue;
            net.edges.push_back({i, j, static_cast<int>(g)});
            net.q = std::max(net.q, static_cast<int>(g));
        }
        return net;
    }

    GaussNetwork net;
    net.ids = ids;
    net.tx_antennas = tx;
    net.rx_antennas = rx;
    net.source = source;
    net.destinations = dests;
    if (doc.contains("snr_convention")) {
        std::string c = doc["snr_convention"].is_string() ? doc["snr_convention"].get<std::string>() : "";
        if (c == "complex")
            net.convention = SnrConvention::Complex;
        else if (c == "real")
            net.convention = SnrConvention::Real;
        else
            throw ParseError("/snr_convention: expected \"real\" or \"complex\"");
    }
    if (doc.contains("power")) {
        if (!doc["power"].is_number()) throw ParseError("/power: expected number");
        net.power = doc["power"].get<double>();
        if (!(net.power > 0)) throw ParseError("/power: must be positive");
    }
    for (std::size_t k = 0; k < ej.size(); ++k) {
        std::string at = "/edges/" + std::to_string(k);
        check_keys(ej[k], at, {"from", "to", "H"});
        int i = node_ref(need_string(ej[k], "from", at), at + "/from");
        int j = node_ref(need_string(ej[k], "to", at), at + "/to");
        if (i == j) throw ParseError(at + ": self-loop");
        if (net.edge(i, j)) throw ParseError(at + ": duplicate edge");
        const json& hj = need(ej[k], "H", at);
        if (!hj.is_array() || hj.size() != static_cast<std::size_t>(rx[j]))
            throw ParseError(at + "/H: expected " + std::to_string(rx[j]) + " rows");
        Eigen::MatrixXcd H(rx[j], tx[i]);
        for (int r = 0; r < rx[j]; ++r) {
            const json& row = hj[r];
            std::string ar = at + "/H/" + std::to_string(r);
            if (!row.is_array() || row.size() != static_cast<std::size_t>(tx[i]))
                throw ParseError(ar + ": expected " + std::to_string(tx[i]) + " entries");
            for (int c = 0; c < tx[i]; ++c) {
                const json& z = row[c];
                std::string ac = ar + "/" + std::to_string(c);
                if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                    throw ParseError(ac + ": expected [re, im]");
                H(r, c) = {z[0].get<double>(), z[1].get<double>()};
                if (!std::isfinite(H(r, c).real()) || !std::isfinite(H(r, c).imag()))
                    throw ParseError(ac + ": non-finite entry");
            }
        }
        net.edges.push_back({i, j, H});
    }
    return net;
}

inline std::string to_json(const DetNetwork& net) {
    nlohmann::ordered_json j;
    j["model"] = "det";
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& id : net.ids) j["nodes"].push_back({{"id", id}});
    j["source"] = net.ids[net.source];
    j["destinations"] = nlohmann::ordered_json::array();
    for (int d : net.destinations) j["destinations"].push_back(net.ids[d]);
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : net.edges)
        j["edges"].push_back({{"from", net.ids[e.from]}, {"to", net.ids[e.to]}, {"gain", e.gain}});
    return j.dump(2);
}

// ---------------------------------------------------------------- cuts

struct Cut {
    std::uint64_t omega = 0; // bit v set iff node v is in Omega
    int dest = -1;

    bool contains(int v) const { return (omega >> v) & 1U; }
};

template <class Net>
std::string cut_label(const Net& net, const Cut& c) {
    std::string s = "{";
    bool first = true;
    for (std::size_t v = 0; v < net.ids.size(); ++v)
        if (c.contains(static_cast<int>(v))) {
            if (!first) s += ",";
            s += net.ids[v];
            first = false;
        }
    return s + "}";
}

inline std::vector<Cut> enumerate_cuts(std::size_t n, int source, int dest, std::size_t cap = kDefaultNodeCap) {
    if (n > cap)
        throw ResourceError("network has " + std::to_string(n) + " nodes, above the cut enumeration cap of " +
                            std::to_string(cap) + " (raise it with --node-cap)");
    if (source == dest) throw ArgumentError("source and destination coincide");
    std::vector<int> free;
    for (std::size_t v = 0; v < n; ++v)
        if (static_cast<int>(v) != source && static_cast<int>(v) != dest) free.push_back(static_cast<int>(v));
    std::vector<Cut> cuts;
    std::uint64_t count = std::uint64_t{1} << free.size();
    cuts.reserve(count);
    for (std::uint64_t m = 0; m < count; ++m) {
        std::uint64_t omega = std::uint64_t{1} << source;
        for (std::size_t k = 0; k < free.size(); ++k)
            if ((m >> k) & 1U) omega |= std::uint64_t{1} << free[k];
        cuts.push_back({omega, dest});
    }
    return cuts;
}

template <class Net>
    requires requires(const Net& n) { n.size(); n.source; }
std::vector<Cut> enumerate_cuts(const Net& net, int dest, std::size_t cap = kDefaultNodeCap) {
    return enumerate_cuts(net.size(), net.source, dest, cap);
}

template <class Net>
std::vector<std::size_t> crossing_edges(const Net& net, const Cut& cut) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < net.edges.size(); ++k)
        if (cut.contains(net.edges[k].from) && !cut.contains(net.edges[k].to)) out.push_back(k);
    return out;
}

// Block row per receiver in Omega^c, block column per transmitter in Omega.
inline BitMatrix cut_transfer_matrix(const DetNetwork& net, const Cut& cut) {
    std::vector<int> tx, rx;
    for (std::size_t v = 0; v < net.size(); ++v)
        (cut.contains(static_cast<int>(v)) ? tx : rx).push_back(static_cast<int>(v));
    auto q = static_cast<std::size_t>(net.q);
    BitMatrix G(rx.size() * q, tx.size() * q);
    for (std::size_t r = 0; r < rx.size(); ++r)
        for (std::size_t c = 0; c < tx.size(); ++c) {
            int g = net.gain(tx[c], rx[r]);
            if (g > 0) G.paste(shift_matrix(net.q, g), r * q, c * q);
        }
    return G;
}

// ---------------------------------------------------------------- layering

struct Layering {
    bool layered = false;
    std::vector<int> layer; // -1 for nodes on no source-destination path
};

inline Layering is_layered(std::size_t n, const std::vector<std::pair<int, int>>& arcs, int source,
                           const std::vector<int>& dests) {
    std::vector<std::vector<int>> out(n), in(n);
    for (auto [a, b] : arcs) {
        out[a].push_back(b);
        in[b].push_back(a);
    }
    auto reach = [&](std::vector<int> start, const std::vector<std::vector<int>>& adj) {
        std::vector<char> seen(n, 0);
        for (int s : start) seen[s] = 1;
        while (!start.empty()) {
            int u = start.back();
            start.pop_back();
            for (int v : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    start.push_back(v);
                }
        }
        return seen;
    };
    auto fwd = reach({source}, out);
    auto bwd = reach(dests, in);
    std::vector<char> on(n);
    for (std::size_t v = 0; v < n; ++v) on[v] = fwd[v] && bwd[v];

    Layering L;
    L.layer.assign(n, -1);
    if (!on[source]) {
        L.layered = true;
        L.layer[source] = 0;
        return L;
    }
    L.layer[source] = 0;
    std::queue<int> bfs;
    bfs.push(source);
    while (!bfs.empty()) {
        int u = bfs.front();
        bfs.pop();
        for (int v : out[u])
            if (on[v] && L.layer[v] < 0) {
                L.layer[v] = L.layer[u] + 1;
                bfs.push(v);
            }
    }
    L.layered = true;
    for (auto [a, b] : arcs)
        if (on[a] && on[b] && L.layer[b] != L.layer[a] + 1) L.layered = false;
    return L;
}

template <class Net>
Layering is_layered(const Net& net) {
    std::vector<std::pair<int, int>> arcs;
    for (const auto& e : net.edges) arcs.emplace_back(e.from, e.to);
    return is_layered(net.size(), arcs, net.source, net.destinations);
}

inline Layering is_layered(const FunctionalNetwork& net) {
    std::vector<std::pair<int, int>> arcs;
    for (const auto& t : net.tables)
        for (int u : t.inputs) arcs.emplace_back(u, t.node);
    return is_layered(net.size(), arcs, net.source, net.destinations);
}

// ---------------------------------------------------------------- unfolding

struct WiredEdge {
    int from;
    int to;
    double capacity;
};

struct UnfoldedNetwork {
    int K = 0;
    double cbar = 0.0;
    std::size_t base_nodes = 0; // |V| of the original network
    int q = 0;
    std::vector<std::string> ids;
    std::vector<int> stage;
    int source = 0;
    std::vector<int> destinations;
    std::vector<DetEdge> edges; // channel copies
    std::vector<WiredEdge> wired;

    std::size_t size() const { return ids.size(); }

    // index of copy of original node v at stage i (1 <= i <= K)
    int at(int v, int i) const { return 1 + (i - 1) * static_cast<int>(base_nodes) + v; }
};

inline UnfoldedNetwork unfold(const DetNetwork& net, int K, double cbar, int dest = -1) {
    if (K < 1) throw ArgumentError("unfold requires K >= 1");
    if (cbar < 0) throw ArgumentError("unfold requires cbar >= 0");
    if (dest < 0) dest = net.dest();
    if (dest < 0) throw ArgumentError("network has no destination");
    UnfoldedNetwork u;
    u.K = K;
    u.cbar = cbar;
    u.base_nodes = net.size();
    u.q = net.q;
    const int n = static_cast<int>(net.size());
    const double wire = K * cbar;

    u.ids.push_back(net.ids[net.source] + "[0]");
    u.stage.push_back(0);
    for (int i = 1; i <= K; ++i)
        for (int v = 0; v < n; ++v) {
            u.ids.push_back(net.ids[v] + "[" + std::to_string(i) + "]");
            u.stage.push_back(i);
        }
    u.ids.push_back(net.ids[dest] + "[" + std::to_string(K + 1) + "]");
    u.stage.push_back(K + 1);
    u.source = 0;
    int sink = static_cast<int>(u.ids.size()) - 1;
    u.destinations = {sink};

    u.wired.push_back({0, u.at(net.source, 1), wire});
    for (int i = 1; i < K; ++i)
        for (int v = 0; v < n; ++v) u.wired.push_back({u.at(v, i), u.at(v, i + 1), wire});
    u.wired.push_back({u.at(dest, K), sink, wire});

    for (const auto& e : net.edges)
        if (e.from == net.source) u.edges.push_back({0, u.at(e.to, 1), e.gain});
    for (int i = 1; i < K; ++i)
        for (const auto& e : net.edges) u.edges.push_back({u.at(e.from, i), u.at(e.to, i + 1), e.gain});
    return u;
}

inline Layering is_layered(const UnfoldedNetwork& u) {
    std::vector<std::pair<int, int>> arcs;
    for (const auto& e : u.edges) arcs.emplace_back(e.from, e.to);
    for (const auto& w : u.wired) arcs.emplace_back(w.from, w.to);
    return is_layered(u.size(), arcs, u.source, u.destinations);
}

} // namespace relaynet
