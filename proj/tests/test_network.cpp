#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <relaynet/detcap.hpp>
#include <relaynet/network.hpp>
#include <relaynet/random.hpp>

using namespace relaynet;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(RELAYNET_NETWORKS_DIR) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string parse_error_of(const std::string& text) {
    try {
        parse_network(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

const char* kRelayDoc = R"({"model":"det","nodes":[{"id":"S"},{"id":"R"},{"id":"D"}],"source":"S",
  "destinations":["D"],"edges":[{"from":"S","to":"R","gain":3},{"from":"S","to":"D","gain":2},
  {"from":"R","to":"D","gain":3}]})";

} // namespace

TEST(Parse, RelayDocument) {
    auto net = std::get<DetNetwork>(parse_network(kRelayDoc));
    EXPECT_EQ(net.q, 3);
    EXPECT_EQ(net.size(), 3u);
    EXPECT_EQ(net.gain(net.index("S"), net.index("D")), 2);
    auto again = std::get<DetNetwork>(parse_network(to_json(net)));
    EXPECT_EQ(again.ids, net.ids);
    EXPECT_EQ(again.q, net.q);
    ASSERT_EQ(again.edges.size(), net.edges.size());
    for (std::size_t k = 0; k < net.edges.size(); ++k) {
        EXPECT_EQ(again.edges[k].from, net.edges[k].from);
        EXPECT_EQ(again.edges[k].to, net.edges[k].to);
        EXPECT_EQ(again.edges[k].gain, net.edges[k].gain);
    }
}

TEST(Parse, EmptyEdgeListIsValid) {
    auto net = std::get<DetNetwork>(parse_network(
        R"({"model":"det","nodes":[{"id":"S"},{"id":"D"}],"source":"S","destinations":["D"],"edges":[]})"));
    EXPECT_EQ(net.q, 0);
    EXPECT_EQ(min_cut_capacity(net).value, 0);
}

TEST(Parse, ZeroGainEdgesAreDropped) {
    auto net = std::get<DetNetwork>(parse_network(
        R"({"model":"det","nodes":[{"id":"S"},{"id":"D"}],"source":"S","destinations":["D"],
            "edges":[{"from":"S","to":"D","gain":0}]})"));
    EXPECT_TRUE(net.edges.empty());
}

TEST(Parse, ErrorsCarryLocation) {
    EXPECT_NE(parse_error_of(R"({"model":"det","nodes":[{"id":"S"},{"id":"D"}],"source":"S","destinations":["D"],
        "edges":[{"from":"S","to":"X","gain":1}]})")
                  .find("/edges/0/to"),
              std::string::npos);
    EXPECT_NE(parse_error_of(R"({"model":"det","nodes":[{"id":"S"},{"id":"D"}],"source":"S","destinations":["D"],
        "edges":[{"from":"S","to":"D","gain":1},{"from":"S","to":"D","gain":2}]})")
                  .find("duplicate edge"),
              std::string::npos);
    EXPECT_NE(parse_error_of(R"({"model":"det","nodes":[{"id":"S"},{"id":"D"}],"source":"S","destinations":["D"],
        "edges":[{"from":"S","to":"D","gain":-1}]})")
                  .find("/edges/0/gain"),
              std::string::npos);
    EXPECT_NE(parse_error_of(R"({"model":"det","nodes":[{"id":"S"},{"id":"D"}],"source":"S","destinations":["D"],
        "edges":[],"extra":1})")
                  .find("unknown field 'extra'"),
              std::string::npos);
    EXPECT_NE(parse_error_of(R"({"model":"det","nodes":[{"id":"S"},{"id":"D"}],"source":"S","destinations":["D"],
        "edges":[{"from":"S","to":"S","gain":1}]})")
                  .find("self-loop"),
              std::string::npos);
    EXPECT_FALSE(parse_error_of("{not json").empty());
    EXPECT_FALSE(parse_error_of(R"({"model":"det","nodes":[{"id":"S"}],"source":"S","destinations":["Q"],"edges":[]})").empty());
}

TEST(Parse, GaussianDocument) {
    auto net = std::get<GaussNetwork>(parse_network(slurp("gauss_mimo.json")));
    EXPECT_EQ(net.convention, SnrConvention::Real);
    ASSERT_EQ(net.edges.size(), 1u);
    EXPECT_EQ(net.edges[0].H.rows(), 2);
    EXPECT_EQ(net.edges[0].H.cols(), 2);
    EXPECT_DOUBLE_EQ(net.edges[0].H(0, 1).real(), 32.0);
    EXPECT_NE(parse_error_of(R"({"model":"gauss","nodes":[{"id":"S","tx_antennas":2},{"id":"D"}],"source":"S",
        "destinations":["D"],"edges":[{"from":"S","to":"D","H":[[[1,0]]]}]})")
                  .find("/edges/0/H/0"),
              std::string::npos);
}

TEST(Parse, AllSampleFilesLoad) {
    for (const char* f : {"relay.json", "p2p.json", "diamond.json", "line.json", "four_relay.json", "multicast.json",
                          "and_diamond.json", "gauss_relay.json", "gauss_line.json", "gauss_diamond.json",
                          "gauss_mimo.json", "chain30.json"})
        EXPECT_NO_THROW(parse_network(slurp(f))) << f;
}

TEST(Cuts, CountsAndOrder) {
    auto relay = relay_network(3, 2, 3);
    auto cuts = enumerate_cuts(relay, 2);
    ASSERT_EQ(cuts.size(), 2u);
    EXPECT_EQ(cut_label(relay, cuts[0]), "{S}");
    EXPECT_EQ(cut_label(relay, cuts[1]), "{S,R}");
    EXPECT_EQ(enumerate_cuts(diamond_network(1, 1, 1, 1), 3).size(), 4u);
    EXPECT_THROW(enumerate_cuts(30, 0, 29), ResourceError);
}

TEST(Cuts, EveryCutSeparatesAndEncodingIncreases) {
    for (std::size_t n = 2; n <= 10; ++n) {
        int s = static_cast<int>(n) / 2, d = 0;
        auto cuts = enumerate_cuts(n, s, d);
        ASSERT_EQ(cuts.size(), std::size_t{1} << (n - 2));
        for (std::size_t k = 0; k < cuts.size(); ++k) {
            EXPECT_TRUE(cuts[k].contains(s));
            EXPECT_FALSE(cuts[k].contains(d));
            if (k) EXPECT_LT(cuts[k - 1].omega, cuts[k].omega);
        }
    }
}

TEST(CutTransfer, Examples) {
    auto p2p = p2p_network(4);
    auto G = cut_transfer_matrix(p2p, enumerate_cuts(p2p, 1)[0]);
    EXPECT_EQ(G, BitMatrix::identity(4));

    auto relay = relay_network(3, 2, 3);
    auto Gs = cut_transfer_matrix(relay, enumerate_cuts(relay, 2)[0]);
    BitMatrix expect(6, 3);
    expect.paste(shift_matrix(3, 3), 0, 0);
    expect.paste(shift_matrix(3, 2), 3, 0);
    EXPECT_EQ(Gs, expect);
    EXPECT_EQ(rank(Gs), 3u);

    auto split = make_det_network({"S", "R", "D"}, "S", {"D"}, {{"R", "D", 2}});
    EXPECT_EQ(rank(cut_transfer_matrix(split, enumerate_cuts(split, 2)[0])), 0u);
}

TEST(CutTransfer, LayeredRankIsSumOfLayerRanks) {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        auto net = make_det_network({"S", "A1", "A2", "B1", "B2", "D"}, "S", {"D"},
                                    {{"S", "A1", int(rng.below(5))}, {"S", "A2", int(rng.below(5))},
                                     {"A1", "B1", int(rng.below(5))}, {"A1", "B2", int(rng.below(5))},
                                     {"A2", "B1", int(rng.below(5))}, {"A2", "B2", int(rng.below(5))},
                                     {"B1", "D", int(rng.below(5))}, {"B2", "D", int(rng.below(5))}});
        if (net.q == 0) continue;
        const int layer_of[] = {0, 1, 1, 2, 2, 3};
        for (const Cut& c : enumerate_cuts(net, net.dest())) {
            std::size_t total = 0;
            for (int layer = 0; layer < 3; ++layer) {
                std::uint64_t A = 0, B = 0;
                for (std::size_t v = 0; v < net.size(); ++v) {
                    int lv = layer_of[v];
                    if (lv == layer && c.contains(int(v))) A |= 1ULL << v;
                    if (lv == layer + 1 && c.contains(int(v))) B |= 1ULL << v;
                    if (lv != layer + 1) B |= 1ULL << v; // only the next layer receives
                }
                total += stage_rank(net, A, B);
            }
            EXPECT_EQ(rank(cut_transfer_matrix(net, c)), total);
        }
    }
}

TEST(Layering, Examples) {
    auto L = is_layered(diamond_network(1, 1, 1, 1));
    EXPECT_TRUE(L.layered);
    EXPECT_EQ(L.layer, (std::vector<int>{0, 1, 1, 2}));
    EXPECT_FALSE(is_layered(relay_network(1, 1, 1)).layered);
    EXPECT_TRUE(is_layered(p2p_network(1)).layered);
}

TEST(Unfold, Structure) {
    auto net = relay_network(2, 1, 2); // direct edge plus a two-hop path
    auto u = unfold(net, 3, 2.0);
    EXPECT_EQ(u.size(), 3u * 3 + 2);
    EXPECT_EQ(u.stage.front(), 0);
    EXPECT_EQ(u.stage.back(), 4);
    EXPECT_EQ(u.wired.size(), 8u);  // S0->S1, D3->D4, three nodes x two gaps
    EXPECT_EQ(u.edges.size(), 8u);  // two edges leave S[0], three per gap after that
    for (const auto& w : u.wired) EXPECT_DOUBLE_EQ(w.capacity, 6.0);
    auto small = unfold(net, 1, 2.0);
    EXPECT_EQ(small.size(), 5u);
    EXPECT_THROW(unfold(net, 0, 1.0), ArgumentError);
}

TEST(Unfold, AlwaysLayered) {
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 2 + rng.below(4);
        std::vector<std::string> ids;
        for (std::size_t v = 0; v < n; ++v) ids.push_back("v" + std::to_string(v));
        std::vector<std::tuple<std::string, std::string, int>> e;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (a != b && rng.below(2)) e.emplace_back(ids[a], ids[b], 1 + int(rng.below(3)));
        auto net = make_det_network(ids, ids[0], {ids[n - 1]}, e);
        for (int K : {1, 2, 3, 5}) EXPECT_TRUE(is_layered(unfold(net, K, 1.0)).layered);
    }
}
