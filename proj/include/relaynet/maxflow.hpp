#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace relaynet {

// Augmenting-path max-flow on real capacities with capacity scaling.
class MaxFlow {
public:
    explicit MaxFlow(std::size_t n) : adj_(n) {}

    void add_edge(int u, int v, double cap) {
        adj_[u].push_back(arcs_.size());
        arcs_.push_back({v, cap});
        adj_[v].push_back(arcs_.size());
        arcs_.push_back({u, 0.0});
    }

    double run(int s, int t, double tol = 1e-12) {
        if (s == t) return 0.0;
        double maxcap = 0.0;
        for (const auto& a : arcs_) maxcap = std::max(maxcap, a.cap);
        if (maxcap <= tol) return 0.0;
        double delta = std::exp2(std::floor(std::log2(maxcap)));
        double flow = 0.0;
        while (true) {
            double d = delta > tol ? delta : tol;
            while (true) {
                double f = augment(s, t, d);
                if (f <= 0.0) break;
                flow += f;
            }
            if (delta <= tol) break;
            delta /= 2;
        }
        return flow;
    }

    // nodes reachable from s in the residual graph after run()
    std::vector<char> source_side(int s, double tol = 1e-12) const {
        std::vector<char> seen(adj_.size(), 0);
        std::vector<int> st{s};
        seen[s] = 1;
        while (!st.empty()) {
            int u = st.back();
            st.pop_back();
            for (std::size_t k : adj_[u])
                if (arcs_[k].cap > tol && !seen[arcs_[k].to]) {
                    seen[arcs_[k].to] = 1;
                    st.push_back(arcs_[k].to);
                }
        }
        return seen;
    }

private:
    struct Arc {
        int to;
        double cap;
    };

    // one BFS augmenting path using arcs with residual >= delta
    double augment(int s, int t, double delta) {
        std::vector<std::ptrdiff_t> parent(adj_.size(), -1);
        std::vector<char> seen(adj_.size(), 0);
        std::queue<int> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty() && !seen[t]) {
            int u = q.front();
            q.pop();
            for (std::size_t k : adj_[u]) {
                const Arc& a = arcs_[k];
                if (a.cap >= delta && !seen[a.to]) {
                    seen[a.to] = 1;
                    parent[a.to] = static_cast<std::ptrdiff_t>(k);
                    q.push(a.to);
                }
            }
        }
        if (!seen[t]) return 0.0;
        double f = std::numeric_limits<double>::infinity();
        for (int v = t; v != s; v = arcs_[parent[v] ^ 1].to) f = std::min(f, arcs_[parent[v]].cap);
        for (int v = t; v != s; v = arcs_[parent[v] ^ 1].to) {
            arcs_[parent[v]].cap -= f;
            arcs_[parent[v] ^ 1].cap += f;
        }
        return f;
    }

    std::vector<std::vector<std::size_t>> adj_;
    std::vector<Arc> arcs_;
};

} // namespace relaynet
