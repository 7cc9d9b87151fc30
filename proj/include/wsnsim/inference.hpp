#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wsnsim/flooding.hpp"
#include "wsnsim/netgraph.hpp"

namespace wsnsim {

// External degree b_v: neighbors of v that lie outside N(u) and are not u
// itself. This is what v contributes to u's counter inference.
inline std::size_t external_degree(const NetworkGraph& graph, NodeId u, NodeId v) {
    if (!graph.has_edge(u, v))
        throw std::domain_error("external degree: v is not a neighbor of u");
    std::size_t count = 0;
    for (NodeId w : graph.neighbors(v))
        if (w != u && !graph.has_edge(u, w)) ++count;
    return count;
}

struct InferenceResult {
    NodeId node = 0;
    std::vector<std::pair<NodeId, std::size_t>> external_degrees;  // (v, b_v)
    double c_u = 1.0;
    std::size_t sum_b = 0;
    int counter = 1;
};

// Scale factor for node u, inversely proportional to its degree: c_u =
// C * mu_local / d(u) with mu_local the mean degree over N(u) and u itself.
// On a regular graph this is exactly C.
inline double choose_c_u(const NetworkGraph& graph, NodeId u, double scale) {
    const std::size_t d = graph.degree(u);
    if (d == 0) throw std::invalid_argument("choose_c_u: isolated node");
    if (!(scale > 0.0)) throw std::invalid_argument("choose_c_u: scale must be > 0");
    std::size_t total = d;
    for (NodeId v : graph.neighbors(u)) total += graph.degree(v);
    const double mu_local = static_cast<double>(total) / static_cast<double>(d + 1);
    return scale * mu_local / static_cast<double>(d);
}

// Derives node u's hop budget from neighborhood structure only, never from
// the network size: counter = floor(c_u * sum(b_v) / d(u)), at least 1.
//
// A neighbor v whose only unexplored continuation is a single node starts a
// chain: the walk follows it until the chain dead-ends or fans out, and b_v
// becomes the summed degree of the walked nodes, so a source behind a thin
// corridor still budgets enough hops to push through it. Nodes already seen
// (u, N(u), earlier chain members) are excluded from the walk. If the walk
// somehow exceeds n steps, b_v falls back to 0.
inline InferenceResult infer_counter(const NetworkGraph& graph, NodeId u, double c_u) {
    const std::size_t n = graph.size();
    const std::size_t d = graph.degree(u);
    if (d == 0) throw std::invalid_argument("infer_counter: isolated node");

    std::vector<bool> base(n, false);
    base[u] = true;
    for (NodeId w : graph.neighbors(u)) base[w] = true;

    InferenceResult result;
    result.node = u;
    result.c_u = c_u;
    for (NodeId v : graph.neighbors(u)) {
        std::vector<NodeId> onward;
        for (NodeId w : graph.neighbors(v))
            if (!base[w]) onward.push_back(w);

        std::size_t b_v = onward.size();
        if (onward.size() == 1) {
            // Chain walk: accumulate degrees until the corridor opens up or
            // dies out.
            std::vector<bool> visited = base;
            visited[v] = true;
            NodeId cur = onward.front();
            std::size_t sum = 0;
            std::size_t steps = 0;
            for (;;) {
                if (++steps > n) {
                    sum = 0;
                    break;
                }
                sum += graph.degree(cur);
                std::vector<NodeId> next;
                for (NodeId w : graph.neighbors(cur))
                    if (!visited[w]) next.push_back(w);
                if (next.size() != 1) break;
                visited[cur] = true;
                cur = next.front();
            }
            b_v = sum;
        }
        result.external_degrees.emplace_back(v, b_v);
        result.sum_b += b_v;
    }

    const double raw = c_u * static_cast<double>(result.sum_b) / static_cast<double>(d);
    result.counter = std::max(1, static_cast<int>(std::floor(raw)));
    return result;
}

// Counters for every node, with per-node c_u from choose_c_u(scale).
inline std::vector<int> infer_all_counters(const NetworkGraph& graph, double scale) {
    std::vector<int> counters(graph.size());
    for (NodeId u = 0; u < graph.size(); ++u)
        counters[u] = infer_counter(graph, u, choose_c_u(graph, u, scale)).counter;
    return counters;
}

// Size-oblivious variant of the flooding run: counters come from the
// inference phase, then the shared engine does the rest.
inline DisseminationReport run_dsa2(const NetworkGraph& graph, const DegreeDistribution& dist,
                                    std::size_t slot_count, double scale,
                                    std::uint64_t payload_seed, Rng& rng,
                                    EngineOptions options = {}) {
    const std::vector<int> counters = infer_all_counters(graph, scale);
    return run_flood(graph, dist, slot_count, counters, payload_seed, rng, options);
}

// Debug/figure dump: one row per node.
inline void write_inference_csv(const NetworkGraph& graph, double scale, std::ostream& out) {
    out << "node_id,degree,sum_b_v,c_u,counter\n";
    for (NodeId u = 0; u < graph.size(); ++u) {
        const double c_u = choose_c_u(graph, u, scale);
        const InferenceResult r = infer_counter(graph, u, c_u);
        out << u << ',' << graph.degree(u) << ',' << r.sum_b << ',' << c_u << ','
            << r.counter << '\n';
    }
}

}  // namespace wsnsim
