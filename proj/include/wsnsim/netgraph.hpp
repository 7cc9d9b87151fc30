#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wsnsim/rng.hpp"
#include "wsnsim/types.hpp"

namespace wsnsim {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Deployment parameters for a random geometric graph: n sensors dropped
// uniformly on the square [0, L]^2, connected whenever their Euclidean
// distance is positive and at most the transmission radius r.
struct NetworkConfig {
    std::size_t n = 0;
    double side_length = 1.0;
    double radius = 1.0;
    std::uint64_t rng_seed = 0;

    void validate() const {
        if (n < 1) throw std::invalid_argument("network config: n must be >= 1");
        if (!(side_length > 0.0))
            throw std::invalid_argument("network config: side length must be > 0");
        if (!(radius > 0.0))
            throw std::invalid_argument("network config: radius must be > 0");
    }
};

// Nodes per unit area of the deployment square.
inline double node_density(const NetworkConfig& config) {
    return static_cast<double>(config.n) / (config.side_length * config.side_length);
}

// Immutable random geometric graph. Positions and sorted adjacency lists are
// fixed at construction; the same (config, seed) always reproduces the same
// graph bit for bit, so instances can be shared read-only across trials.
class NetworkGraph {
public:
    static NetworkGraph generate(const NetworkConfig& config) {
        config.validate();
        Rng rng(config.rng_seed);
        std::vector<Point> positions;
        positions.reserve(config.n);
        for (std::size_t i = 0; i < config.n; ++i) {
            const double x = config.side_length * rng.next_double();
            const double y = config.side_length * rng.next_double();
            positions.push_back({x, y});
        }
        return NetworkGraph(config, std::move(positions));
    }

    // Builds a graph from fixed positions (test fixtures, hand topologies).
    static NetworkGraph from_positions(std::vector<Point> positions, double radius) {
        if (positions.empty())
            throw std::invalid_argument("network graph: need at least one position");
        if (!(radius > 0.0))
            throw std::invalid_argument("network graph: radius must be > 0");
        NetworkConfig config;
        config.n = positions.size();
        config.radius = radius;
        double extent = 1.0;
        for (const Point& p : positions) extent = std::max({extent, p.x, p.y});
        config.side_length = extent;
        return NetworkGraph(config, std::move(positions));
    }

    std::size_t size() const { return positions_.size(); }
    const NetworkConfig& config() const { return config_; }
    const Point& position(NodeId u) const { return positions_[u]; }
    const std::vector<NodeId>& neighbors(NodeId u) const { return adjacency_[u]; }
    std::size_t degree(NodeId u) const { return adjacency_[u].size(); }

    bool has_edge(NodeId u, NodeId v) const {
        const auto& adj = adjacency_[u];
        return std::binary_search(adj.begin(), adj.end(), v);
    }

    double mean_degree() const {
        std::size_t total = 0;
        for (const auto& adj : adjacency_) total += adj.size();
        return static_cast<double>(total) / static_cast<double>(size());
    }

    std::vector<NodeId> isolated_nodes() const {
        std::vector<NodeId> out;
        for (NodeId u = 0; u < size(); ++u)
            if (adjacency_[u].empty()) out.push_back(u);
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json positions = nlohmann::json::array();
        for (const Point& p : positions_) positions.push_back({p.x, p.y});
        nlohmann::json edges = nlohmann::json::array();
        for (NodeId u = 0; u < size(); ++u)
            for (NodeId v : adjacency_[u])
                if (u < v) edges.push_back({u, v});
        return {{"n", config_.n},
                {"L", config_.side_length},
                {"r", config_.radius},
                {"seed", config_.rng_seed},
                {"positions", std::move(positions)},
                {"edges", std::move(edges)}};
    }

    // Rebuilds a graph from its fixture dump. Adjacency comes from the edge
    // list as stored, so round trips are exact even if positions were edited.
    static NetworkGraph from_json(const nlohmann::json& doc) {
        NetworkConfig config;
        config.n = doc.at("n").get<std::size_t>();
        config.side_length = doc.at("L").get<double>();
        config.radius = doc.at("r").get<double>();
        config.rng_seed = doc.at("seed").get<std::uint64_t>();
        config.validate();
        std::vector<Point> positions;
        positions.reserve(config.n);
        for (const auto& p : doc.at("positions"))
            positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        if (positions.size() != config.n)
            throw std::invalid_argument("network graph: position count != n");
        NetworkGraph graph;
        graph.config_ = config;
        graph.positions_ = std::move(positions);
        graph.adjacency_.assign(config.n, {});
        for (const auto& e : doc.at("edges")) {
            const NodeId u = e.at(0).get<NodeId>();
            const NodeId v = e.at(1).get<NodeId>();
            if (u >= config.n || v >= config.n || u == v)
                throw std::invalid_argument("network graph: bad edge " +
                                            std::to_string(u) + "-" + std::to_string(v));
            graph.adjacency_[u].push_back(v);
            graph.adjacency_[v].push_back(u);
        }
        for (auto& adj : graph.adjacency_) {
            std::sort(adj.begin(), adj.end());
            if (std::adjacent_find(adj.begin(), adj.end()) != adj.end())
                throw std::invalid_argument("network graph: duplicate edge in fixture");
        }
        return graph;
    }

private:
    NetworkGraph() = default;

    NetworkGraph(const NetworkConfig& config, std::vector<Point> positions)
        : config_(config), positions_(std::move(positions)) {
        adjacency_.assign(positions_.size(), {});
        const double r2 = config_.radius * config_.radius;
        for (NodeId u = 0; u < positions_.size(); ++u) {
            for (NodeId v = u + 1; v < positions_.size(); ++v) {
                const double dx = positions_[u].x - positions_[v].x;
                const double dy = positions_[u].y - positions_[v].y;
                const double d2 = dx * dx + dy * dy;
                // Coincident points are not neighbors: the rule is 0 < d <= r.
                if (d2 > 0.0 && d2 <= r2) {
                    adjacency_[u].push_back(v);
                    adjacency_[v].push_back(u);
                }
            }
        }
        // Neighbor lists are already in ascending order by construction.
    }

    NetworkConfig config_;
    std::vector<Point> positions_;
    std::vector<std::vector<NodeId>> adjacency_;
};

}  // namespace wsnsim
