#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wsnsim/netgraph.hpp"
#include "wsnsim/rng.hpp"
#include "wsnsim/storage.hpp"
#include "wsnsim/types.hpp"

namespace wsnsim {

struct EngineOptions {
    // When set, a node drops re-received packets instead of re-forwarding
    // them while their counter allows.
    bool strict_discard = false;
    // Round guard: abort after round_guard_factor * n * max_counter rounds.
    std::size_t round_guard_factor = 10;
    bool record_trace = false;
};

// One transmission, as written by the trace dump. counter is the value on
// the wire (the sender's remaining budget); accepted means the receiver
// XOR-absorbed the packet into a slot.
struct TraceEvent {
    std::size_t round;
    NodeId from;
    NodeId to;
    NodeId origin;
    int counter;
    bool accepted;
};

struct DisseminationReport {
    std::uint64_t tx_count = 0;
    std::size_t rounds = 0;
    std::vector<std::uint64_t> per_origin_tx;
    std::vector<std::size_t> per_origin_depth;  // deepest hop chain per origin
    std::vector<NodeStore> stores;
    std::vector<TraceEvent> trace;

    double mean_origin_tx() const {
        std::uint64_t total = 0;
        for (std::uint64_t t : per_origin_tx) total += t;
        return per_origin_tx.empty()
                   ? 0.0
                   : static_cast<double>(total) / static_cast<double>(per_origin_tx.size());
    }

    double mean_origin_depth() const {
        std::size_t total = 0;
        for (std::size_t d : per_origin_depth) total += d;
        return per_origin_depth.empty()
                   ? 0.0
                   : static_cast<double>(total) / static_cast<double>(per_origin_depth.size());
    }

    double mean_distinct_stored() const {
        std::size_t total = 0;
        for (const NodeStore& s : stores) total += s.distinct_stored();
        return stores.empty() ? 0.0
                              : static_cast<double>(total) / static_cast<double>(stores.size());
    }

    // Every coded slot must equal the XOR of the true readings it claims to
    // hold. truth[i] is the ground-truth payload of origin i.
    void verify_xor_ledger(std::span<const Payload> truth) const {
        for (const NodeStore& store : stores) {
            for (const CodedSlot& slot : store.coded_slots()) {
                Payload expect = 0;
                for (NodeId origin : slot.ids) expect ^= truth[origin];
                if (expect != slot.xor_acc)
                    throw IntegrityError("xor ledger violated at node " +
                                         std::to_string(store.id()));
            }
        }
    }
};

// Hop budget a source gives its packet: floor(n / degree), at least 1, so a
// well-connected source floods once while a sparsely connected one lets its
// packet travel far.
inline int flood_counter(std::size_t n, std::size_t degree) {
    if (degree == 0)
        throw std::invalid_argument("flood counter: isolated source has no neighbors");
    return std::max<int>(1, static_cast<int>(n / degree));
}

// Synchronous flooding simulation over one graph.
//
// Every node is a source. Initialization floods each source packet to all
// neighbors, which absorb it with probability 1. Afterwards rounds run until
// all forward queues drain: a node forwards each queued packet to neighbors
// it does not know to have the packet already (multicast to all of them on
// its first forward of that origin, a single uniform pick on re-forwards).
// Receivers decrement the hop budget, run the slot acceptance rule on first
// receipt, and re-enqueue while budget remains. Knowledge stays neighbor
// local: a node only records whom it sent a packet to and whom it received
// it from.
class FloodSimulation {
public:
    FloodSimulation(const NetworkGraph& graph, const DegreeDistribution& dist,
                    std::size_t slot_count, std::uint64_t payload_seed, Rng& rng,
                    EngineOptions options = {})
        : graph_(graph), rng_(rng), options_(options) {
        const std::size_t n = graph.size();
        truth_.reserve(n);
        for (NodeId u = 0; u < n; ++u) truth_.push_back(sensor_reading(u, payload_seed));
        stores_.reserve(n);
        for (NodeId u = 0; u < n; ++u)
            stores_.emplace_back(u, truth_[u], slot_count, n, dist, rng_);
        queues_.resize(n);
        next_queues_.resize(n);
        state_index_.assign(n, std::vector<std::int32_t>(n, -1));
        states_.resize(n);
        report_.per_origin_tx.assign(n, 0);
        report_.per_origin_depth.assign(n, 0);
    }

    const std::vector<Payload>& truth() const { return truth_; }
    const std::vector<NodeStore>& stores() const { return stores_; }

    // Initialization phase: source u floods its packet with hop budget
    // counters[u] to every neighbor; neighbors absorb with probability 1 and
    // queue the copy if budget remains after the hop.
    void initialize_sources(std::span<const int> counters) {
        if (counters.size() != graph_.size())
            throw std::invalid_argument("flood: one counter per source required");
        for (NodeId s = 0; s < graph_.size(); ++s) {
            if (graph_.degree(s) == 0)
                throw std::invalid_argument("flood: isolated source " + std::to_string(s));
            if (counters[s] < 1)
                throw std::invalid_argument("flood: counter must be >= 1");
            max_counter_ = std::max<std::size_t>(max_counter_, counters[s]);
            const QueueEntry entry{s, truth_[s], counters[s], 0};
            for (NodeId v : graph_.neighbors(s)) transmit(s, v, entry, true);
        }
        flush_next_round();
    }

    // Forwarding rounds until every queue drains.
    void run_rounds() {
        const std::size_t guard =
            options_.round_guard_factor * graph_.size() * std::max<std::size_t>(1, max_counter_);
        while (pending_ > 0) {
            if (++report_.rounds > guard)
                throw IntegrityError("flood failed to terminate within round guard");
            for (NodeId u = 0; u < graph_.size(); ++u) {
                for (const QueueEntry& entry : queues_[u]) forward(u, entry);
                queues_[u].clear();
            }
            flush_next_round();
        }
    }

    DisseminationReport take_report() {
        report_.tx_count = tx_count_;
        report_.stores = std::move(stores_);
        return std::move(report_);
    }

private:
    struct QueueEntry {
        NodeId origin;
        Payload payload;
        int budget;        // hops this copy may still take
        std::size_t depth; // hops taken from the source to the holder
    };

    struct OriginState {
        std::vector<bool> knows;  // per adjacency position: neighbor has the packet
        bool forwarded = false;
    };

    OriginState& origin_state(NodeId node, NodeId origin) {
        std::int32_t& idx = state_index_[node][origin];
        if (idx < 0) {
            idx = static_cast<std::int32_t>(states_[node].size());
            states_[node].push_back(OriginState{
                std::vector<bool>(graph_.degree(node), false), false});
        }
        return states_[node][static_cast<std::size_t>(idx)];
    }

    std::size_t neighbor_position(NodeId node, NodeId neighbor) const {
        const auto& adj = graph_.neighbors(node);
        return static_cast<std::size_t>(
            std::lower_bound(adj.begin(), adj.end(), neighbor) - adj.begin());
    }

    void forward(NodeId u, const QueueEntry& entry) {
        OriginState& st = origin_state(u, entry.origin);
        const auto& adj = graph_.neighbors(u);
        std::vector<NodeId> eligible;
        eligible.reserve(adj.size());
        for (std::size_t i = 0; i < adj.size(); ++i)
            if (!st.knows[i]) eligible.push_back(adj[i]);
        if (eligible.empty()) return;  // no node to send to
        if (!st.forwarded) {
            st.forwarded = true;
            for (NodeId v : eligible) transmit(u, v, entry, false);
        } else {
            transmit(u, eligible[rng_.next_index(eligible.size())], entry, false);
        }
    }

    void transmit(NodeId from, NodeId to, const QueueEntry& entry, bool first_hop) {
        ++tx_count_;
        ++report_.per_origin_tx[entry.origin];
        origin_state(from, entry.origin).knows[neighbor_position(from, to)] = true;
        origin_state(to, entry.origin).knows[neighbor_position(to, from)] = true;

        const std::size_t depth = entry.depth + 1;
        report_.per_origin_depth[entry.origin] =
            std::max(report_.per_origin_depth[entry.origin], depth);
        const int budget_left = entry.budget - 1;  // receiver decrements

        bool accepted = false;
        NodeStore& store = stores_[to];
        if (!store.has_seen(entry.origin)) {
            const Packet packet{entry.origin, entry.payload, entry.budget, PacketFlag::kInit};
            if (auto slot = store.accept_decision(packet, first_hop, rng_)) {
                store.absorb(packet, *slot);
                accepted = true;
            }
            store.mark_seen(entry.origin);  // receipt recorded even on rejection
            if (budget_left >= 1) enqueue(to, {entry.origin, entry.payload, budget_left, depth});
        } else if (!options_.strict_discard && budget_left >= 1) {
            enqueue(to, {entry.origin, entry.payload, budget_left, depth});
        }

        if (options_.record_trace)
            report_.trace.push_back(
                {report_.rounds, from, to, entry.origin, entry.budget, accepted});
    }

    void enqueue(NodeId node, QueueEntry entry) {
        next_queues_[node].push_back(entry);
        ++pending_next_;
    }

    void flush_next_round() {
        queues_.swap(next_queues_);
        for (auto& q : next_queues_) q.clear();
        pending_ = pending_next_;
        pending_next_ = 0;
    }

    const NetworkGraph& graph_;
    Rng& rng_;
    EngineOptions options_;
    std::vector<Payload> truth_;
    std::vector<NodeStore> stores_;
    std::vector<std::vector<QueueEntry>> queues_;
    std::vector<std::vector<QueueEntry>> next_queues_;
    std::vector<std::vector<std::int32_t>> state_index_;  // [node][origin] -> states_ slot
    std::vector<std::vector<OriginState>> states_;
    std::size_t pending_ = 0;
    std::size_t pending_next_ = 0;
    std::size_t max_counter_ = 0;
    std::uint64_t tx_count_ = 0;
    DisseminationReport report_;
};

// Full run with explicit per-source counters.
inline DisseminationReport run_flood(const NetworkGraph& graph, const DegreeDistribution& dist,
                                     std::size_t slot_count, std::span<const int> counters,
                                     std::uint64_t payload_seed, Rng& rng,
                                     EngineOptions options = {}) {
    FloodSimulation sim(graph, dist, slot_count, payload_seed, rng, options);
    sim.initialize_sources(counters);
    sim.run_rounds();
    return sim.take_report();
}

// Network-size-aware variant: every source sets its budget to
// floor(n / degree).
inline DisseminationReport run_dsa1(const NetworkGraph& graph, const DegreeDistribution& dist,
                                    std::size_t slot_count, std::uint64_t payload_seed, Rng& rng,
                                    EngineOptions options = {}) {
    std::vector<int> counters(graph.size());
    for (NodeId u = 0; u < graph.size(); ++u)
        counters[u] = flood_counter(graph.size(), graph.degree(u));
    return run_flood(graph, dist, slot_count, counters, payload_seed, rng, options);
}

}  // namespace wsnsim
