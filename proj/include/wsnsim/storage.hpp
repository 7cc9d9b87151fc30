#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "wsnsim/rng.hpp"
#include "wsnsim/soliton.hpp"
#include "wsnsim/types.hpp"

namespace wsnsim {

enum class PacketFlag : std::uint8_t { kInit = 0, kUpdate = 1 };

// One dissemination unit. counter is the remaining hop budget; an update
// packet carries new XOR old, never the raw new reading.
struct Packet {
    NodeId origin = 0;
    Payload payload = 0;
    int counter = 0;
    PacketFlag flag = PacketFlag::kInit;
};

// Deterministic 64-bit test pattern for node `id`'s sensed reading.
inline Payload sensor_reading(NodeId id, std::uint64_t run_seed) {
    return derive_seed(run_seed ^ 0x5e4541d1c0ffee00ULL, id);
}

// One coded buffer: an XOR accumulator plus the sorted origin IDs folded into
// it. accept_degree caps how many origins the slot may take.
struct CodedSlot {
    std::size_t accept_degree = 1;
    Payload xor_acc = 0;
    std::vector<NodeId> ids;

    bool full() const { return ids.size() >= accept_degree; }
    bool holds(NodeId origin) const {
        return std::binary_search(ids.begin(), ids.end(), origin);
    }
};

// Per-node storage: slot 0 is reserved for the node's own raw reading, the
// remaining m-1 slots are XOR accumulators whose acceptance degrees are drawn
// from the degree distribution at construction. seen tracks which origins the
// node has already received (any slot), including itself.
class NodeStore {
public:
    NodeStore(NodeId id, Payload own_data, std::size_t slot_count,
              std::size_t total_nodes, const DegreeDistribution& dist, Rng& rng)
        : id_(id), own_(own_data), seen_(total_nodes, false) {
        if (slot_count < 1)
            throw std::invalid_argument("node store: need at least the own-data slot");
        slots_.resize(slot_count - 1);
        for (CodedSlot& slot : slots_) slot.accept_degree = dist.sample(rng);
        mark_seen(id);
    }

    NodeId id() const { return id_; }
    Payload own_data() const { return own_; }
    void set_own_data(Payload value) { own_ = value; }
    const std::vector<CodedSlot>& coded_slots() const { return slots_; }

    bool has_seen(NodeId origin) const { return origin < seen_.size() && seen_[origin]; }
    void mark_seen(NodeId origin) {
        if (origin >= seen_.size()) seen_.resize(origin + 1, false);
        seen_[origin] = true;
    }

    // Picks a candidate slot uniformly among non-full coded slots and decides
    // acceptance: probability 1 on a first-hop delivery straight from the
    // source, otherwise 1/accept_degree of the candidate slot. Returns the
    // slot index on accept. No capacity anywhere means reject.
    std::optional<std::size_t> accept_decision([[maybe_unused]] const Packet& packet,
                                               bool first_hop, Rng& rng) const {
        assert(!has_seen(packet.origin));  // caller filters duplicates
        std::vector<std::size_t> open;
        open.reserve(slots_.size());
        for (std::size_t j = 0; j < slots_.size(); ++j)
            if (!slots_[j].full()) open.push_back(j);
        if (open.empty()) return std::nullopt;
        const std::size_t j = open[rng.next_index(open.size())];
        if (first_hop) return j;
        const double p = 1.0 / static_cast<double>(slots_[j].accept_degree);
        if (rng.chance(p)) return j;
        return std::nullopt;
    }

    // Folds an accepted init packet into the chosen slot.
    void absorb(const Packet& packet, std::size_t slot_index) {
        if (packet.flag != PacketFlag::kInit)
            throw std::logic_error("node store: only init packets are absorbed");
        CodedSlot& slot = slots_.at(slot_index);
        if (slot.full())
            throw std::logic_error("node store: absorb into a full slot");
        if (slot.holds(packet.origin))
            throw std::logic_error("node store: duplicate origin in slot");
        slot.xor_acc ^= packet.payload;
        slot.ids.insert(std::upper_bound(slot.ids.begin(), slot.ids.end(), packet.origin),
                        packet.origin);
        mark_seen(packet.origin);
    }

    // Applies an update delta to the slot holding the origin, if any. The
    // constituent list is unchanged; nodes that never stored the origin
    // ignore the update. Returns whether a slot was patched.
    bool apply_update(const Packet& delta) {
        if (delta.flag != PacketFlag::kUpdate)
            throw std::logic_error("node store: apply_update needs an update packet");
        for (CodedSlot& slot : slots_) {
            if (slot.holds(delta.origin)) {
                slot.xor_acc ^= delta.payload;
                return true;
            }
        }
        return false;
    }

    // Number of distinct foreign origins held across coded slots. Each origin
    // appears in at most one slot of a node, so slot sizes just add up.
    std::size_t distinct_stored() const {
        std::size_t total = 0;
        for (const CodedSlot& slot : slots_) total += slot.ids.size();
        return total;
    }

    nlohmann::json to_json() const {
        nlohmann::json slots = nlohmann::json::array();
        for (const CodedSlot& slot : slots_) {
            std::ostringstream acc;
            acc << "0x" << std::hex << slot.xor_acc;
            slots.push_back({{"d_c", slot.accept_degree},
                             {"ids", slot.ids},
                             {"acc_hex", acc.str()}});
        }
        std::ostringstream own;
        own << "0x" << std::hex << own_;
        return {{"node_id", id_}, {"own", own.str()}, {"slots", std::move(slots)}};
    }

    // Rebuilds a store from its dump. seen is reconstructed as the union of
    // held origins plus the node itself; receipt-only history is not dumped.
    // The seen set grows to fit whatever ids the dump mentions.
    static NodeStore from_json(const nlohmann::json& doc, std::size_t total_nodes) {
        NodeStore store;
        store.id_ = doc.at("node_id").get<NodeId>();
        store.own_ = parse_hex(doc.at("own").get<std::string>());
        store.seen_.assign(std::max<std::size_t>(total_nodes, store.id_ + 1), false);
        store.mark_seen(store.id_);
        for (const auto& s : doc.at("slots")) {
            CodedSlot slot;
            slot.accept_degree = s.at("d_c").get<std::size_t>();
            slot.ids = s.at("ids").get<std::vector<NodeId>>();
            if (!std::is_sorted(slot.ids.begin(), slot.ids.end()) ||
                std::adjacent_find(slot.ids.begin(), slot.ids.end()) != slot.ids.end())
                throw std::invalid_argument("node store: slot ids must be sorted and unique");
            if (slot.ids.size() > slot.accept_degree)
                throw std::invalid_argument("node store: slot holds more ids than its degree");
            slot.xor_acc = parse_hex(s.at("acc_hex").get<std::string>());
            for (NodeId origin : slot.ids) {
                if (origin >= store.seen_.size()) store.seen_.resize(origin + 1, false);
                store.mark_seen(origin);
            }
            store.slots_.push_back(std::move(slot));
        }
        return store;
    }

private:
    NodeStore() = default;

    static Payload parse_hex(const std::string& text) {
        return static_cast<Payload>(std::stoull(text, nullptr, 16));
    }

    NodeId id_ = 0;
    Payload own_ = 0;
    std::vector<CodedSlot> slots_;
    std::vector<bool> seen_;
};

inline nlohmann::json stores_to_json(std::span<const NodeStore> stores) {
    nlohmann::json out = nlohmann::json::array();
    for (const NodeStore& store : stores) out.push_back(store.to_json());
    return out;
}

inline std::vector<NodeStore> stores_from_json(const nlohmann::json& doc) {
    std::size_t total = doc.size();
    for (const auto& entry : doc)
        total = std::max<std::size_t>(total, entry.at("node_id").get<NodeId>() + 1);
    std::vector<NodeStore> out;
    out.reserve(doc.size());
    for (const auto& entry : doc) out.push_back(NodeStore::from_json(entry, total));
    return out;
}

// Refreshes node `origin`'s reading everywhere: the origin's own slot takes
// the new value and every holder of the origin folds in the delta
// new XOR old. Returns the number of patched stores.
inline std::size_t broadcast_update(std::span<NodeStore> stores, NodeId origin,
                                    Payload new_value, int counter = 0) {
    NodeStore& source = stores[origin];
    const Payload delta = source.own_data() ^ new_value;
    source.set_own_data(new_value);
    Packet packet{origin, delta, counter, PacketFlag::kUpdate};
    std::size_t patched = 0;
    for (NodeStore& store : stores)
        if (store.apply_update(packet)) ++patched;
    return patched;
}

}  // namespace wsnsim
