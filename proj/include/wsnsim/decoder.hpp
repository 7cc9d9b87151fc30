#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsnsim/rng.hpp"
#include "wsnsim/storage.hpp"
#include "wsnsim/types.hpp"

namespace wsnsim {

// Uniform random h-subset of {0..n-1}, sorted. Partial Fisher-Yates.
inline std::vector<NodeId> select_query(std::size_t n, std::size_t h, Rng& rng) {
    if (h > n) throw std::domain_error("select_query: h exceeds node count");
    std::vector<NodeId> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < h; ++i) {
        const std::size_t j = i + rng.next_index(n - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(h);
    std::sort(pool.begin(), pool.end());
    return pool;
}

// One XOR equation: rhs equals the XOR of the unknowns named in ids.
struct SystemRow {
    std::vector<NodeId> ids;
    Payload rhs = 0;
};

struct LinearSystem {
    std::size_t unknowns = 0;
    std::vector<SystemRow> rows;
};

// Reads the queried stores into equations: one weight-1 row per queried
// node's own reading, one row per non-empty coded slot.
inline LinearSystem build_system(std::span<const NodeStore> stores,
                                 std::span<const NodeId> query) {
    LinearSystem system;
    system.unknowns = stores.size();
    for (NodeId q : query) {
        const NodeStore& store = stores[q];
        system.rows.push_back({{store.id()}, store.own_data()});
        for (const CodedSlot& slot : store.coded_slots())
            if (!slot.ids.empty()) system.rows.push_back({slot.ids, slot.xor_acc});
    }
    return system;
}

struct DecodeResult {
    bool success = false;
    std::vector<Payload> payloads;     // indexed by origin, valid on success
    std::size_t rank_deficit = 0;
    std::vector<NodeId> unrecovered;   // sorted origin ids, on failure
};

// Solves the XOR system: a peeling pass substitutes weight-1 rows until the
// system stops shrinking, then bit-packed Gaussian elimination handles the
// residue. A contradictory row means the stored slots were corrupt, which is
// an integrity failure, not a decode failure.
inline DecodeResult solve(const LinearSystem& system) {
    const std::size_t n = system.unknowns;
    std::vector<Payload> value(n, 0);
    std::vector<bool> known(n, false);

    // Working copies with solved unknowns substituted out.
    struct WorkRow {
        std::vector<NodeId> ids;
        Payload rhs;
    };
    std::vector<WorkRow> work;
    work.reserve(system.rows.size());
    for (const SystemRow& row : system.rows) work.push_back({row.ids, row.rhs});

    const auto reduce = [&](WorkRow& row) {
        auto out = row.ids.begin();
        for (NodeId id : row.ids) {
            if (known[id])
                row.rhs ^= value[id];
            else
                *out++ = id;
        }
        row.ids.erase(out, row.ids.end());
    };

    // Peeling: keep substituting weight-1 rows until a full pass changes
    // nothing.
    bool progress = true;
    while (progress) {
        progress = false;
        for (WorkRow& row : work) {
            reduce(row);
            if (row.ids.size() == 1) {
                value[row.ids.front()] = row.rhs;
                known[row.ids.front()] = true;
                row.ids.clear();
                row.rhs = 0;
                progress = true;
            } else if (row.ids.empty() && row.rhs != 0) {
                throw IntegrityError("decode: contradictory row after peeling");
            }
        }
    }

    // Residue: map still-unknown ids to compact columns and eliminate.
    std::vector<NodeId> open;
    for (NodeId id = 0; id < n; ++id)
        if (!known[id]) open.push_back(id);

    std::size_t residue_deficit = 0;
    if (!open.empty()) {
        std::vector<std::size_t> column(n, 0);
        for (std::size_t c = 0; c < open.size(); ++c) column[open[c]] = c;
        const std::size_t words = (open.size() + 63) / 64;

        std::vector<std::vector<std::uint64_t>> mat;
        std::vector<Payload> rhs;
        for (const WorkRow& row : work) {
            if (row.ids.empty()) continue;
            std::vector<std::uint64_t> bits(words, 0);
            for (NodeId id : row.ids) {
                const std::size_t c = column[id];
                bits[c / 64] |= std::uint64_t(1) << (c % 64);
            }
            mat.push_back(std::move(bits));
            rhs.push_back(row.rhs);
        }

        std::vector<std::size_t> pivot_of_col(open.size(), SIZE_MAX);
        std::size_t rank = 0;
        for (std::size_t c = 0; c < open.size() && rank < mat.size(); ++c) {
            const std::size_t w = c / 64;
            const std::uint64_t bit = std::uint64_t(1) << (c % 64);
            std::size_t pivot = SIZE_MAX;
            for (std::size_t r = rank; r < mat.size(); ++r) {
                if (mat[r][w] & bit) {
                    pivot = r;
                    break;
                }
            }
            if (pivot == SIZE_MAX) continue;
            std::swap(mat[pivot], mat[rank]);
            std::swap(rhs[pivot], rhs[rank]);
            for (std::size_t r = 0; r < mat.size(); ++r) {
                if (r != rank && (mat[r][w] & bit)) {
                    for (std::size_t k = 0; k < words; ++k) mat[r][k] ^= mat[rank][k];
                    rhs[r] ^= rhs[rank];
                }
            }
            pivot_of_col[c] = rank;
            ++rank;
        }

        // Rows reduced to zero must have zero rhs.
        for (std::size_t r = rank; r < mat.size(); ++r) {
            bool zero = true;
            for (std::uint64_t wv : mat[r]) zero = zero && wv == 0;
            if (zero && rhs[r] != 0)
                throw IntegrityError("decode: contradictory row after elimination");
        }

        // The matrix is in reduced row echelon form. An unknown is pinned
        // down exactly when its pivot row carries no free column, i.e. the
        // row weight is 1.
        for (std::size_t c = 0; c < open.size(); ++c) {
            const std::size_t r = pivot_of_col[c];
            if (r == SIZE_MAX) continue;
            std::size_t weight = 0;
            for (std::uint64_t wv : mat[r]) weight += static_cast<std::size_t>(std::popcount(wv));
            if (weight == 1) {
                value[open[c]] = rhs[r];
                known[open[c]] = true;
            }
        }
        residue_deficit = open.size() - rank;
    }

    DecodeResult result;
    for (NodeId id = 0; id < n; ++id)
        if (!known[id]) result.unrecovered.push_back(id);
    result.rank_deficit = residue_deficit;
    result.success = result.unrecovered.empty();
    if (result.success) result.payloads = std::move(value);
    return result;
}

// Full decode attempt: query h of n stores uniformly at random and try to
// recover every reading. h = 0 never succeeds.
inline bool decode_trial(std::span<const NodeStore> stores, std::size_t n, std::size_t h,
                         Rng& rng) {
    if (h == 0) return false;
    const std::vector<NodeId> query = select_query(n, h, rng);
    return solve(build_system(stores, query)).success;
}

}  // namespace wsnsim
