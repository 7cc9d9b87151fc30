#pragma once

#include <cstdint>
#include <stdexcept>

namespace wsnsim {

using NodeId = std::uint32_t;

// Sensed readings are modeled as fixed-width opaque words so that XOR
// bookkeeping can be checked exactly.
using Payload = std::uint64_t;

// Thrown when an internal consistency check fails (corrupted XOR ledger,
// contradictory decode system, non-terminating flood). Never expected in a
// correct run; the CLI maps it to exit code 2.
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wsnsim
