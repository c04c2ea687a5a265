#pragma once

#include "sop/operators.hpp"

namespace sop {

// Seeded low-index test operators (deterministic across runs). Entries fill
// the block of indices <= max_index only, so polynomial identities stay on
// the reliable sub-block.
TruncatedOperator random_operator(const BasisConfig& cfg, int max_index, std::uint64_t seed);
TruncatedOperator random_hermitian(const BasisConfig& cfg, int max_index, std::uint64_t seed);
// PSD with unit trace.
TruncatedOperator random_state(const BasisConfig& cfg, int max_index, std::uint64_t seed);

}  // namespace sop
