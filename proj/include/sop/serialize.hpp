#pragma once

#include "sop/distributions.hpp"
#include "sop/grid.hpp"
#include "sop/operators.hpp"
#include "sop/table.hpp"

namespace sop {

// FNV-1a over the canonical config string; echoed into artifact metadata.
std::uint64_t config_hash(const std::string& canonical);
std::string config_hash_hex(const std::string& canonical);

// {"modes": N, "cutoff": n_max, "entries": [[re, im], ...]} row-major.
std::string operator_to_json(const TruncatedOperator& t, const Metadata& meta);
TruncatedOperator operator_from_json(const std::string& text);

// CSV: "# ..." metadata, a q_axis row, a p_axis row, then row-major samples
// as re,im pairs (2*points columns per row). JSON mirrors the same layout.
std::string gridfunction_to_csv(const GridFunction& f, const Metadata& meta);
std::string gridfunction_to_json(const GridFunction& f, const Metadata& meta);

// {"rule": name, "cutoff": c, "growth": {...}, "coeffs": [[re, im], ...]?}
std::string distribution_to_json(const OperatorDistribution& d, int materialize_cutoff,
                                 bool include_coeffs, const Metadata& meta);

}  // namespace sop
