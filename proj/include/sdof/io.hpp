#pragma once

// Channel JSON schema and machine-readable exports.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sdof/analysis.hpp"

namespace sdof {

using Json = nlohmann::ordered_json;

/// Channel schema: integers n_t, n_r1, n_r2, n_e; real p_bar; h1 and h2 as
/// row arrays of [re, im] pairs. Unknown top-level fields are ignored and
/// reported through `warnings`; regime warnings come from validate().
/// Throws ErrorKind::input on schema violations and
/// ErrorKind::dimension_mismatch on shape disagreement.
ChannelSpec channel_from_json(const Json& j, std::vector<std::string>* warnings = nullptr);
Json channel_to_json(const ChannelSpec& spec);

/// Throws ErrorKind::not_found for a missing file and ErrorKind::input
/// for invalid JSON.
ChannelSpec load_channel(const std::string& path, std::vector<std::string>* warnings = nullptr);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const char* name);

std::uint64_t fnv1a64(std::string_view bytes);

/// FNV-1a 64 of the canonical channel JSON, as 16 hex digits.
std::string input_hash(const ChannelSpec& spec);

Json to_json(const RankProfile& p);
Json to_json(const ParallelChannel& pc, bool include_matrices);
Json to_json(const SdofRegion& region, const RegionVertexSet& vertices);
Json to_json(const Scheme& scheme);
Json to_json(const ConverseReport& report);
Json to_json(const SweepReport& report);
Json to_json(const Certificate& cert);

/// Columns p_bar, R0, R1, R2, RE, leakage; one row per feasible grid point.
std::string sweep_csv(const SweepReport& report);

}  // namespace sdof
