#pragma once

#include "rankone/cusp.hpp"
#include "rankone/group.hpp"
#include "rankone/orbit.hpp"

#include <json.hpp>

#include <string>

namespace rankone {

using json = nlohmann::json;

// Group descriptors: {"family": "so"|"su", "n": ...}.
json group_to_json(const RankOneGroup& g);
RankOneGroup group_from_json(const json& j);

// Matrices: row-major arrays, entries as "a/b" strings (exact) or numbers
// (float); complex entries are [re, im] pairs.
json element_to_json(const GroupElement& e);
GroupElement element_from_json(const RankOneGroup& g, const json& j,
                               EntryKind kind);

// {"group": {...}, "generators": [matrix, ...], "entry_kind": ...,
//  "label": ...}
json spec_to_json(const DiscreteGroupSpec& spec);
DiscreteGroupSpec spec_from_json(const json& j);

// Cusp models: {"space": "rhn"|"chn"|"qhn", "n": ...}.
json cusp_model_to_json(const CuspModel& m);
CuspModel cusp_model_from_json(const json& j);

/// Content hash of a spec (hex string), keying the orbit-ball cache.
std::string spec_hash(const DiscreteGroupSpec& spec);

/// Binary orbit-ball cache. Files are keyed by (spec hash, R, tolerance);
/// load returns false on any mismatch or malformed file.
void save_ball(const OrbitBall& ball, const std::string& path);
bool load_ball(const DiscreteGroupSpec& spec, double R, const std::string& path,
               OrbitBall& out);

/// Cache path under dir for the given key; empty dir disables caching.
std::string ball_cache_path(const std::string& dir,
                            const DiscreteGroupSpec& spec, double R);

/// Ball enumeration with a read/write disk cache.
OrbitBall enumerate_ball_cached(const DiscreteGroupSpec& spec, double R,
                                std::size_t budget, const std::string& cache_dir);

/// CSV export of a counting curve: header R,N,logN.
std::string counting_curve_csv(
    const std::vector<std::pair<double, std::size_t>>& curve);

}  // namespace rankone
