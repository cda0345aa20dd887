#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "geofix/checks.hpp"
#include "geofix/geometry.hpp"
#include "geofix/iteration.hpp"
#include "geofix/mappings.hpp"
#include "geofix/rates.hpp"
#include "geofix/sets.hpp"

namespace geofix {

using json = nlohmann::json;

// Canonical form: sorted keys, no whitespace, floats printed with 17
// significant digits. Digests and the determinism contract hang off this.
std::string canonical_dump(const json& j);
std::uint64_t fnv1a64(const std::string& data);
std::string digest_hex(const json& j);

json point_to_json(const Point& p);
Point point_from_json(const json& j);

json space_to_json(const Space& s);
Space space_from_json(const json& j);
// "euclidean:2", "disk", "lp:4:3" (p then dim), "tree:<file.json>"
Space parse_space_spec(const std::string& spec);

MetricTree tree_from_json(const json& j);
json tree_to_json(const MetricTree& t);

json set_to_json(const Space& space, const ConvexSet& set);
ConvexSet set_from_json(const Space& space, const json& j);

json mapping_to_json(const Space& space, const Mapping& m);
Mapping mapping_from_json(const Space& space, const json& j);

json check_report_to_json(const CheckReport& r);
json extended_count_to_json(const ExtendedCount& c);
json certificate_to_json(const RegularityCertificate& c);
json trace_to_json(const OrbitTrace& t);
std::string trace_to_csv(const OrbitTrace& t);

}  // namespace geofix
