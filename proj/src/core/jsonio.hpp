#ifndef JOINTKIT_JSONIO_HPP
#define JOINTKIT_JSONIO_HPP

#include <json.hpp>

#include "vanishing.hpp"
#include "zeroset.hpp"

namespace jointkit {

using json = nlohmann::json;

// Field elements serialize as decimal strings, rationals as "num/den".
json field_to_json(const Field& f);
Field field_from_json(const json& j);

json value_to_json(const Value& v);
json vec_to_json(const Vec& v);
Vec vec_from_json(const json& j, const Field& f);

// { "x0": [..], "dirs": [[..], ..] }
json subspace_to_json(const AffineSubspace& s);
AffineSubspace subspace_from_json(const json& j, const Field& f);

json line_family_to_json(const LineFamily& fam);
LineFamily line_family_from_json(const json& j);

json multijoint_config_to_json(const MultijointConfig& cfg);
MultijointConfig multijoint_config_from_json(const json& j);

json partition_to_json(const PlanarPartition& p);
PlanarPartition partition_from_json(const json& j, const Field& f);

json certificate_to_json(const StructureCertificate& cert);

json joints_to_json(const std::vector<JointRecord>& joints);
json multijoints_to_json(const std::vector<MultijointRecord>& joints);

json vanishing_spec_to_json(const VanishingSpec& spec);
VanishingSpec vanishing_spec_from_json(const json& j);

FactoredVariety variety_from_json(const json& j);
json variety_to_json(const FactoredVariety& v);

mpq_class mpq_from_json(const json& j);  // accepts "3/2", "1", or integers
std::string mpq_str(const mpq_class& q);

}  // namespace jointkit

#endif
