#ifndef JOINTKIT_ENGINE_HPP
#define JOINTKIT_ENGINE_HPP

#include <optional>
#include <string>

#include "jsonio.hpp"

namespace jointkit {

// A generated configuration: a plain line family or a multijoint
// (planes + line families) configuration, with the optional partition hint
// that some builders supply.
struct GeneratedConfig {
  std::optional<LineFamily> family;
  std::optional<MultijointConfig> multijoint;
  std::optional<PlanarPartition> hint;
  json descriptor;  // kind and parameters, echoed into reports

  bool is_multijoint() const { return multijoint.has_value(); }
};

GeneratedConfig generate(const json& generator_spec);
GeneratedConfig config_from_document(const json& doc);  // family or multijoint json
json config_to_document(const GeneratedConfig& cfg);

struct RunResult {
  json report;
  bool ok = true;  // every requested exact assertion passed
};

// Executes one experiment config: generator (or inline input), analyses,
// constants, assertions. Deterministic for a fixed config + seed; the
// provenance timestamp is the only varying field.
RunResult run_experiment(const json& config);

// Cross product over array-valued generator parameters; one CSV row per
// parameter point, cap-exceeded rows marked "skipped".
std::string run_sweep(const json& config);

std::string tool_version();
std::string config_hash(const json& config);

}  // namespace jointkit

#endif
