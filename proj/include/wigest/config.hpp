#pragma once

#include <string_view>

#include "wigest/classify.hpp"
#include "wigest/gate.hpp"
#include "wigest/result.hpp"
#include "wigest/synth.hpp"

namespace wigest {

// Every tunable in one place; the CLI --config file overrides any subset.
struct Config {
  SimConfig sim{};
  GeometryConfig geometry{};
  PipelineConfig pipeline{};
  GateConfig gate{};
};

// JSON object with optional sections "sim", "geometry", "shape", "condition",
// "peaks", "classify", "pipeline" and "gate". Unknown keys are rejected.
Status ApplyOverrides(Config &cfg, std::string_view json_text);

} // namespace wigest
