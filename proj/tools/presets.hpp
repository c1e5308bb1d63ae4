#pragma once

#include <string>

#include "keps/model.hpp"

namespace keps::cli {

struct RunConfig;

bool preset_exists(const std::string& name);

/// Overlays the preset's recommended grid/time/picard settings onto cfg
/// (explicit config keys are applied afterwards and win).
void apply_preset_defaults(RunConfig& cfg, const std::string& name);

/// Builds the preset's initial state on the given grid. The grid must match
/// the preset-compatible configuration (any resolution is accepted).
State build_preset_state(const std::string& name, const GridSpec& g);

} // namespace keps::cli
