#pragma once

#include <ostream>

#include "config.hpp"

namespace keps::cli {

// Exit-code contract: 0 success, 2 configuration/validation failure,
// 3 run-stage failure (divergence, blowup, tolerance breach).

int cmd_validate(const RunConfig& cfg, std::ostream& out);
int cmd_run(const RunConfig& cfg, std::ostream& out);
int cmd_decay(const RunConfig& cfg, std::ostream& out);
int cmd_mms(const RunConfig& cfg, std::ostream& out);
int cmd_estimate(const RunConfig& cfg, std::ostream& out);

} // namespace keps::cli
