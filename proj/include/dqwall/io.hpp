#pragma once

#include <filesystem>
#include <string>

#include "dqwall/phase_function.hpp"

namespace dqwall {

/// Writes `<stem>.csv` (header x,p,re,im; x outer, p inner) and the JSON
/// sidecar `<stem>.json` with the grid bounds and tag.
void write_phase_function(const PhaseFunction& f, const std::filesystem::path& stem);

/// Reads back a pair written by write_phase_function.
PhaseFunction read_phase_function(const std::filesystem::path& stem);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace dqwall
