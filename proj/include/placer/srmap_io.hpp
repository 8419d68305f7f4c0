#pragma once

#include <string>

#include "placer/robustness.hpp"

namespace placer {

// ASCII PLY point cloud with one coloured vertex per sample. Finite values
// run through a cool-to-warm gradient capped at the 99th percentile;
// unbounded samples are black. The colour bounds go into header comments.
void export_sr_map(const SRMap& map, const std::string& path);

// Gradient used by the export, exposed for tests: t in [0,1] -> (r, g, b).
std::array<int, 3> sr_colormap(double t);

}  // namespace placer
