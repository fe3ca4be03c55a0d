#ifndef FOLLOW_RENDER_HPP
#define FOLLOW_RENDER_HPP

#include <string>

#include "follow/scenario.hpp"

namespace follow {

/// Deterministic SVG: obstacles, reference path, FK trace of the solution
/// and arm snapshots at the layer configurations. Byte-identical for
/// identical inputs.
std::string render_svg(const Scenario& scenario, const RunOutput* solution);

void save_svg(const std::string& path, const std::string& svg);

}  // namespace follow

#endif
