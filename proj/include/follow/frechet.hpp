#ifndef FOLLOW_FRECHET_HPP
#define FOLLOW_FRECHET_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "follow/geometry.hpp"

namespace follow {

/// Monotone coupling between two waypoint sequences: starts at (0,0), ends at
/// (|P|-1, |Q|-1), each step advances i, j, or both by exactly one.
struct Coupling {
    std::vector<std::pair<std::size_t, std::size_t>> steps;
};

struct FrechetResult {
    double cost = 0.0;
    Coupling witness;
};

/// Discrete Frechet distance between two pose sequences under the weighted
/// task-space metric, with the witness coupling that attains it. O(|P||Q|).
/// Backtracking prefers diagonal, then advancing P, then advancing Q, so the
/// witness is canonical.
FrechetResult discrete_frechet(std::span<const TaskPose> P, std::span<const TaskPose> Q,
                               const MetricWeights& w);

FrechetResult discrete_frechet(const Polyline& P, const Polyline& Q, const MetricWeights& w);

/// The coupling step with the largest pointwise distance; ties break toward
/// the smallest i, then smallest j.
std::pair<std::size_t, std::size_t> bottleneck_index(const Coupling& witness,
                                                     std::span<const TaskPose> P,
                                                     std::span<const TaskPose> Q,
                                                     const MetricWeights& w);

}  // namespace follow

#endif
