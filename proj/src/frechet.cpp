#include "follow/frechet.hpp"

#include <algorithm>
#include <limits>

#include "follow/errors.hpp"

namespace follow {

FrechetResult discrete_frechet(std::span<const TaskPose> P, std::span<const TaskPose> Q,
                               const MetricWeights& w) {
    const std::size_t np = P.size();
    const std::size_t nq = Q.size();
    if (np == 0 || nq == 0) throw InputError("discrete_frechet requires nonempty inputs");

    // c(i,j) = max(d(i,j), min over predecessors), Eiter-Mannila.
    std::vector<double> c(np * nq);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return c[i * nq + j]; };
    for (std::size_t i = 0; i < np; ++i) {
        for (std::size_t j = 0; j < nq; ++j) {
            const double d = task_distance(P[i], Q[j], w);
            double best;
            if (i == 0 && j == 0) {
                best = d;
            } else if (i == 0) {
                best = std::max(at(0, j - 1), d);
            } else if (j == 0) {
                best = std::max(at(i - 1, 0), d);
            } else {
                best = std::max(std::min({at(i - 1, j - 1), at(i - 1, j), at(i, j - 1)}), d);
            }
            at(i, j) = best;
        }
    }

    FrechetResult res;
    res.cost = at(np - 1, nq - 1);

    // Backtrack along minimal predecessors; preference order keeps the
    // witness canonical: diagonal, then advance-P, then advance-Q.
    std::vector<std::pair<std::size_t, std::size_t>> rev;
    std::size_t i = np - 1, j = nq - 1;
    rev.emplace_back(i, j);
    while (i > 0 || j > 0) {
        if (i == 0) {
            --j;
        } else if (j == 0) {
            --i;
        } else {
            const double diag = at(i - 1, j - 1);
            const double up = at(i - 1, j);
            const double left = at(i, j - 1);
            const double m = std::min({diag, up, left});
            if (diag == m) {
                --i;
                --j;
            } else if (up == m) {
                --i;
            } else {
                --j;
            }
        }
        rev.emplace_back(i, j);
    }
    res.witness.steps.assign(rev.rbegin(), rev.rend());
    return res;
}

FrechetResult discrete_frechet(const Polyline& P, const Polyline& Q, const MetricWeights& w) {
    return discrete_frechet(std::span<const TaskPose>(P.points()),
                            std::span<const TaskPose>(Q.points()), w);
}

std::pair<std::size_t, std::size_t> bottleneck_index(const Coupling& witness,
                                                     std::span<const TaskPose> P,
                                                     std::span<const TaskPose> Q,
                                                     const MetricWeights& w) {
    if (witness.steps.empty()) throw InputError("empty coupling");
    if (witness.steps.front() != std::make_pair<std::size_t, std::size_t>(0, 0) ||
        witness.steps.back() != std::make_pair(P.size() - 1, Q.size() - 1))
        throw InputError("coupling endpoints do not match the sequences");
    for (std::size_t s = 1; s < witness.steps.size(); ++s) {
        const auto [pi, pj] = witness.steps[s - 1];
        const auto [ci, cj] = witness.steps[s];
        const bool ok = (ci == pi || ci == pi + 1) && (cj == pj || cj == pj + 1) &&
                        (ci + cj == pi + pj + 1 || ci + cj == pi + pj + 2);
        if (!ok) throw InputError("coupling is not monotone/contiguous");
    }
    // Steps are lexicographically increasing, so the first maximum realizes
    // the smallest-i-then-smallest-j tie rule.
    std::pair<std::size_t, std::size_t> best = witness.steps.front();
    double best_d = -1.0;
    for (const auto& [i, j] : witness.steps) {
        if (i >= P.size() || j >= Q.size()) throw InputError("coupling index out of range");
        const double d = task_distance(P[i], Q[j], w);
        if (d > best_d) {
            best_d = d;
            best = {i, j};
        }
    }
    return best;
}

}  // namespace follow
