#ifndef FOLLOW_BENCH_HPP
#define FOLLOW_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "follow/scenario.hpp"

namespace follow {

struct BenchParams {
    std::vector<std::string> scenario_files;
    std::vector<std::string> planners;  // frechet | greedy-ik | vector-field
    int repeats = 1;
    std::uint64_t seed_base = 0;
    std::string out_dir;
    int threads = 0;  // 0: hardware concurrency, capped by FRECHET_FOLLOW_THREADS
};

/// Deterministic seed for one bench cell, independent of scheduling.
std::uint64_t cell_seed(std::uint64_t seed_base, std::uint64_t cell_index);

/// Run every scenario x planner x repeat cell (in parallel), write one trace
/// CSV per run plus runs.csv, aggregate.csv (per-iteration quantiles;
/// deterministic for a fixed seed base) and aggregate_walltime.csv
/// (per-wall-time quantiles; timing-dependent by nature).
void run_bench(const BenchParams& params);

}  // namespace follow

#endif
