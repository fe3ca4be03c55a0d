#include "follow/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "follow/errors.hpp"

namespace follow {

namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Cell {
    std::size_t scenario_idx;
    std::size_t planner_idx;
    int repeat;
    std::uint64_t seed;
};

struct CellResult {
    Trace trace;
    bool feasible = false;
    double final_cost = kInf;
    double wall_seconds = 0.0;
};

double quantile(std::vector<double> v, double q) {
    if (v.empty()) return kInf;
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double t = pos - static_cast<double>(lo);
    return v[lo] * (1.0 - t) + v[hi] * t;
}

double mean(const std::vector<double>& v) {
    if (v.empty()) return kInf;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

/// best_frechet at or before the given iteration (so-far semantics).
double cost_at_iteration(const Trace& t, long long it) {
    double c = kInf;
    for (const auto& row : t) {
        if (row.iteration > it) break;
        c = row.best_frechet;
    }
    return c;
}

double cost_at_time(const Trace& t, double secs) {
    double c = kInf;
    for (const auto& row : t) {
        if (row.wall_seconds > secs) break;
        c = row.best_frechet;
    }
    return c;
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t seed_base, std::uint64_t cell_index) {
    std::uint64_t s = seed_base;
    (void)splitmix64(s);
    s ^= 0x9e3779b97f4a7c15ULL * (cell_index + 1);
    return splitmix64(s);
}

void run_bench(const BenchParams& params) {
    if (params.scenario_files.empty()) throw InputError("bench: no scenario files");
    if (params.planners.empty()) throw InputError("bench: no planners");
    fs::create_directories(params.out_dir);

    std::vector<Scenario> scenarios;
    for (const auto& f : params.scenario_files) scenarios.push_back(load_scenario(f));

    std::vector<Cell> cells;
    for (std::size_t si = 0; si < scenarios.size(); ++si)
        for (std::size_t pi = 0; pi < params.planners.size(); ++pi)
            for (int r = 0; r < params.repeats; ++r)
                cells.push_back(Cell{si, pi, r, cell_seed(params.seed_base, cells.size())});

    std::vector<CellResult> results(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const Cell& cell = cells[i];
            Scenario s = scenarios[cell.scenario_idx];
            s.seed = cell.seed;
            const std::string& planner = params.planners[cell.planner_idx];
            RunOutput out = planner == "frechet" ? run_frechet_planner(s)
                                                 : run_baseline_planner(s, planner);
            CellResult res;
            res.trace = out.trace;
            res.feasible = out.feasible;
            res.final_cost = out.feasible ? out.frechet_cost : kInf;
            res.wall_seconds = out.trace.empty() ? 0.0 : out.trace.back().wall_seconds;
            results[i] = std::move(res);
        }
    };

    int nthreads = params.threads > 0 ? params.threads
                                      : static_cast<int>(std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("FRECHET_FOLLOW_THREADS")) {
        const int c = std::atoi(cap);
        if (c > 0) nthreads = std::min(nthreads, c);
    }
    nthreads = std::max(1, std::min<int>(nthreads, static_cast<int>(cells.size())));
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    // Per-run trace CSVs plus an index.
    std::ofstream runs(fs::path(params.out_dir) / "runs.csv");
    runs << "run,scenario,planner,repeat,seed,feasible,final_cost,iterations,wall_seconds\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Cell& cell = cells[i];
        const std::string stem = fs::path(params.scenario_files[cell.scenario_idx]).stem();
        std::ostringstream name;
        name << stem << "__" << params.planners[cell.planner_idx] << "__r" << cell.repeat
             << ".csv";
        save_trace_csv(fs::path(params.out_dir) / name.str(), results[i].trace);
        runs << i << ',' << stem << ',' << params.planners[cell.planner_idx] << ','
             << cell.repeat << ',' << cell.seed << ',' << (results[i].feasible ? 1 : 0) << ','
             << fmt(results[i].final_cost) << ','
             << (results[i].trace.empty() ? 0 : results[i].trace.back().iteration) << ','
             << fmt(results[i].wall_seconds) << '\n';
    }

    // aggregate.csv: per planner and iteration over all scenarios x repeats.
    long long max_iter = 0;
    for (const auto& r : results)
        if (!r.trace.empty()) max_iter = std::max(max_iter, r.trace.back().iteration);
    std::ofstream agg(fs::path(params.out_dir) / "aggregate.csv");
    agg << "planner,iteration,mean,median,q25,q75,runs\n";
    for (std::size_t pi = 0; pi < params.planners.size(); ++pi) {
        for (long long it = 0; it <= max_iter; ++it) {
            std::vector<double> costs;
            for (std::size_t i = 0; i < cells.size(); ++i)
                if (cells[i].planner_idx == pi)
                    costs.push_back(cost_at_iteration(results[i].trace, it));
            agg << params.planners[pi] << ',' << it << ',' << fmt(mean(costs)) << ','
                << fmt(quantile(costs, 0.5)) << ',' << fmt(quantile(costs, 0.25)) << ','
                << fmt(quantile(costs, 0.75)) << ',' << costs.size() << '\n';
        }
    }

    // aggregate_walltime.csv: same statistics on a fixed wall-time grid.
    // Timing-dependent, hence kept out of aggregate.csv.
    double max_wall = 0.0;
    for (const auto& r : results) max_wall = std::max(max_wall, r.wall_seconds);
    std::ofstream aggw(fs::path(params.out_dir) / "aggregate_walltime.csv");
    aggw << "planner,t_seconds,mean,median,q25,q75,runs\n";
    const int buckets = 50;
    for (std::size_t pi = 0; pi < params.planners.size(); ++pi) {
        for (int bkt = 0; bkt <= buckets; ++bkt) {
            const double t = max_wall * static_cast<double>(bkt) / buckets;
            std::vector<double> costs;
            for (std::size_t i = 0; i < cells.size(); ++i)
                if (cells[i].planner_idx == pi)
                    costs.push_back(cost_at_time(results[i].trace, t));
            aggw << params.planners[pi] << ',' << fmt(t) << ',' << fmt(mean(costs)) << ','
                 << fmt(quantile(costs, 0.5)) << ',' << fmt(quantile(costs, 0.25)) << ','
                 << fmt(quantile(costs, 0.75)) << ',' << costs.size() << '\n';
        }
    }
}

}  // namespace follow
