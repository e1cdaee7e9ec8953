#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "adcast/metrics.hpp"
#include "adcast/types.hpp"

namespace adcast {

enum class Method { ad, baseline, both };

/// One sweep: a grid of (granularity, t_known) cells trained and evaluated on
/// a chronological split of one event log.
struct ExperimentConfig {
    std::vector<std::int64_t> granularities;   ///< seconds
    std::vector<std::int64_t> t_known_values;  ///< seconds
    std::int64_t horizon_seconds = 604800;     ///< 7 days
    double split_fraction = 0.75;
    Method method = Method::both;
    TicVariant tic_variant = TicVariant::standard;
    std::filesystem::path events_path;
    std::filesystem::path releases_path; ///< optional; empty means inline or zero-based
    std::filesystem::path out_dir;
    bool zero_based = false; ///< event timestamps already release-relative

    /// Sorts and dedupes the axes, then checks every invariant.
    void normalize_and_validate();
};

struct CellFailure {
    std::int64_t granularity_seconds = 0;
    std::int64_t t_known_seconds = 0;
    std::string method;
    std::string error;
};

struct SweepOutcome {
    std::int64_t cells_run = 0;
    std::vector<CellFailure> failures;
};

/// Trains and evaluates every cell, writing per-cell artifacts, the
/// long-format sweep_results.csv, and a failures.json manifest into out_dir.
/// Cell failures are recorded and the sweep continues.
SweepOutcome run_sweep(ExperimentConfig config);

/// Collates a finished sweep directory into plot-ready report.csv (metric
/// curves) and scatter.csv (per-message predicted vs real).
void write_report(const std::filesystem::path& sweep_dir,
                  const std::filesystem::path& out_dir);

} // namespace adcast
