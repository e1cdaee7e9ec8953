#pragma once

#include <optional>
#include <span>
#include <vector>

#include "adcast/model.hpp"
#include "adcast/types.hpp"

namespace adcast {

/// Least-squares fit of r = k * t^h on the log-log scale.
struct PowerLawFit {
    double k = 0.0;
    double h = 0.0;
    double r2 = 0.0;
    std::int64_t n_points = 0;
};

/// Power-law fits of the remainder index on both sides of the peak.
/// A side with fewer than two usable points is absent.
struct RPowerLawFit {
    std::optional<PowerLawFit> rising;
    std::optional<PowerLawFit> decay;
    Index peak_bin = 0;
};

enum class FitRoute {
    r_index_regression, ///< parameters assembled from the remainder-index branch fits
    nonlinear_ls,       ///< damped least squares on the curve itself
};

struct FitOptions {
    int max_iterations = 10000;
    double rss_tol = 1e-10;   ///< relative RSS change on an accepted step
    double param_tol = 1e-8;  ///< max log-parameter step size
    double lambda_init = 1e-3;
    double lambda_shrink = 3.0;
    double lambda_grow = 2.0;
    double step_clamp = 20.0; ///< per-component bound on log-parameter steps
};

struct FitReport {
    BiHillParams params;
    double rss = 0.0;
    int iterations = 0;
    bool converged = false;
    FitRoute route = FitRoute::nonlinear_ls;
    int start_index = 0;             ///< which candidate start won (0 = remainder-seeded)
    std::vector<double> rss_history; ///< RSS after each accepted step of the winner
};

/// OLS of ln r on ln t over the usable points. Needs at least two points.
[[nodiscard]] std::optional<PowerLawFit> fit_power_law(std::span<const RPoint> points);

/// Splits the remainder index at the earliest peak and fits each side.
[[nodiscard]] RPowerLawFit fit_r_powerlaw(const ValueArray& values);

/// Start point for the damped least-squares fit, derived from the
/// remainder-index branch fits with the scale heuristic 4 * max(values).
/// Absent when either branch is missing or has the wrong exponent sign.
[[nodiscard]] std::optional<BiHillParams> bihill_seed_from_r(const RPowerLawFit& fit,
                                                             const ValueArray& values);

/// Damped least-squares fit of the activation-decay curve to values[i] at
/// t = i + 1, positivity kept via log-parameter steps. Without init, runs the
/// remainder-seeded start plus a fixed grid of starts and keeps the lowest
/// final RSS (earliest start wins ties).
[[nodiscard]] FitReport fit_bihill(const ValueArray& values,
                                   std::optional<BiHillParams> init = std::nullopt,
                                   const FitOptions& options = {});

/// Assembles activation-decay parameters directly from the remainder-index
/// branch fits, with the observed maximum as the scale. No refinement.
/// Throws when either branch cannot be fitted.
[[nodiscard]] FitReport fit_bihill_via_r_index(const ValueArray& values);

} // namespace adcast
