#pragma once

#include <span>
#include <string>
#include <vector>

#include "adcast/fitting.hpp"
#include "adcast/model.hpp"
#include "adcast/types.hpp"

namespace adcast {

/// Everything needed to predict one message's total from its known window.
struct ADModel {
    UnitPeakShape shape;
    Calibration cal;
    std::int64_t granularity_seconds = 0;
    Index t_known_bins = 0;
    Index horizon_bins = 0;

    void validate() const;
};

enum class PeakClass { real_peak, fake_peak, unknown };

struct PredictionRecord {
    std::string message_id;
    std::int64_t q_max_observed = 0;
    std::int64_t known_sum = 0;
    double predicted_future_sum = 0.0;
    double predicted_total = 0.0;
    PeakClass peak_class = PeakClass::unknown;
};

struct QMaxKnown {
    std::int64_t q_max = 0;
    Index t_max = 0; ///< earliest bin attaining the maximum, 1-based
};

/// Maximum bin count over bins 1..t_known_bins and its earliest index.
[[nodiscard]] QMaxKnown q_max_known(const BinnedSeries& series, Index t_known_bins);

/// Sum of per-bin predictions alpha * q_max * shape + error_floor over the
/// given shape values, each bin floored at 0.
[[nodiscard]] double future_sum(std::span<const double> shape_tail, double alpha,
                                double error_floor, double q_max);

/// Predicts one message's horizon total: observed counts over the known
/// window plus the modeled future bins.
[[nodiscard]] PredictionRecord predict_message(const ADModel& model, const BinnedSeries& series);

/// Batch prediction with the shape curve evaluated once. Output ordered by
/// message id.
[[nodiscard]] std::vector<PredictionRecord> predict_all(const ADModel& model,
                                                        const SeriesMap& series);

/// Picks (alpha, beta) minimizing the mean APE of predicted vs real horizon
/// totals over the training series. Deterministic log-spaced grid over alpha
/// in [0.05, 20] and error floor in {0} + [1e-3, 1e2], then Nelder-Mead
/// refinement from the best cell. Messages with a zero real total are
/// excluded.
[[nodiscard]] Calibration calibrate(const BiHillParams& shape_params, const SeriesMap& training,
                                    Index t_known_bins, Index horizon_bins);

/// Ground-truth label: real_peak iff the earliest horizon-wide argmax falls
/// inside the known window. Evaluation-time only.
[[nodiscard]] PeakClass classify_peak(const BinnedSeries& series, Index t_known_bins,
                                      Index horizon_bins);

struct SplitResult {
    std::vector<std::string> train_ids;
    std::vector<std::string> test_ids;
};

/// Orders messages by (release time, id) and takes the earliest fraction as
/// training. With an empty release map the order falls back to message id.
[[nodiscard]] SplitResult chronological_split(const SeriesMap& series, const ReleaseMap& releases,
                                              double train_fraction);

struct TrainConfig {
    std::int64_t granularity_seconds = 0;
    Index t_known_bins = 0;
    Index horizon_bins = 0;
    double split_fraction = 0.75;

    void validate() const;
};

struct TrainResult {
    ADModel model;
    FitReport fit;
    SplitResult split;
    AverageSeries train_average;
    SeriesMap train_series;
    SeriesMap test_series;
};

/// Full training chain: normalize, bin, split chronologically, average the
/// training set, fit the activation-decay shape, calibrate (alpha, beta).
/// With an empty release map the events must already be release-relative.
[[nodiscard]] TrainResult train_pipeline(std::span<const ForwardEvent> events,
                                         const ReleaseMap& releases, const TrainConfig& config);

} // namespace adcast
