#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adcast/baseline.hpp"
#include "adcast/fitting.hpp"
#include "adcast/ingest.hpp"
#include "adcast/metrics.hpp"
#include "adcast/predictor.hpp"
#include "adcast/synth.hpp"
#include "adcast/types.hpp"

namespace adcast {

/// Events plus any release times found inline. Message ids must be free of
/// commas and quotes; the CSV reader does not unquote.
struct EventLog {
    std::vector<ForwardEvent> events;
    ReleaseMap releases;
};

/// Reads ".jsonl"/".json" as JSON lines {"id", "t"[, "release"]}, anything
/// else as CSV with header id,t[,release].
[[nodiscard]] EventLog read_events(const std::filesystem::path& path);

void write_events_jsonl(const std::filesystem::path& path,
                        std::span<const ForwardEvent> events);

[[nodiscard]] ReleaseMap read_releases_csv(const std::filesystem::path& path);
void write_releases_csv(const std::filesystem::path& path, const ReleaseMap& releases);

struct BinnedMeta {
    std::int64_t granularity_seconds = 0;
    Index horizon_bins = 0;
    std::int64_t n_messages = 0;
    std::int64_t dropped_pre_release = 0;
    std::int64_t excluded_post_horizon = 0;
    std::vector<std::string> message_ids;
};

/// Sparse CSV id,bin,count (zero bins omitted) plus a JSON sidecar carrying
/// the shape of the binning and the full id universe.
void write_binned_csv(const std::filesystem::path& path, const SeriesMap& series);
void write_binned_meta(const std::filesystem::path& path, const BinnedMeta& meta);

void write_average_csv(const std::filesystem::path& path, const AverageSeries& avg);
[[nodiscard]] AverageSeries read_average_csv(const std::filesystem::path& csv_path,
                                             const std::filesystem::path& meta_path);

void write_model_json(const std::filesystem::path& path, const ADModel& model);
[[nodiscard]] ADModel read_model_json(const std::filesystem::path& path);

void write_baseline_json(const std::filesystem::path& path, const LogGrowthProfile& profile);
[[nodiscard]] LogGrowthProfile read_baseline_json(const std::filesystem::path& path);

void write_fit_report_json(const std::filesystem::path& path, const FitReport& report);

struct PredictionRow {
    PredictionRecord rec;
    std::optional<double> real_total;
    std::optional<double> ape; ///< absent when real_total is 0 or unknown
};

/// CSV id,known_sum,predicted_total plus real_total,ape,peak_class columns
/// when ground truth is attached.
void write_predictions_csv(const std::filesystem::path& path,
                           std::span<const PredictionRow> rows, bool with_truth);

[[nodiscard]] std::vector<PredictionRow> read_predictions_csv(
    const std::filesystem::path& path);

void write_eval_json(const std::filesystem::path& path, const EvalSummary& summary);

void write_truth_csv(const std::filesystem::path& path, const SynthResult& result);
void write_truth_shape_csv(const std::filesystem::path& path, const SynthResult& result);

/// Shortest round-trip decimal form, used for every floating-point field in
/// CSV output.
[[nodiscard]] std::string format_double(double value);

[[nodiscard]] std::string_view peak_class_name(PeakClass c);

} // namespace adcast
