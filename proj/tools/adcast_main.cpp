#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "adcast/baseline.hpp"
#include "adcast/fitting.hpp"
#include "adcast/ingest.hpp"
#include "adcast/io.hpp"
#include "adcast/metrics.hpp"
#include "adcast/model.hpp"
#include "adcast/predictor.hpp"
#include "adcast/sweep.hpp"
#include "adcast/synth.hpp"
#include "adcast/types.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CorpusArgs {
    std::string events_path;
    std::string releases_path;
    bool zero_based = false;
};

void add_corpus_options(CLI::App* cmd, CorpusArgs& args) {
    cmd->add_option("--events", args.events_path, "Event log (.jsonl or .csv)")->required();
    cmd->add_option("--releases", args.releases_path, "Release times CSV (id,release)");
    cmd->add_flag("--zero-based", args.zero_based,
                  "Event timestamps are already relative to each release");
}

struct Corpus {
    adcast::SeriesMap series;
    adcast::ReleaseMap releases;
    std::int64_t dropped_pre_release = 0;
    std::int64_t rejected_events = 0;
    std::int64_t excluded_post_horizon = 0;
};

Corpus load_corpus(const CorpusArgs& args, std::int64_t granularity, adcast::Index horizon_bins) {
    adcast::EventLog log = adcast::read_events(args.events_path);
    if (!args.releases_path.empty())
        for (const auto& [id, release] : adcast::read_releases_csv(args.releases_path))
            log.releases[id] = release;
    if (args.zero_based) log.releases.clear();

    Corpus corpus;
    std::vector<adcast::ForwardEvent> normalized;
    std::vector<std::string> universe;
    if (log.releases.empty()) {
        if (!args.zero_based)
            throw std::runtime_error(
                "no release times found; pass --releases or --zero-based");
        normalized = std::move(log.events);
        std::set<std::string> ids;
        for (const adcast::ForwardEvent& ev : normalized) ids.insert(ev.message_id);
        universe.assign(ids.begin(), ids.end());
    } else {
        adcast::NormalizeResult norm = adcast::normalize(log.events, log.releases);
        corpus.dropped_pre_release = norm.dropped_pre_release;
        corpus.rejected_events = norm.rejected_events;
        normalized = std::move(norm.events);
        for (const auto& [id, release] : log.releases) universe.push_back(id);
    }

    adcast::BinResult binned = adcast::bin(normalized, granularity, horizon_bins, &universe);
    corpus.series = std::move(binned.series);
    corpus.excluded_post_horizon = binned.excluded_post_horizon;
    corpus.releases = std::move(log.releases);
    return corpus;
}

adcast::Index bins_of(std::int64_t seconds, std::int64_t granularity, const char* what) {
    const auto bins = static_cast<adcast::Index>(seconds / granularity);
    if (bins < 1)
        throw std::runtime_error(std::string(what) + " shorter than one bin at this granularity");
    return bins;
}

adcast::Method parse_method(const std::string& name) {
    if (name == "ad") return adcast::Method::ad;
    if (name == "baseline") return adcast::Method::baseline;
    return adcast::Method::both;
}

adcast::TicVariant parse_tic(const std::string& name) {
    return name == "as_written" ? adcast::TicVariant::as_written : adcast::TicVariant::standard;
}

void write_split_json(const fs::path& path, const adcast::SplitResult& split) {
    const json j{{"train_ids", split.train_ids}, {"test_ids", split.test_ids}};
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

json params_json(const adcast::BiHillParams& p) {
    return json{{"p_m", p.p_m}, {"k_a", p.k_a}, {"h_a", p.h_a}, {"k_d", p.k_d}, {"h_d", p.h_d}};
}

struct EvaluatedSet {
    std::vector<adcast::PredictionRow> rows;
    adcast::ValueArray predicted;
    adcast::ValueArray real;
};

EvaluatedSet attach_truth(std::vector<adcast::PredictionRecord> preds,
                          const adcast::SeriesMap& series, adcast::Index t_known_bins,
                          adcast::Index horizon_bins) {
    EvaluatedSet out;
    out.predicted = adcast::ValueArray(static_cast<adcast::Index>(preds.size()));
    out.real = adcast::ValueArray(static_cast<adcast::Index>(preds.size()));
    adcast::Index i = 0;
    for (adcast::PredictionRecord& rec : preds) {
        const adcast::BinnedSeries& s = series.at(rec.message_id);
        adcast::PredictionRow row;
        row.rec = std::move(rec);
        row.rec.peak_class = adcast::classify_peak(s, t_known_bins, horizon_bins);
        row.real_total = static_cast<double>(s.total());
        if (*row.real_total > 0.0)
            row.ape = std::abs(row.rec.predicted_total - *row.real_total) / *row.real_total;
        out.predicted[i] = row.rec.predicted_total;
        out.real[i] = *row.real_total;
        out.rows.push_back(std::move(row));
        ++i;
    }
    return out;
}

std::vector<adcast::PredictionRecord> baseline_predictions(const adcast::LogGrowthProfile& profile,
                                                           const adcast::SeriesMap& series) {
    std::vector<adcast::PredictionRecord> preds;
    preds.reserve(series.size());
    for (const auto& [id, s] : series) {
        adcast::PredictionRecord rec;
        rec.message_id = id;
        rec.q_max_observed = adcast::q_max_known(s, profile.t1_bins).q_max;
        for (adcast::Index b = 0; b < profile.t1_bins; ++b) rec.known_sum += s.counts[b];
        rec.predicted_total = adcast::baseline_predict(profile, s, profile.horizon_bins);
        rec.predicted_future_sum = rec.predicted_total - static_cast<double>(rec.known_sum);
        preds.push_back(std::move(rec));
    }
    return preds;
}

int run(int argc, char** argv) {
    CLI::App app{"Forecasts total message forwarding from an early observation window"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Config file with one [subcommand] section per command");

    // synth ------------------------------------------------------------
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic event corpus");
    std::string synth_preset = "wechat";
    std::int64_t synth_n = 1000;
    std::int64_t synth_horizon = 604800;
    std::int64_t synth_granularity = 0;
    std::uint64_t synth_seed = 1;
    const adcast::SynthConfig synth_defaults;
    double synth_mu = synth_defaults.q_max_log_mean;
    double synth_sigma = synth_defaults.q_max_log_sigma;
    double synth_floor = synth_defaults.noise_floor;
    double synth_spacing = -1.0;
    std::vector<double> synth_shape;
    std::string synth_out = "synth_out";
    synth_cmd->add_option("--preset", synth_preset, "Mean-curve preset")
        ->check(CLI::IsMember({"wechat", "weibo"}));
    synth_cmd->add_option("--n-messages", synth_n, "Messages to draw");
    synth_cmd->add_option("--horizon", synth_horizon, "Horizon in seconds");
    synth_cmd->add_option("--granularity", synth_granularity,
                          "Generator bin width in seconds (preset default)");
    synth_cmd->add_option("--seed", synth_seed, "RNG seed");
    synth_cmd->add_option("--mu", synth_mu, "Mean of ln(q_max)");
    synth_cmd->add_option("--sigma", synth_sigma, "Std dev of ln(q_max)");
    synth_cmd->add_option("--noise-floor", synth_floor, "Extra per-bin Poisson mean");
    synth_cmd->add_option("--spacing", synth_spacing, "Release spacing in seconds");
    synth_cmd
        ->add_option("--shape", synth_shape, "Mean curve parameters p_m,k_a,h_a,k_d,h_d")
        ->delimiter(',')
        ->expected(5);
    synth_cmd->add_option("--out-dir", synth_out, "Output directory");

    // ingest -----------------------------------------------------------
    auto* ingest_cmd = app.add_subcommand("ingest", "Bin an event log and average it");
    CorpusArgs ingest_corpus;
    std::int64_t ingest_granularity = 60;
    std::int64_t ingest_horizon = 604800;
    std::string ingest_out = "ingest_out";
    add_corpus_options(ingest_cmd, ingest_corpus);
    ingest_cmd->add_option("--granularity", ingest_granularity, "Bin width in seconds");
    ingest_cmd->add_option("--horizon", ingest_horizon, "Horizon in seconds");
    ingest_cmd->add_option("--out-dir", ingest_out, "Output directory");

    // fit ----------------------------------------------------------------
    auto* fit_cmd = app.add_subcommand("fit", "Fit the activation-decay curve to an average series");
    std::string fit_average = "average.csv";
    std::string fit_meta;
    std::string fit_route = "nonlinear_ls";
    std::string fit_out = "fit_out";
    fit_cmd->add_option("--average", fit_average, "Average series CSV from ingest")->required();
    fit_cmd->add_option("--meta", fit_meta, "Average series sidecar (default: <average>.meta.json)");
    fit_cmd->add_option("--route", fit_route, "Fitting route")
        ->check(CLI::IsMember({"nonlinear_ls", "r_index"}));
    fit_cmd->add_option("--out-dir", fit_out, "Output directory");

    // train --------------------------------------------------------------
    auto* train_cmd = app.add_subcommand("train", "Train predictors on the chronological split");
    CorpusArgs train_corpus;
    std::int64_t train_granularity = 60;
    std::int64_t train_t_known = 600;
    std::int64_t train_horizon = 604800;
    double train_split = 0.75;
    std::string train_method = "both";
    std::string train_out = "train_out";
    add_corpus_options(train_cmd, train_corpus);
    train_cmd->add_option("--granularity", train_granularity, "Bin width in seconds");
    train_cmd->add_option("--t-known", train_t_known, "Observation window in seconds");
    train_cmd->add_option("--horizon", train_horizon, "Horizon in seconds");
    train_cmd->add_option("--split", train_split, "Training fraction of the chronological split");
    train_cmd->add_option("--method", train_method, "Predictor family")
        ->check(CLI::IsMember({"ad", "baseline", "both"}));
    train_cmd->add_option("--out-dir", train_out, "Output directory");

    // predict --------------------------------------------------------------
    auto* predict_cmd = app.add_subcommand("predict", "Predict horizon totals for every message");
    CorpusArgs predict_corpus;
    std::string predict_model;
    std::string predict_baseline;
    std::string predict_out = "predict_out";
    add_corpus_options(predict_cmd, predict_corpus);
    predict_cmd->add_option("--model", predict_model, "Activation-decay model JSON");
    predict_cmd->add_option("--baseline", predict_baseline, "Baseline profile JSON");
    predict_cmd->add_option("--out-dir", predict_out, "Output directory");

    // evaluate -----------------------------------------------------------
    auto* eval_cmd = app.add_subcommand("evaluate", "Score predictions against observed totals");
    CorpusArgs eval_corpus;
    std::string eval_model;
    std::string eval_baseline;
    bool eval_test_only = false;
    double eval_split = 0.75;
    std::string eval_out = "eval_out";
    add_corpus_options(eval_cmd, eval_corpus);
    eval_cmd->add_option("--model", eval_model, "Activation-decay model JSON");
    eval_cmd->add_option("--baseline", eval_baseline, "Baseline profile JSON");
    eval_cmd->add_flag("--test-only", eval_test_only,
                       "Score only the chronological test split");
    eval_cmd->add_option("--split", eval_split, "Training fraction used with --test-only");
    eval_cmd->add_option("--out-dir", eval_out, "Output directory");

    // report ---------------------------------------------------------------
    auto* report_cmd = app.add_subcommand("report", "Collate a sweep into plot-ready CSVs");
    std::string report_sweep_dir;
    std::string report_out;
    report_cmd->add_option("--sweep-dir", report_sweep_dir, "Finished sweep directory")
        ->required();
    report_cmd->add_option("--out-dir", report_out, "Output directory (default: sweep dir)");

    // sweep ---------------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "Train and evaluate a (granularity, t_known) grid");
    CorpusArgs sweep_corpus;
    std::vector<std::int64_t> sweep_granularities;
    std::vector<std::int64_t> sweep_t_known;
    std::int64_t sweep_horizon = 604800;
    double sweep_split = 0.75;
    std::string sweep_method = "both";
    std::string sweep_tic = "standard";
    std::string sweep_preset;
    std::string sweep_out = "sweep_out";
    add_corpus_options(sweep_cmd, sweep_corpus);
    sweep_cmd->add_option("--granularity", sweep_granularities, "Bin widths in seconds")
        ->delimiter(',');
    sweep_cmd->add_option("--t-known", sweep_t_known, "Observation windows in seconds")
        ->delimiter(',');
    sweep_cmd->add_option("--preset", sweep_preset, "Granularity preset")
        ->check(CLI::IsMember({"wechat", "weibo"}));
    sweep_cmd->add_option("--horizon", sweep_horizon, "Horizon in seconds");
    sweep_cmd->add_option("--split", sweep_split, "Training fraction of the chronological split");
    sweep_cmd->add_option("--method", sweep_method, "Predictor family")
        ->check(CLI::IsMember({"ad", "baseline", "both"}));
    sweep_cmd->add_option("--tic-variant", sweep_tic, "Theil coefficient numerator")
        ->check(CLI::IsMember({"standard", "as_written"}));
    sweep_cmd->add_option("--out-dir", sweep_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    if (synth_cmd->parsed()) {
        adcast::SynthConfig cfg =
            synth_preset == "weibo" ? adcast::weibo_preset() : adcast::wechat_preset();
        if (synth_granularity > 0) cfg.granularity_seconds = synth_granularity;
        cfg.horizon_bins = static_cast<adcast::Index>(synth_horizon / cfg.granularity_seconds);
        cfg.n_messages = synth_n;
        cfg.rng_seed = synth_seed;
        cfg.q_max_log_mean = synth_mu;
        cfg.q_max_log_sigma = synth_sigma;
        cfg.noise_floor = synth_floor;
        if (synth_spacing >= 0.0) cfg.release_spacing_seconds = synth_spacing;
        if (!synth_shape.empty())
            cfg.shape = {synth_shape[0], synth_shape[1], synth_shape[2], synth_shape[3],
                         synth_shape[4]};

        const adcast::SynthResult result = adcast::generate(cfg);
        const fs::path out(synth_out);
        fs::create_directories(out);
        adcast::write_events_jsonl(out / "events.jsonl", result.events);
        adcast::write_releases_csv(out / "releases.csv", result.releases);
        adcast::write_truth_csv(out / "truth.csv", result);
        adcast::write_truth_shape_csv(out / "truth_shape.csv", result);
        const json meta{{"shape", params_json(cfg.shape)},
                        {"n_messages", cfg.n_messages},
                        {"horizon_bins", cfg.horizon_bins},
                        {"granularity_seconds", cfg.granularity_seconds},
                        {"q_max_log_mean", cfg.q_max_log_mean},
                        {"q_max_log_sigma", cfg.q_max_log_sigma},
                        {"noise_floor", cfg.noise_floor},
                        {"release_spacing_seconds", cfg.release_spacing_seconds},
                        {"rng_seed", cfg.rng_seed},
                        {"n_events", result.events.size()}};
        std::ofstream meta_out(out / "synth_meta.json", std::ios::binary);
        meta_out << meta.dump(2) << '\n';
        std::cout << "wrote " << result.events.size() << " events for " << cfg.n_messages
                  << " messages to " << out.string() << "\n";
        return 0;
    }

    if (ingest_cmd->parsed()) {
        const adcast::Index horizon_bins = bins_of(ingest_horizon, ingest_granularity, "horizon");
        const Corpus corpus = load_corpus(ingest_corpus, ingest_granularity, horizon_bins);
        const fs::path out(ingest_out);
        fs::create_directories(out);

        adcast::write_binned_csv(out / "binned.csv", corpus.series);
        adcast::BinnedMeta meta;
        meta.granularity_seconds = ingest_granularity;
        meta.horizon_bins = horizon_bins;
        meta.n_messages = static_cast<std::int64_t>(corpus.series.size());
        meta.dropped_pre_release = corpus.dropped_pre_release;
        meta.excluded_post_horizon = corpus.excluded_post_horizon;
        for (const auto& [id, s] : corpus.series) meta.message_ids.push_back(id);
        adcast::write_binned_meta(out / "binned_meta.json", meta);
        adcast::write_average_csv(out / "average.csv", adcast::average(corpus.series));
        std::cout << "binned " << meta.n_messages << " messages into " << horizon_bins
                  << " bins at " << ingest_granularity << " s\n";
        return 0;
    }

    if (fit_cmd->parsed()) {
        fs::path meta_path = fit_meta.empty()
                                 ? fs::path(fit_average).replace_extension(".meta.json")
                                 : fs::path(fit_meta);
        const adcast::AverageSeries avg = adcast::read_average_csv(fit_average, meta_path);
        const adcast::FitReport report = fit_route == "r_index"
                                             ? adcast::fit_bihill_via_r_index(avg.values)
                                             : adcast::fit_bihill(avg.values);
        const adcast::UnitPeakShape shape =
            adcast::normalize_shape(report.params, avg.values.size());

        const fs::path out(fit_out);
        fs::create_directories(out);
        json params = params_json(report.params);
        params["alpha"] = 1.0;
        params["beta"] = nullptr;
        params["granularity_seconds"] = avg.granularity_seconds;
        params["shape_peak_bin"] = shape.peak_bin;
        std::ofstream params_out(out / "params.json", std::ios::binary);
        params_out << params.dump(2) << '\n';
        adcast::write_fit_report_json(out / "fit_report.json", report);
        std::cout << "fit rss " << adcast::format_double(report.rss) << " in "
                  << report.iterations << " iterations\n";
        return 0;
    }

    if (train_cmd->parsed()) {
        const adcast::Index horizon_bins = bins_of(train_horizon, train_granularity, "horizon");
        const adcast::Index t_known_bins = bins_of(train_t_known, train_granularity, "t_known");
        const fs::path out(train_out);
        fs::create_directories(out);

        if (train_method == "ad" || train_method == "both") {
            adcast::EventLog log = adcast::read_events(train_corpus.events_path);
            if (!train_corpus.releases_path.empty())
                for (const auto& [id, release] :
                     adcast::read_releases_csv(train_corpus.releases_path))
                    log.releases[id] = release;
            if (train_corpus.zero_based) log.releases.clear();
            if (log.releases.empty() && !train_corpus.zero_based)
                throw std::runtime_error(
                    "no release times found; pass --releases or --zero-based");

            adcast::TrainConfig cfg{train_granularity, t_known_bins, horizon_bins, train_split};
            const adcast::TrainResult result =
                adcast::train_pipeline(log.events, log.releases, cfg);
            adcast::write_model_json(out / "model.json", result.model);
            adcast::write_fit_report_json(out / "fit_report.json", result.fit);
            write_split_json(out / "split.json", result.split);
            if (train_method == "both") {
                const adcast::LogGrowthProfile profile =
                    adcast::fit_baseline(result.train_series, t_known_bins, horizon_bins);
                adcast::write_baseline_json(out / "baseline.json", profile);
            }
        } else {
            Corpus corpus = load_corpus(train_corpus, train_granularity, horizon_bins);
            const adcast::SplitResult split =
                adcast::chronological_split(corpus.series, corpus.releases, train_split);
            adcast::SeriesMap& series = corpus.series;
            adcast::SeriesMap train_series;
            for (const std::string& id : split.train_ids)
                train_series.insert(series.extract(id));
            const adcast::LogGrowthProfile profile =
                adcast::fit_baseline(train_series, t_known_bins, horizon_bins);
            adcast::write_baseline_json(out / "baseline.json", profile);
            write_split_json(out / "split.json", split);
        }
        std::cout << "trained " << train_method << " at granularity " << train_granularity
                  << " s, window " << t_known_bins << " bins\n";
        return 0;
    }

    if (predict_cmd->parsed()) {
        if (predict_model.empty() && predict_baseline.empty())
            throw std::runtime_error("predict needs --model and/or --baseline");
        const fs::path out(predict_out);
        fs::create_directories(out);

        if (!predict_model.empty()) {
            const adcast::ADModel model = adcast::read_model_json(predict_model);
            const Corpus corpus =
                load_corpus(predict_corpus, model.granularity_seconds, model.horizon_bins);
            const std::vector<adcast::PredictionRecord> preds =
                adcast::predict_all(model, corpus.series);
            std::vector<adcast::PredictionRow> rows;
            rows.reserve(preds.size());
            for (const adcast::PredictionRecord& rec : preds) rows.push_back({rec, {}, {}});
            adcast::write_predictions_csv(out / "predictions_ad.csv", rows, false);
        }
        if (!predict_baseline.empty()) {
            const adcast::LogGrowthProfile profile =
                adcast::read_baseline_json(predict_baseline);
            const Corpus corpus =
                load_corpus(predict_corpus, profile.granularity_seconds, profile.horizon_bins);
            std::vector<adcast::PredictionRow> rows;
            for (const adcast::PredictionRecord& rec :
                 baseline_predictions(profile, corpus.series))
                rows.push_back({rec, {}, {}});
            adcast::write_predictions_csv(out / "predictions_baseline.csv", rows, false);
        }
        std::cout << "wrote predictions to " << out.string() << "\n";
        return 0;
    }

    if (eval_cmd->parsed()) {
        if (eval_model.empty() && eval_baseline.empty())
            throw std::runtime_error("evaluate needs --model and/or --baseline");
        const fs::path out(eval_out);
        fs::create_directories(out);

        std::optional<adcast::ADModel> model;
        std::optional<adcast::LogGrowthProfile> profile;
        if (!eval_model.empty()) model = adcast::read_model_json(eval_model);
        if (!eval_baseline.empty()) profile = adcast::read_baseline_json(eval_baseline);
        if (model && profile &&
            (model->granularity_seconds != profile->granularity_seconds ||
             model->horizon_bins != profile->horizon_bins ||
             model->t_known_bins != profile->t1_bins))
            throw std::runtime_error("model and baseline were trained on different grids");

        const std::int64_t granularity =
            model ? model->granularity_seconds : profile->granularity_seconds;
        const adcast::Index horizon_bins = model ? model->horizon_bins : profile->horizon_bins;
        const adcast::Index t_known_bins = model ? model->t_known_bins : profile->t1_bins;

        Corpus corpus = load_corpus(eval_corpus, granularity, horizon_bins);
        if (eval_test_only) {
            const adcast::SplitResult split =
                adcast::chronological_split(corpus.series, corpus.releases, eval_split);
            adcast::SeriesMap test;
            for (const std::string& id : split.test_ids)
                test.insert(corpus.series.extract(id));
            corpus.series = std::move(test);
        }

        if (model) {
            EvaluatedSet set = attach_truth(adcast::predict_all(*model, corpus.series),
                                            corpus.series, t_known_bins, horizon_bins);
            adcast::write_predictions_csv(out / "predictions_ad.csv", set.rows, true);
            adcast::write_eval_json(out / "eval_ad.json",
                                    adcast::summarize(set.predicted, set.real));
        }
        if (profile) {
            EvaluatedSet set = attach_truth(baseline_predictions(*profile, corpus.series),
                                            corpus.series, t_known_bins, horizon_bins);
            adcast::write_predictions_csv(out / "predictions_baseline.csv", set.rows, true);
            adcast::write_eval_json(out / "eval_baseline.json",
                                    adcast::summarize(set.predicted, set.real));
        }
        std::cout << "wrote evaluation to " << out.string() << "\n";
        return 0;
    }

    if (report_cmd->parsed()) {
        const fs::path sweep_dir(report_sweep_dir);
        adcast::write_report(sweep_dir, report_out.empty() ? sweep_dir : fs::path(report_out));
        std::cout << "wrote report for " << sweep_dir.string() << "\n";
        return 0;
    }

    if (sweep_cmd->parsed()) {
        adcast::ExperimentConfig cfg;
        if (sweep_granularities.empty()) {
            if (sweep_preset == "weibo")
                cfg.granularities = {30, 60, 120};
            else
                cfg.granularities = {60, 300, 600};
        } else {
            cfg.granularities = sweep_granularities;
        }
        cfg.t_known_values = sweep_t_known.empty()
                                 ? std::vector<std::int64_t>{600, 1200, 1800, 3600, 7200}
                                 : sweep_t_known;
        cfg.horizon_seconds = sweep_horizon;
        cfg.split_fraction = sweep_split;
        cfg.method = parse_method(sweep_method);
        cfg.tic_variant = parse_tic(sweep_tic);
        cfg.events_path = sweep_corpus.events_path;
        cfg.releases_path = sweep_corpus.releases_path;
        cfg.zero_based = sweep_corpus.zero_based;
        cfg.out_dir = sweep_out;

        const adcast::SweepOutcome outcome = adcast::run_sweep(std::move(cfg));
        std::cout << outcome.cells_run << " cells run, " << outcome.failures.size()
                  << " failed\n";
        return outcome.failures.empty() ? 0 : 1;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
