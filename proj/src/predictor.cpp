#include "adcast/predictor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "adcast/ingest.hpp"

namespace adcast {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> log_space(double lo, double hi, int n) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    const double l0 = std::log(lo);
    const double l1 = std::log(hi);
    for (int i = 0; i < n; ++i)
        out.push_back(std::exp(l0 + (l1 - l0) * static_cast<double>(i) / (n - 1)));
    return out;
}

/// Per-message APE as a function of (alpha, floor): |c + alpha*a + floor*b|.
struct ApeTerms {
    double a = 0.0; // q_max * future shape mass / real
    double b = 0.0; // future bin count / real
    double c = 0.0; // (known - real) / real
};

double mape_at(const std::vector<ApeTerms>& terms, double alpha, double floor) {
    double sum = 0.0;
    for (const ApeTerms& m : terms) sum += std::abs(m.c + alpha * m.a + floor * m.b);
    return sum / static_cast<double>(terms.size());
}

struct Simplex2D {
    std::array<std::array<double, 2>, 3> x;
    std::array<double, 3> f;
};

/// Nelder-Mead on (alpha, floor) with alpha > 0 and floor >= 0.
std::array<double, 2> refine(const std::vector<ApeTerms>& terms, double alpha0, double floor0) {
    auto eval = [&](const std::array<double, 2>& p) {
        if (p[0] <= 0.0 || p[1] < 0.0) return kInf;
        return mape_at(terms, p[0], p[1]);
    };

    Simplex2D s;
    s.x[0] = {alpha0, floor0};
    s.x[1] = {alpha0 * 1.05, floor0};
    s.x[2] = {alpha0, floor0 > 0.0 ? floor0 * 1.05 : 1e-3};
    for (int i = 0; i < 3; ++i) s.f[i] = eval(s.x[i]);

    auto order = [&] {
        std::array<int, 3> idx{0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return s.f[a] < s.f[b]; });
        Simplex2D t;
        for (int i = 0; i < 3; ++i) {
            t.x[i] = s.x[idx[i]];
            t.f[i] = s.f[idx[i]];
        }
        s = t;
    };

    for (int iter = 0; iter < 400; ++iter) {
        order();
        if (s.f[2] - s.f[0] < 1e-6) break;

        const std::array<double, 2> centroid{(s.x[0][0] + s.x[1][0]) / 2.0,
                                             (s.x[0][1] + s.x[1][1]) / 2.0};
        auto at = [&](double coef) {
            return std::array<double, 2>{centroid[0] + coef * (centroid[0] - s.x[2][0]),
                                         centroid[1] + coef * (centroid[1] - s.x[2][1])};
        };

        const auto reflected = at(1.0);
        const double fr = eval(reflected);
        if (fr < s.f[0]) {
            const auto expanded = at(2.0);
            const double fe = eval(expanded);
            if (fe < fr) {
                s.x[2] = expanded;
                s.f[2] = fe;
            } else {
                s.x[2] = reflected;
                s.f[2] = fr;
            }
        } else if (fr < s.f[1]) {
            s.x[2] = reflected;
            s.f[2] = fr;
        } else {
            const auto contracted = at(fr < s.f[2] ? 0.5 : -0.5);
            const double fc = eval(contracted);
            if (fc < std::min(fr, s.f[2])) {
                s.x[2] = contracted;
                s.f[2] = fc;
            } else {
                for (int i = 1; i < 3; ++i) {
                    s.x[i] = {(s.x[i][0] + s.x[0][0]) / 2.0, (s.x[i][1] + s.x[0][1]) / 2.0};
                    s.f[i] = eval(s.x[i]);
                }
            }
        }
    }
    order();
    return s.x[0];
}

} // namespace

void ADModel::validate() const {
    adcast::validate(shape.params);
    if (granularity_seconds < 1)
        throw std::invalid_argument("ADModel: granularity must be >= 1 second");
    if (t_known_bins < 1 || t_known_bins >= horizon_bins)
        throw std::invalid_argument("ADModel: need 1 <= t_known_bins < horizon_bins");
    if (shape.peak_bin < 1 || !(shape.peak_value > 0.0))
        throw std::invalid_argument("ADModel: shape peak is degenerate");
}

QMaxKnown q_max_known(const BinnedSeries& series, Index t_known_bins) {
    if (t_known_bins < 1 || t_known_bins > series.horizon_bins())
        throw std::invalid_argument("q_max_known: window outside series");
    QMaxKnown out{series.counts[0], 1};
    for (Index i = 1; i < t_known_bins; ++i) {
        if (series.counts[i] > out.q_max) {
            out.q_max = series.counts[i];
            out.t_max = i + 1;
        }
    }
    return out;
}

double future_sum(std::span<const double> shape_tail, double alpha, double error_floor,
                  double q_max) {
    double sum = 0.0;
    for (double s : shape_tail) sum += std::max(0.0, alpha * q_max * s + error_floor);
    return sum;
}

PredictionRecord predict_message(const ADModel& model, const BinnedSeries& series) {
    model.validate();
    if (series.horizon_bins() < model.t_known_bins)
        throw std::invalid_argument("predict_message: series shorter than the known window");

    PredictionRecord rec;
    rec.message_id = series.message_id;
    const QMaxKnown q = q_max_known(series, model.t_known_bins);
    rec.q_max_observed = q.q_max;
    for (Index i = 0; i < model.t_known_bins; ++i) rec.known_sum += series.counts[i];

    std::vector<double> tail;
    tail.reserve(static_cast<std::size_t>(model.horizon_bins - model.t_known_bins));
    for (Index t = model.t_known_bins + 1; t <= model.horizon_bins; ++t)
        tail.push_back(model.shape.at(static_cast<double>(t)));
    rec.predicted_future_sum = future_sum(tail, model.cal.alpha, model.cal.error_floor(),
                                          static_cast<double>(rec.q_max_observed));
    rec.predicted_total = static_cast<double>(rec.known_sum) + rec.predicted_future_sum;
    return rec;
}

std::vector<PredictionRecord> predict_all(const ADModel& model, const SeriesMap& series) {
    model.validate();
    const ValueArray curve = bihill_curve(model.shape.params, model.horizon_bins);
    std::vector<double> tail;
    tail.reserve(static_cast<std::size_t>(model.horizon_bins - model.t_known_bins));
    for (Index t = model.t_known_bins; t < model.horizon_bins; ++t)
        tail.push_back(curve[t] / model.shape.peak_value);

    std::vector<PredictionRecord> out;
    out.reserve(series.size());
    for (const auto& [id, s] : series) {
        if (s.horizon_bins() < model.t_known_bins)
            throw std::invalid_argument("predict_all: series shorter than the known window");
        PredictionRecord rec;
        rec.message_id = id;
        const QMaxKnown q = q_max_known(s, model.t_known_bins);
        rec.q_max_observed = q.q_max;
        for (Index i = 0; i < model.t_known_bins; ++i) rec.known_sum += s.counts[i];
        rec.predicted_future_sum = future_sum(tail, model.cal.alpha, model.cal.error_floor(),
                                              static_cast<double>(rec.q_max_observed));
        rec.predicted_total = static_cast<double>(rec.known_sum) + rec.predicted_future_sum;
        out.push_back(std::move(rec));
    }
    return out;
}

Calibration calibrate(const BiHillParams& shape_params, const SeriesMap& training,
                      Index t_known_bins, Index horizon_bins) {
    if (training.empty()) throw std::invalid_argument("calibrate: empty training set");
    if (t_known_bins < 1 || t_known_bins >= horizon_bins)
        throw std::invalid_argument("calibrate: need 1 <= t_known_bins < horizon_bins");

    const UnitPeakShape shape = normalize_shape(shape_params, horizon_bins);
    const ValueArray curve = bihill_curve(shape_params, horizon_bins);
    double tail_mass = 0.0;
    for (Index t = t_known_bins; t < horizon_bins; ++t)
        tail_mass += curve[t] / shape.peak_value;
    const double n_future = static_cast<double>(horizon_bins - t_known_bins);

    std::vector<ApeTerms> terms;
    terms.reserve(training.size());
    for (const auto& [id, s] : training) {
        if (s.horizon_bins() < horizon_bins)
            throw std::invalid_argument("calibrate: training series shorter than the horizon");
        std::int64_t real = 0;
        for (Index i = 0; i < horizon_bins; ++i) real += s.counts[i];
        if (real == 0) continue;
        std::int64_t known = 0;
        for (Index i = 0; i < t_known_bins; ++i) known += s.counts[i];
        const QMaxKnown q = q_max_known(s, t_known_bins);
        const double real_d = static_cast<double>(real);
        terms.push_back({static_cast<double>(q.q_max) * tail_mass / real_d, n_future / real_d,
                         (static_cast<double>(known) - real_d) / real_d});
    }
    if (terms.empty())
        throw std::invalid_argument("calibrate: every training message has a zero real total");

    const std::vector<double> alphas = log_space(0.05, 20.0, 40);
    std::vector<double> floors{0.0};
    for (double f : log_space(1e-3, 1e2, 40)) floors.push_back(f);

    double best_mape = kInf;
    double best_alpha = 1.0;
    double best_floor = 0.0;
    for (double alpha : alphas) {
        for (double floor : floors) {
            const double m = mape_at(terms, alpha, floor);
            if (m < best_mape) {
                best_mape = m;
                best_alpha = alpha;
                best_floor = floor;
            }
        }
    }

    const auto refined = refine(terms, best_alpha, best_floor);
    if (mape_at(terms, refined[0], refined[1]) < best_mape) {
        best_alpha = refined[0];
        best_floor = refined[1];
    }

    Calibration cal;
    cal.alpha = best_alpha;
    cal.beta = best_floor > 0.0 ? std::log(best_floor) : -kInf;
    return cal;
}

PeakClass classify_peak(const BinnedSeries& series, Index t_known_bins, Index horizon_bins) {
    if (t_known_bins < 1 || t_known_bins >= horizon_bins)
        throw std::invalid_argument("classify_peak: need 1 <= t_known_bins < horizon_bins");
    if (series.horizon_bins() < horizon_bins)
        throw std::invalid_argument("classify_peak: series shorter than the horizon");
    Index best = 0;
    for (Index i = 1; i < horizon_bins; ++i)
        if (series.counts[i] > series.counts[best]) best = i;
    return best + 1 <= t_known_bins ? PeakClass::real_peak : PeakClass::fake_peak;
}

SplitResult chronological_split(const SeriesMap& series, const ReleaseMap& releases,
                                double train_fraction) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("chronological_split: fraction must be in (0, 1)");
    if (series.size() < 2)
        throw std::invalid_argument("chronological_split: need at least 2 messages");

    std::vector<std::pair<double, std::string>> order;
    order.reserve(series.size());
    for (const auto& [id, s] : series) {
        double release = 0.0;
        if (!releases.empty()) {
            const auto it = releases.find(id);
            if (it == releases.end())
                throw std::invalid_argument("chronological_split: missing release time for " + id);
            release = it->second;
        }
        order.emplace_back(release, id);
    }
    std::sort(order.begin(), order.end());

    const auto n = static_cast<std::int64_t>(order.size());
    const std::int64_t n_train = std::clamp<std::int64_t>(
        std::llround(train_fraction * static_cast<double>(n)), 1, n - 1);

    SplitResult out;
    for (std::int64_t i = 0; i < n; ++i) {
        if (i < n_train)
            out.train_ids.push_back(order[static_cast<std::size_t>(i)].second);
        else
            out.test_ids.push_back(order[static_cast<std::size_t>(i)].second);
    }
    return out;
}

void TrainConfig::validate() const {
    if (granularity_seconds < 1)
        throw std::invalid_argument("TrainConfig: granularity must be >= 1 second");
    if (t_known_bins < 1 || t_known_bins >= horizon_bins)
        throw std::invalid_argument("TrainConfig: need 1 <= t_known_bins < horizon_bins");
    if (!(split_fraction > 0.0 && split_fraction < 1.0))
        throw std::invalid_argument("TrainConfig: split fraction must be in (0, 1)");
}

TrainResult train_pipeline(std::span<const ForwardEvent> events, const ReleaseMap& releases,
                           const TrainConfig& config) {
    config.validate();

    std::vector<ForwardEvent> normalized;
    std::vector<std::string> universe;
    if (releases.empty()) {
        normalized.assign(events.begin(), events.end());
        std::set<std::string> ids;
        for (const ForwardEvent& ev : normalized) ids.insert(ev.message_id);
        universe.assign(ids.begin(), ids.end());
    } else {
        NormalizeResult norm = normalize(events, releases);
        normalized = std::move(norm.events);
        for (const auto& [id, release] : releases) universe.push_back(id);
    }

    BinResult binned =
        bin(normalized, config.granularity_seconds, config.horizon_bins, &universe);

    TrainResult result;
    result.split = chronological_split(binned.series, releases, config.split_fraction);
    for (const std::string& id : result.split.train_ids)
        result.train_series.insert(binned.series.extract(id));
    result.test_series = std::move(binned.series);

    result.train_average = average(result.train_series);
    result.fit = fit_bihill(result.train_average.values);

    result.model.shape = normalize_shape(result.fit.params, config.horizon_bins);
    result.model.cal =
        calibrate(result.fit.params, result.train_series, config.t_known_bins, config.horizon_bins);
    result.model.granularity_seconds = config.granularity_seconds;
    result.model.t_known_bins = config.t_known_bins;
    result.model.horizon_bins = config.horizon_bins;
    result.model.validate();
    return result;
}

} // namespace adcast
