#include "adcast/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adcast {

namespace {

void check_sizes(const ValueArray& predicted, const ValueArray& real) {
    if (predicted.size() != real.size())
        throw std::invalid_argument("metrics: predicted and real sizes differ");
    if (predicted.size() == 0) throw std::invalid_argument("metrics: empty input");
}

double rms(const ValueArray& v) { return std::sqrt(v.square().mean()); }

} // namespace

ApeResult ape(const ValueArray& predicted, const ValueArray& real) {
    check_sizes(predicted, real);
    ApeResult out;
    out.values.reserve(static_cast<std::size_t>(real.size()));
    for (Index i = 0; i < real.size(); ++i) {
        if (real[i] == 0.0) {
            ++out.zero_real_count;
            continue;
        }
        out.values.push_back(std::abs(predicted[i] - real[i]) / real[i]);
    }
    return out;
}

double mape(const ValueArray& predicted, const ValueArray& real) {
    const ApeResult r = ape(predicted, real);
    if (r.values.empty()) throw std::invalid_argument("mape: no pairs with real > 0");
    double sum = 0.0;
    for (double v : r.values) sum += v;
    return sum / static_cast<double>(r.values.size());
}

double tic(const ValueArray& predicted, const ValueArray& real, TicVariant variant) {
    check_sizes(predicted, real);
    const double denom = rms(predicted) + rms(real);
    if (denom == 0.0) return 0.0;
    const double numer =
        variant == TicVariant::standard ? rms((predicted - real).eval()) : rms(predicted);
    return numer / denom;
}

std::vector<double> percentiles(std::vector<double> values, const std::vector<double>& levels) {
    if (values.empty()) throw std::invalid_argument("percentiles: empty input");
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    std::vector<double> out;
    out.reserve(levels.size());
    for (double level : levels) {
        if (level <= 0.0 || level > 100.0)
            throw std::invalid_argument("percentiles: level must be in (0, 100]");
        const auto rank = static_cast<std::size_t>(std::ceil(level / 100.0 * n));
        out.push_back(values[rank - 1]);
    }
    return out;
}

EvalSummary summarize(const ValueArray& predicted, const ValueArray& real) {
    ApeResult r = ape(predicted, real);
    if (r.values.empty()) throw std::invalid_argument("summarize: no pairs with real > 0");
    EvalSummary s;
    s.tic_standard = tic(predicted, real, TicVariant::standard);
    s.tic_as_written = tic(predicted, real, TicVariant::as_written);
    s.n_pairs = static_cast<std::int64_t>(r.values.size());
    s.zero_real_count = r.zero_real_count;
    double sum = 0.0;
    for (double v : r.values) sum += v;
    s.mape = sum / static_cast<double>(r.values.size());
    const auto p = percentiles(std::move(r.values), {50.0, 70.0, 90.0});
    s.ape_p50 = p[0];
    s.ape_p70 = p[1];
    s.ape_p90 = p[2];
    return s;
}

} // namespace adcast
