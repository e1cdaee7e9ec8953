#pragma once

#include <optional>
#include <vector>

#include "adcast/types.hpp"

namespace adcast {

/// Which ratio goes in the Theil inequality coefficient numerator.
enum class TicVariant {
    standard,   ///< RMS(predicted - real) in the numerator; 0 means a perfect fit.
    as_written, ///< RMS(predicted) in the numerator; a perfect fit scores 0.5.
};

struct ApeResult {
    std::vector<double> values;      ///< one APE fraction per pair with real > 0
    std::int64_t zero_real_count = 0; ///< pairs excluded because real == 0
};

struct EvalSummary {
    double mape = 0.0;
    double tic_standard = 0.0;
    double tic_as_written = 0.0;
    std::int64_t n_pairs = 0;
    std::int64_t zero_real_count = 0;
    double ape_p50 = 0.0;
    double ape_p70 = 0.0;
    double ape_p90 = 0.0;
};

/// Absolute percentage error |predicted - real| / real for each pair with
/// real > 0, as a fraction. Pairs with real == 0 are excluded and tallied.
[[nodiscard]] ApeResult ape(const ValueArray& predicted, const ValueArray& real);

/// Mean APE over the included pairs. Empty input after exclusion is an error.
[[nodiscard]] double mape(const ValueArray& predicted, const ValueArray& real);

/// Theil inequality coefficient. The denominator is RMS(predicted) + RMS(real)
/// in both variants; see TicVariant for the numerator.
[[nodiscard]] double tic(const ValueArray& predicted, const ValueArray& real,
                         TicVariant variant = TicVariant::standard);

/// Nearest-rank percentile: the ceil(level/100 * n)-th smallest value (1-based).
/// levels are percentages in (0, 100].
[[nodiscard]] std::vector<double> percentiles(std::vector<double> values,
                                              const std::vector<double>& levels);

/// MAPE, both TIC variants and APE percentiles (50/70/90) in one pass.
[[nodiscard]] EvalSummary summarize(const ValueArray& predicted, const ValueArray& real);

} // namespace adcast
