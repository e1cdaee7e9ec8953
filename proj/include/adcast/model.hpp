#pragma once

#include "adcast/types.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace adcast {

/// Saturating Hill response p / (1 + (k/t)^h). h may be negative, which
/// turns the rise into a decay.
struct HillParams {
    double p = 1.0; // scale, > 0
    double k = 1.0; // half-point, > 0
    double h = 1.0; // exponent, != 0
};

/// Unimodal rise-and-decay curve
///   f(t) = p_m / [(1 + (k_a/t)^h_a) * (1 + (t/k_d)^h_d)]
/// with all five parameters strictly positive. This is the canonical
/// orientation used everywhere internally: the first factor activates
/// (rises with t), the second inhibits (decays with t). Surface-form
/// converters for the two printed variants are below.
struct BiHillParams {
    double p_m = 1.0;
    double k_a = 1.0;
    double h_a = 1.0;
    double k_d = 1.0;
    double h_d = 1.0;
};

/// Harmonic calibration: global scale alpha and additive per-bin error
/// floor e^beta. beta = -inf encodes a zero floor.
struct Calibration {
    double alpha = 1.0;
    double beta = -std::numeric_limits<double>::infinity();

    double error_floor() const { return std::exp(beta); }
};

inline void validate(const HillParams& p) {
    if (!(p.p > 0.0) || !(p.k > 0.0) || p.h == 0.0)
        throw std::invalid_argument("HillParams: require p > 0, k > 0, h != 0");
}

inline void validate(const BiHillParams& p) {
    if (!(p.p_m > 0.0) || !(p.k_a > 0.0) || !(p.h_a > 0.0) || !(p.k_d > 0.0) || !(p.h_d > 0.0))
        throw std::invalid_argument("BiHillParams: all five parameters must be > 0");
}

template <typename Scalar>
Scalar hill_eval(const HillParams& p, Scalar t) {
    if (!(t > Scalar(0))) throw std::domain_error("hill_eval: t must be > 0");
    using std::pow;
    return p.p / (Scalar(1) + pow(p.k / t, p.h));
}

template <typename Scalar>
Scalar bihill_eval(const BiHillParams& p, Scalar t) {
    if (!(t > Scalar(0))) throw std::domain_error("bihill_eval: t must be > 0");
    using std::pow;
    return p.p_m / ((Scalar(1) + pow(p.k_a / t, p.h_a)) * (Scalar(1) + pow(t / p.k_d, p.h_d)));
}

/// q(t) = q_max / (1 + K * t^H). The power-law Hill form the r(t) index
/// linearizes; H < 0 rises, H > 0 decays.
template <typename Scalar>
Scalar power_hill_eval(double q_max, double coeff, double expo, Scalar t) {
    if (!(t > Scalar(0))) throw std::domain_error("power_hill_eval: t must be > 0");
    using std::pow;
    return q_max / (Scalar(1) + coeff * pow(t, expo));
}

/// Curve sampled on the 1-based bin grid t = 1..horizon_bins.
ValueArray bihill_curve(const BiHillParams& p, Index horizon_bins);

/// BiHill shape rescaled so its maximum over the bin grid 1..horizon is 1.
/// The per-message predictor reuses this population shape with q_max as the
/// interpretable peak scale.
struct UnitPeakShape {
    BiHillParams params;
    Index peak_bin = 1;    // earliest grid argmax
    double peak_value = 1; // bihill_eval(params, peak_bin)

    double at(double t) const { return bihill_eval(params, t) / peak_value; }
};

UnitPeakShape normalize_shape(const BiHillParams& p, Index horizon_bins);

/// Per-bin prediction alpha * q_max * shape(t) + e^beta.
inline double ad_eval(const UnitPeakShape& shape, const Calibration& cal, double q_max, double t) {
    if (!(t > 0.0)) throw std::domain_error("ad_eval: t must be > 0");
    return cal.alpha * q_max * shape.at(t) + cal.error_floor();
}

/// Peak-proximity index r(t) = (q_max - q(t)) / q(t) with q_max = max(q).
/// Every bin is emitted; bins where the log-log regression is undefined
/// (q = 0, or r = 0 at the argmax) carry usable = false.
struct RPoint {
    Index bin = 0; // 1-based
    double r = 0.0;
    bool usable = false;
};

std::vector<RPoint> r_index(const ValueArray& q);

/// Earliest index (1-based) attaining the maximum of q.
Index argmax_bin(const ValueArray& q);

// ---------------------------------------------------------------------------
// Surface-form converters.
//
// The same factor can be printed two ways:
//   ratio form   1 / (1 + (k/t)^h)      (rises for h > 0)
//   power form   1 / (1 + k * t^h)      (rises for h < 0, decays for h > 0)
// The identities (k/t)^h = k^h t^-h give exact conversions. A full curve in
// ratio form needs a negative inhibitory exponent to decay, hence the
// BiHillRatioForm h_i below is negative for any valid unimodal curve.
// ---------------------------------------------------------------------------

struct HillRatioFactor {
    double k = 1.0;
    double h = 1.0;
}; // 1 / (1 + (k/t)^h)

struct HillPowerFactor {
    double k = 1.0;
    double h = 1.0;
}; // 1 / (1 + k * t^h)

inline HillPowerFactor to_power_form(const HillRatioFactor& f) {
    return {std::pow(f.k, f.h), -f.h};
}

inline HillRatioFactor to_ratio_form(const HillPowerFactor& f) {
    return {std::pow(f.k, -1.0 / f.h), -f.h};
}

/// Both factors in ratio form: p_m / [(1 + (k_a/t)^h_a)(1 + (k_i/t)^h_i)].
struct BiHillRatioForm {
    double p_m, k_a, h_a, k_i, h_i;
};

/// Both factors in power form: p_m / [(1 + k_a t^h_a)(1 + k_d t^h_d)],
/// activation h_a < 0, decay h_d > 0.
struct BiHillPowerForm {
    double p_m, k_a, h_a, k_d, h_d;
};

BiHillRatioForm to_ratio_form(const BiHillParams& p);
BiHillPowerForm to_power_form(const BiHillParams& p);
BiHillParams from_ratio_form(const BiHillRatioForm& f);
BiHillParams from_power_form(const BiHillPowerForm& f);

double bihill_ratio_eval(const BiHillRatioForm& f, double t);
double bihill_power_eval(const BiHillPowerForm& f, double t);

} // namespace adcast
