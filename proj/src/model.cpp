#include "adcast/model.hpp"

namespace adcast {

ValueArray bihill_curve(const BiHillParams& p, Index horizon_bins) {
    validate(p);
    if (horizon_bins < 1) throw std::invalid_argument("bihill_curve: horizon_bins must be >= 1");
    ValueArray curve(horizon_bins);
    // Scalar evaluation per bin so batch curves match single-point calls bitwise.
    for (Index i = 0; i < horizon_bins; ++i)
        curve[i] = bihill_eval(p, static_cast<double>(i + 1));
    return curve;
}

Index argmax_bin(const ValueArray& q) {
    if (q.size() == 0) throw std::invalid_argument("argmax_bin: empty series");
    Index best = 0;
    for (Index i = 1; i < q.size(); ++i)
        if (q[i] > q[best]) best = i;
    return best + 1;
}

UnitPeakShape normalize_shape(const BiHillParams& p, Index horizon_bins) {
    const ValueArray curve = bihill_curve(p, horizon_bins);
    const Index peak = argmax_bin(curve);
    return {p, peak, curve[peak - 1]};
}

std::vector<RPoint> r_index(const ValueArray& q) {
    if (q.size() == 0) throw std::invalid_argument("r_index: empty series");
    const double q_max = q.maxCoeff();
    if (!(q_max > 0.0)) throw std::invalid_argument("r_index: series maximum must be > 0");

    std::vector<RPoint> out;
    out.reserve(static_cast<std::size_t>(q.size()));
    for (Index i = 0; i < q.size(); ++i) {
        RPoint pt;
        pt.bin = i + 1;
        if (q[i] > 0.0) {
            pt.r = (q_max - q[i]) / q[i];
            pt.usable = q[i] < q_max; // argmax bins have r = 0, unusable in log space
        } else {
            pt.r = std::numeric_limits<double>::infinity();
            pt.usable = false;
        }
        out.push_back(pt);
    }
    return out;
}

BiHillRatioForm to_ratio_form(const BiHillParams& p) {
    validate(p);
    // (t/k_d)^h_d == (k_d/t)^-h_d, so the inhibitory ratio factor keeps the
    // half-point and flips the exponent sign.
    return {p.p_m, p.k_a, p.h_a, p.k_d, -p.h_d};
}

BiHillPowerForm to_power_form(const BiHillParams& p) {
    validate(p);
    return {p.p_m, std::pow(p.k_a, p.h_a), -p.h_a, std::pow(p.k_d, -p.h_d), p.h_d};
}

BiHillParams from_ratio_form(const BiHillRatioForm& f) {
    if (f.h_i >= 0.0)
        throw std::invalid_argument("from_ratio_form: inhibitory exponent must be negative for a unimodal curve");
    BiHillParams p{f.p_m, f.k_a, f.h_a, f.k_i, -f.h_i};
    validate(p);
    return p;
}

BiHillParams from_power_form(const BiHillPowerForm& f) {
    if (f.h_a >= 0.0 || f.h_d <= 0.0)
        throw std::invalid_argument("from_power_form: require h_a < 0 (activation) and h_d > 0 (decay)");
    BiHillParams p{f.p_m, std::pow(f.k_a, 1.0 / -f.h_a), -f.h_a, std::pow(f.k_d, -1.0 / f.h_d), f.h_d};
    validate(p);
    return p;
}

double bihill_ratio_eval(const BiHillRatioForm& f, double t) {
    if (!(t > 0.0)) throw std::domain_error("bihill_ratio_eval: t must be > 0");
    return f.p_m / ((1.0 + std::pow(f.k_a / t, f.h_a)) * (1.0 + std::pow(f.k_i / t, f.h_i)));
}

double bihill_power_eval(const BiHillPowerForm& f, double t) {
    if (!(t > 0.0)) throw std::domain_error("bihill_power_eval: t must be > 0");
    return f.p_m / ((1.0 + f.k_a * std::pow(t, f.h_a)) * (1.0 + f.k_d * std::pow(t, f.h_d)));
}

} // namespace adcast
