#include "adcast/fitting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace adcast {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// 1 / (1 + exp(x)) without overflow.
double inv_one_plus_exp(double x) {
    if (x > 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

struct CurveTerms {
    double f = 0.0;       // curve value
    double ratio_u = 0.0; // u / (1 + u), activation factor share
    double ratio_v = 0.0; // v / (1 + v), decay factor share
};

CurveTerms eval_terms(const BiHillParams& p, double log_t) {
    const double lu = p.h_a * (std::log(p.k_a) - log_t);
    const double lv = p.h_d * (log_t - std::log(p.k_d));
    const double inv_a = inv_one_plus_exp(lu);
    const double inv_d = inv_one_plus_exp(lv);
    return {p.p_m * inv_a * inv_d, 1.0 - inv_a, 1.0 - inv_d};
}

double rss_of(const BiHillParams& p, const ValueArray& values, const ValueArray& log_t) {
    double rss = 0.0;
    for (Index i = 0; i < values.size(); ++i) {
        const double e = eval_terms(p, log_t[i]).f - values[i];
        rss += e * e;
    }
    return rss;
}

BiHillParams params_from_log(const Eigen::Matrix<double, 5, 1>& phi) {
    return {std::exp(phi[0]), std::exp(phi[1]), std::exp(phi[2]), std::exp(phi[3]),
            std::exp(phi[4])};
}

Eigen::Matrix<double, 5, 1> log_of_params(const BiHillParams& p) {
    Eigen::Matrix<double, 5, 1> phi;
    phi << std::log(p.p_m), std::log(p.k_a), std::log(p.h_a), std::log(p.k_d), std::log(p.h_d);
    return phi;
}

FitReport levenberg_marquardt(const BiHillParams& start, const ValueArray& values,
                              const ValueArray& log_t, const FitOptions& opt) {
    using Vec5 = Eigen::Matrix<double, 5, 1>;
    using Mat5 = Eigen::Matrix<double, 5, 5>;

    FitReport report;
    Vec5 phi = log_of_params(start);
    BiHillParams p = start;
    double rss = rss_of(p, values, log_t);
    report.rss_history.push_back(rss);

    const Index n = values.size();
    Eigen::MatrixXd jac(n, 5);
    Eigen::VectorXd resid(n);
    double lambda = opt.lambda_init;

    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        report.iterations = iter + 1;
        for (Index i = 0; i < n; ++i) {
            const double lt = log_t[i];
            const CurveTerms c = eval_terms(p, lt);
            resid[i] = c.f - values[i];
            const double lka_lt = std::log(p.k_a) - lt;
            const double lt_lkd = lt - std::log(p.k_d);
            jac(i, 0) = c.f;
            jac(i, 1) = -c.f * p.h_a * c.ratio_u;
            jac(i, 2) = -c.f * p.h_a * c.ratio_u * lka_lt;
            jac(i, 3) = c.f * p.h_d * c.ratio_v;
            jac(i, 4) = -c.f * p.h_d * c.ratio_v * lt_lkd;
        }
        const Mat5 jtj = jac.transpose() * jac;
        const Vec5 grad = jac.transpose() * resid;

        bool accepted = false;
        for (int attempt = 0; attempt < 120; ++attempt) {
            Mat5 damped = jtj;
            for (int d = 0; d < 5; ++d)
                damped(d, d) += lambda * std::max(jtj(d, d), 1e-12);
            Vec5 step = damped.ldlt().solve(-grad);
            step = step.cwiseMax(-opt.step_clamp).cwiseMin(opt.step_clamp);
            const Vec5 phi_new = phi + step;
            const BiHillParams p_new = params_from_log(phi_new);
            const double rss_new = rss_of(p_new, values, log_t);
            if (std::isfinite(rss_new) && rss_new < rss) {
                phi = phi_new;
                p = p_new;
                const double rel_drop = (rss - rss_new) / std::max(rss, 1e-300);
                rss = rss_new;
                report.rss_history.push_back(rss);
                lambda = std::max(lambda / opt.lambda_shrink, 1e-12);
                accepted = true;
                if (rel_drop < opt.rss_tol || step.cwiseAbs().maxCoeff() < opt.param_tol)
                    report.converged = true;
                break;
            }
            lambda *= opt.lambda_grow;
            if (lambda > 1e14) break;
        }
        if (!accepted) {
            report.converged = true; // no downhill step exists at this scale
            break;
        }
        if (report.converged) break;
    }

    report.params = p;
    report.rss = rss;
    return report;
}

std::vector<BiHillParams> grid_starts(double peak_value, double peak_bin) {
    const double m = peak_value;
    const double p = peak_bin;
    return {
        {4.0 * m, p, 1.0, p, 1.0},
        {4.0 * m, p / 2.0, 2.0, 2.0 * p, 2.0},
        {4.0 * m, p / 3.0, 0.7, 3.0 * p, 1.3},
        {2.0 * m, 2.0 * p / 3.0, 1.5, 4.0 * p, 2.5},
        {8.0 * m, p / 4.0, 3.0, 1.5 * p, 3.0},
    };
}

ValueArray log_bins(Index n) {
    ValueArray log_t(n);
    for (Index i = 0; i < n; ++i) log_t[i] = std::log(static_cast<double>(i + 1));
    return log_t;
}

} // namespace

std::optional<PowerLawFit> fit_power_law(std::span<const RPoint> points) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::int64_t n = 0;
    for (const RPoint& pt : points) {
        if (!pt.usable || !(pt.r > 0.0) || !std::isfinite(pt.r)) continue;
        const double x = std::log(static_cast<double>(pt.bin));
        const double y = std::log(pt.r);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return std::nullopt;
    const double nd = static_cast<double>(n);
    const double denom = nd * sxx - sx * sx;
    if (denom == 0.0) return std::nullopt;
    const double h = (nd * sxy - sx * sy) / denom;
    const double intercept = (sy - h * sx) / nd;

    double ss_res = 0.0, ss_tot = 0.0;
    const double y_mean = sy / nd;
    for (const RPoint& pt : points) {
        if (!pt.usable || !(pt.r > 0.0) || !std::isfinite(pt.r)) continue;
        const double x = std::log(static_cast<double>(pt.bin));
        const double y = std::log(pt.r);
        const double e = y - (intercept + h * x);
        ss_res += e * e;
        ss_tot += (y - y_mean) * (y - y_mean);
    }
    const double r2 = ss_tot == 0.0 ? (ss_res == 0.0 ? 1.0 : 0.0) : 1.0 - ss_res / ss_tot;
    return PowerLawFit{std::exp(intercept), h, r2, n};
}

RPowerLawFit fit_r_powerlaw(const ValueArray& values) {
    const std::vector<RPoint> points = r_index(values);
    RPowerLawFit out;
    out.peak_bin = argmax_bin(values);

    std::vector<RPoint> rising, decay;
    for (const RPoint& pt : points) {
        if (pt.bin < out.peak_bin)
            rising.push_back(pt);
        else if (pt.bin > out.peak_bin)
            decay.push_back(pt);
    }
    out.rising = fit_power_law(rising);
    out.decay = fit_power_law(decay);
    return out;
}

std::optional<BiHillParams> bihill_seed_from_r(const RPowerLawFit& fit, const ValueArray& values) {
    if (!fit.rising || !fit.decay) return std::nullopt;
    if (!(fit.rising->h < 0.0) || !(fit.decay->h > 0.0)) return std::nullopt;
    if (!(fit.rising->k > 0.0) || !(fit.decay->k > 0.0)) return std::nullopt;

    BiHillParams p;
    p.p_m = 4.0 * values.maxCoeff();
    p.h_a = -fit.rising->h;
    p.k_a = std::pow(fit.rising->k, -1.0 / fit.rising->h);
    p.h_d = fit.decay->h;
    p.k_d = std::pow(fit.decay->k, -1.0 / fit.decay->h);
    if (!std::isfinite(p.k_a) || !std::isfinite(p.k_d) || p.k_a <= 0.0 || p.k_d <= 0.0)
        return std::nullopt;
    if (!std::isfinite(p.p_m) || p.p_m <= 0.0) return std::nullopt;
    return p;
}

FitReport fit_bihill(const ValueArray& values, std::optional<BiHillParams> init,
                     const FitOptions& options) {
    if (values.size() < 5) throw std::invalid_argument("fit_bihill: need at least 5 bins");
    const double peak_value = values.maxCoeff();
    if (!(peak_value > 0.0)) throw std::invalid_argument("fit_bihill: all values are zero");

    const ValueArray log_t = log_bins(values.size());

    std::vector<BiHillParams> starts;
    if (init) {
        validate(*init);
        starts.push_back(*init);
    } else {
        const RPowerLawFit rfit = fit_r_powerlaw(values);
        if (const auto seed = bihill_seed_from_r(rfit, values)) starts.push_back(*seed);
        const double peak_bin = static_cast<double>(argmax_bin(values));
        for (const BiHillParams& g : grid_starts(peak_value, peak_bin)) starts.push_back(g);
    }

    FitReport best;
    best.rss = kInf;
    int index = 0;
    for (const BiHillParams& start : starts) {
        FitReport candidate = levenberg_marquardt(start, values, log_t, options);
        candidate.route = FitRoute::nonlinear_ls;
        candidate.start_index = index++;
        if (candidate.rss < best.rss) best = std::move(candidate);
    }
    if (!std::isfinite(best.rss)) throw std::runtime_error("fit_bihill: every start diverged");
    return best;
}

FitReport fit_bihill_via_r_index(const ValueArray& values) {
    const RPowerLawFit rfit = fit_r_powerlaw(values);
    if (!rfit.rising || !rfit.decay)
        throw std::runtime_error(
            "fit_bihill_via_r_index: need two usable remainder points on each side of the peak");
    if (!(rfit.rising->h < 0.0) || !(rfit.decay->h > 0.0))
        throw std::runtime_error(
            "fit_bihill_via_r_index: branch exponents do not bracket a peak");

    const double q_max = values.maxCoeff();
    const BiHillPowerForm power{q_max, rfit.rising->k, rfit.rising->h, rfit.decay->k,
                                rfit.decay->h};
    FitReport report;
    report.params = from_power_form(power);
    report.route = FitRoute::r_index_regression;
    report.converged = true;
    report.rss = rss_of(report.params, values, log_bins(values.size()));
    report.rss_history.push_back(report.rss);
    return report;
}

} // namespace adcast
