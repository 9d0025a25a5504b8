#include "rieszlab/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace rieszlab::fit {

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need >= 2 matched points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    LinearFit f;
    if (std::abs(den) < 1e-300) return f;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0.0;
    const double mean_y = sy / n;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (f.slope * x[i] + f.intercept);
        ss_res += e * e;
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

std::string to_string(LawKind k) {
    switch (k) {
        case LawKind::constant: return "constant";
        case LawKind::log_linear: return "log";
        case LawKind::power: return "power";
    }
    return "?";
}

TrendFit classify_trend(const std::vector<double>& params, const std::vector<double>& values,
                        double spread_tol, double r2_tol) {
    if (params.size() != values.size() || params.empty())
        throw std::invalid_argument("classify_trend: size mismatch");
    TrendFit t;
    double vmin = std::abs(values[0]), vmax = vmin, vsum = 0.0;
    for (double v : values) {
        const double a = std::abs(v);
        vmin = std::min(vmin, a);
        vmax = std::max(vmax, a);
        vsum += a;
    }
    const double mean = vsum / static_cast<double>(values.size());
    t.spread = mean > 0.0 ? (vmax - vmin) / mean : 0.0;
    if (values.size() < 2 || t.spread < spread_tol) {
        t.kind = LawKind::constant;
        t.intercept = mean;
        t.r2 = 1.0;
        return t;
    }
    std::vector<double> lx, ly_log, ly_pow;
    bool power_ok = true;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (!(params[i] > 0.0)) throw std::invalid_argument("classify_trend: params must be > 0");
        lx.push_back(std::log(params[i]));
        ly_log.push_back(values[i]);
        if (values[i] > 0.0)
            ly_pow.push_back(std::log(values[i]));
        else
            power_ok = false;
    }
    const LinearFit log_fit = linear_fit(lx, ly_log);
    LinearFit pow_fit;
    if (power_ok) pow_fit = linear_fit(lx, ly_pow);
    if (power_ok && pow_fit.r2 > log_fit.r2) {
        t.kind = LawKind::power;
        t.slope = pow_fit.slope;
        t.intercept = pow_fit.intercept;
        t.r2 = pow_fit.r2;
    } else {
        t.kind = LawKind::log_linear;
        t.slope = log_fit.slope;
        t.intercept = log_fit.intercept;
        t.r2 = log_fit.r2;
    }
    t.divergent = t.r2 > r2_tol && t.slope > 0.0;
    return t;
}

}  // namespace rieszlab::fit
