#pragma once

#include <string>
#include <vector>

namespace rieszlab::fit {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares y = slope * x + intercept with coefficient of
/// determination.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

enum class LawKind { constant, log_linear, power };

std::string to_string(LawKind k);

/// Fitted growth law of values against a positive parameter.
struct TrendFit {
    LawKind kind = LawKind::constant;
    double slope = 0.0;      // in log(param) or log-log coordinates
    double intercept = 0.0;
    double r2 = 0.0;
    double spread = 0.0;     // (max-min)/mean of |values|
    bool divergent = false;  // growing beyond the spread tolerance
};

/// Classifies values(param): constant when the relative spread stays below
/// spread_tol; otherwise the better of y ~ a + b log(param) and
/// log y ~ a + b log(param), flagged divergent when the fit is solid
/// (R^2 > r2_tol) and growing.
TrendFit classify_trend(const std::vector<double>& params, const std::vector<double>& values,
                        double spread_tol = 0.05, double r2_tol = 0.99);

}  // namespace rieszlab::fit
