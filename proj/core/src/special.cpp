#include "sskg/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sskg {

namespace {

// Series for P(s, x), valid and fast for x < s + 1.
double lower_gamma_series(double s, double x) {
    double ap = s;
    double sum = 1.0 / s;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) {
            return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
        }
    }
    throw numeric_error("regularized_lower_gamma: series failed to converge");
}

// Modified Lentz continued fraction for Q(s, x), valid for x >= s + 1.
double upper_gamma_cf(double s, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) {
            return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
        }
    }
    throw numeric_error("regularized_lower_gamma: continued fraction failed to converge");
}

} // namespace

double gamma_fn(double s) {
    if (!(s > 0.0)) throw validation_error("gamma_fn: requires s > 0");
    return std::tgamma(s);
}

double regularized_lower_gamma(double s, double x) {
    if (!(s > 0.0)) throw validation_error("regularized_lower_gamma: requires s > 0");
    if (!(x >= 0.0)) throw validation_error("regularized_lower_gamma: requires x >= 0");
    if (x == 0.0) return 0.0;
    if (x < s + 1.0) return lower_gamma_series(s, x);
    return 1.0 - upper_gamma_cf(s, x);
}

double lower_incomplete_gamma(double s, double x) {
    return regularized_lower_gamma(s, x) * gamma_fn(s);
}

double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw validation_error("normal_quantile: requires p in (0, 1)");
    }
    // Acklam's rational approximation, then one Newton step on Phi.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double sqrt2 = 1.41421356237309504880;
    const double sqrt2pi = 2.50662827463100050242;
    const double cdf = 0.5 * std::erfc(-x / sqrt2);
    const double pdf = std::exp(-0.5 * x * x) / sqrt2pi;
    if (pdf > 0.0) x -= (cdf - p) / pdf;
    return x;
}

NakagamiSpec::NakagamiSpec(double m_, double w_) : m(m_), w(w_) {
    if (!(m > 0.0) || !std::isfinite(m)) {
        throw validation_error("NakagamiSpec: shape m must be positive and finite");
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
        throw validation_error("NakagamiSpec: spread w must be positive and finite");
    }
}

double nakagami_power_cdf(const NakagamiSpec& spec, double x) {
    if (!(x >= 0.0)) throw validation_error("nakagami_power_cdf: requires x >= 0");
    return regularized_lower_gamma(spec.m, spec.m * x / spec.w);
}

double nakagami_power_ccdf(const NakagamiSpec& spec, double x) {
    return 1.0 - nakagami_power_cdf(spec, x);
}

double power_inverse_cdf(const NakagamiSpec& spec, double u) {
    if (!(u >= 0.0) || !(u < 1.0)) {
        throw validation_error("power_inverse_cdf: requires u in [0, 1)");
    }
    if (u == 0.0) return 0.0;
    double lo = 0.0;
    double hi = spec.w;
    int expand = 0;
    while (nakagami_power_cdf(spec, hi) < u) {
        hi *= 2.0;
        if (++expand > 1100) {
            throw numeric_error("power_inverse_cdf: bracket expansion failed");
        }
    }
    // Relative width stop: quantiles deep in the left tail can be many
    // orders of magnitude below the spread, so an absolute cutoff loses
    // all significant digits there.
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (nakagami_power_cdf(spec, mid) < u) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double sample_power(const NakagamiSpec& spec, Rng& rng) {
    return power_inverse_cdf(spec, rng.uniform01());
}

GridCcdf::GridCcdf(std::vector<double> xs_, std::vector<double> vals_)
    : xs(std::move(xs_)), vals(std::move(vals_)) {
    if (xs.empty() || xs.size() != vals.size()) {
        throw validation_error("GridCcdf: grid and values must be non-empty and equal-sized");
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0 && !(xs[i] > xs[i - 1])) {
            throw validation_error("GridCcdf: grid must be strictly increasing");
        }
        if (!(vals[i] >= 0.0) || !(vals[i] <= 1.0)) {
            throw validation_error("GridCcdf: values must lie in [0, 1]");
        }
        if (i > 0 && vals[i] > vals[i - 1] + 1e-12) {
            throw validation_error("GridCcdf: values must be nonincreasing");
        }
    }
}

GridCcdf nakagami_grid_ccdf(const NakagamiSpec& spec, std::vector<double> grid) {
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        vals[i] = std::clamp(nakagami_power_ccdf(spec, grid[i]), 0.0, 1.0);
    }
    // Clip roundoff wobble so the monotonicity invariant holds exactly.
    for (std::size_t i = 1; i < vals.size(); ++i) vals[i] = std::min(vals[i], vals[i - 1]);
    return GridCcdf(std::move(grid), std::move(vals));
}

std::vector<double> order_check_grid(const NakagamiSpec& a, const NakagamiSpec& b,
                                     std::size_t pointsPerLaw) {
    if (pointsPerLaw == 0) throw validation_error("order_check_grid: needs at least one point");
    std::vector<double> grid;
    grid.reserve(2 * pointsPerLaw + 2);
    grid.push_back(0.0);
    for (const auto* spec : {&a, &b}) {
        for (std::size_t k = 1; k <= pointsPerLaw; ++k) {
            const double level = (static_cast<double>(k) - 0.5) / static_cast<double>(pointsPerLaw);
            grid.push_back(power_inverse_cdf(*spec, level));
        }
    }
    // Right endpoint leaves below 1e-6 tail mass under *both* laws.
    grid.push_back(std::max(power_inverse_cdf(a, 1.0 - 1e-6), power_inverse_cdf(b, 1.0 - 1e-6)));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

} // namespace sskg
