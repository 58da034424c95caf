#pragma once

#include <cstddef>
#include <vector>

#include "sskg/errors.hpp"
#include "sskg/rng.hpp"

namespace sskg {

/// Gamma function for s > 0.
double gamma_fn(double s);

/// Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s),
/// s > 0, x >= 0. Series expansion below the s + 1 crossover, Lentz
/// continued fraction above it; relative error <= 1e-10 on s, x in (0, 50].
double regularized_lower_gamma(double s, double x);

/// Unregularized lower incomplete gamma gamma(s, x).
double lower_incomplete_gamma(double s, double x);

/// Standard normal quantile (inverse Phi) on (0, 1); rational seed plus one
/// Newton step against erf, relative error below 1e-13.
double normal_quantile(double p);

/// Shape/spread parameters of a Nakagami-m amplitude law; the squared
/// amplitude ("power") is then Gamma-distributed with mean w.
struct NakagamiSpec {
    double m;
    double w;
    NakagamiSpec(double m_, double w_);
};

/// CDF of the power (squared gain) at x >= 0.
double nakagami_power_cdf(const NakagamiSpec& spec, double x);

/// Complementary CDF of the power; equals 1 - gamma(m, m x / w) / Gamma(m).
double nakagami_power_ccdf(const NakagamiSpec& spec, double x);

/// Inverse power CDF by bracketing bisection: 200-iteration cap,
/// 1e-12 interval tolerance. u in [0, 1).
double power_inverse_cdf(const NakagamiSpec& spec, double u);

/// One power draw via inverse-transform sampling.
double sample_power(const NakagamiSpec& spec, Rng& rng);

/// Complementary CDF tabulated on a strictly increasing grid, values
/// nonincreasing in [0, 1]. Checked at construction.
struct GridCcdf {
    std::vector<double> xs;
    std::vector<double> vals;
    GridCcdf(std::vector<double> xs_, std::vector<double> vals_);
    std::size_t size() const { return xs.size(); }
};

/// CCDF of the power law evaluated on a caller-supplied increasing grid.
GridCcdf nakagami_grid_ccdf(const NakagamiSpec& spec, std::vector<double> grid);

/// Shared evaluation grid for an ordering check on a pair of laws: the
/// pointsPerLaw quantile levels (k - 0.5) / pointsPerLaw of *each* law,
/// plus 0 and the larger 1 - 1e-6 tail quantile, merged and deduplicated.
/// Quantile placement concentrates points where the CCDFs can cross.
std::vector<double> order_check_grid(const NakagamiSpec& a, const NakagamiSpec& b,
                                     std::size_t pointsPerLaw);

} // namespace sskg
