#pragma once

#include <vector>

namespace latadd {

double mean(const std::vector<double>& x);

/// Unbiased sample variance (denominator n-1); 0 for n < 2.
double variance(const std::vector<double>& x);

double stddev(const std::vector<double>& x);

/// Linear-interpolation quantile between order statistics (the common
/// "type 7" rule): for p in [0,1] and sorted x of length n, returns
/// x[g] + frac * (x[g+1] - x[g]) with g = floor((n-1) p).
double quantile_type7(std::vector<double> x, double p);

/// Inverse standard normal CDF (Wichura's AS241 rational approximation,
/// accurate to ~1e-15 over (0,1)).
double normal_quantile(double p);

/// Least-squares slope of y against x.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace latadd
