#pragma once

#include <span>

namespace pansharp::stats {

double mean(std::span<const double> x);
/// Population variance (divide by N).
double variance(std::span<const double> x);
double std_dev(std::span<const double> x);
/// Population covariance; spans must have equal length.
double covariance(std::span<const double> x, std::span<const double> y);

/// True when the spread of `x` is indistinguishable from rounding noise
/// relative to its magnitude. Exactly constant data always qualifies.
bool is_flat(std::span<const double> x);

}  // namespace pansharp::stats
