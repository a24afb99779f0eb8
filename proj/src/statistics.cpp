#include "pansharp/statistics.hpp"

#include <algorithm>
#include <cmath>

namespace pansharp::stats {

double mean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) { return covariance(x, x); }

double std_dev(std::span<const double> x) { return std::sqrt(variance(x)); }

double covariance(std::span<const double> x, std::span<const double> y) {
  const double mx = mean(x);
  const double my = mean(y);
  double s = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) s += (x[n] - mx) * (y[n] - my);
  return s / static_cast<double>(x.size());
}

bool is_flat(std::span<const double> x) {
  double scale = 1.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  return std_dev(x) <= 1e-10 * scale;
}

}  // namespace pansharp::stats
