#include "pansharp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pansharp/error.hpp"
#include "pansharp/statistics.hpp"

namespace pansharp {

namespace {

void require_same_shape(const Band& a, const Band& b, const char* op) {
  if (!a.same_shape(b))
    fail(ErrorKind::InvalidArgument, std::string(op) + ": bands differ in size");
}

}  // namespace

Histogram band_histogram(const Band& b) {
  Histogram h;
  for (double v : b.pixels()) ++h.counts[static_cast<std::size_t>(quantize_dn(v))];
  h.total = b.size();
  for (std::size_t i = 0; i < 256; ++i)
    h.probabilities[i] = static_cast<double>(h.counts[i]) / static_cast<double>(h.total);
  return h;
}

double std_dev(const Band& b) { return stats::std_dev(b.pixels()); }

double entropy(const Band& b) {
  const Histogram h = band_histogram(b);
  double en = 0.0;
  for (double p : h.probabilities)
    if (p > 0.0) en -= p * std::log2(p);
  return en;
}

double snr(const Band& f, const Band& m) {
  require_same_shape(f, m, "snr");
  double signal = 0.0;
  double noise = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double fv = f.pixels()[n];
    const double d = fv - m.pixels()[n];
    signal += fv * fv;
    noise += d * d;
  }
  if (noise == 0.0) fail(ErrorKind::IdenticalImages, "snr undefined for identical images");
  return std::sqrt(signal / noise);
}

double correlation(const Band& f, const Band& m) {
  require_same_shape(f, m, "correlation");
  if (stats::is_flat(f.pixels()) || stats::is_flat(m.pixels()))
    fail(ErrorKind::DegenerateStatistics, "correlation of a constant band");
  const double mf = stats::mean(f.pixels());
  const double mm = stats::mean(m.pixels());
  double sfm = 0.0;
  double sff = 0.0;
  double smm = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double df = f.pixels()[n] - mf;
    const double dm = m.pixels()[n] - mm;
    sfm += df * dm;
    sff += df * df;
    smm += dm * dm;
  }
  return std::clamp(sfm / (std::sqrt(sff) * std::sqrt(smm)), -1.0, 1.0);
}

double nrmse(const Band& f, const Band& m) {
  require_same_shape(f, m, "nrmse");
  double s = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double d = f.pixels()[n] - m.pixels()[n];
    s += d * d;
  }
  return std::sqrt(s / (static_cast<double>(f.size()) * 255.0 * 255.0));
}

Band luminance_band(const MultiImage& img) {
  if (img.band_count() != 3)
    fail(ErrorKind::NeedThreeBands, "luminance needs R, G, B bands, got " +
                                        std::to_string(img.band_count()));
  Band out(img.width(), img.height());
  const auto r = img.band(0).pixels();
  const auto g = img.band(1).pixels();
  const auto b = img.band(2).pixels();
  for (std::size_t n = 0; n < out.size(); ++n) {
    const auto [lo, hi] = std::minmax({r[n], g[n], b[n]});
    out.pixels()[n] = (hi + lo) / 2.0;
  }
  return out;
}

}  // namespace pansharp
