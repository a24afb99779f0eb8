#pragma once

#include <array>
#include <cstdint>

#include "pansharp/raster.hpp"

namespace pansharp {

/// 256-bin gray-level histogram after quantize_dn.
struct Histogram {
  std::array<std::uint64_t, 256> counts{};
  std::array<double, 256> probabilities{};
  std::uint64_t total = 0;
};

Histogram band_histogram(const Band& b);

/// Population standard deviation of the DN values.
double std_dev(const Band& b);

/// Shannon entropy in bits of the quantized gray-level distribution.
double entropy(const Band& b);

/// Signal-to-noise ratio of fused `f` against reference `m`.
/// Throws IdenticalImages when f == m everywhere.
double snr(const Band& f, const Band& m);

/// Pearson correlation. Throws DegenerateStatistics if either band is flat.
double correlation(const Band& f, const Band& m);

/// RMS difference normalised by the 8-bit range.
double nrmse(const Band& f, const Band& m);

/// HLS lightness (max + min) / 2 of an R, G, B image.
Band luminance_band(const MultiImage& img);

}  // namespace pansharp
