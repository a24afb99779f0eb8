#pragma once

#include <string_view>
#include <vector>

#include "pansharp/raster.hpp"

namespace pansharp {

/// Mean forward-difference gradient magnitude, sqrt((dx^2 + dy^2) / 2),
/// averaged over the (m - 1)(n - 1) pixels that have both neighbours.
double mean_gradient(const Band& b);

/// Mean Sobel magnitude sqrt((Gx^2 + Gy^2) / 2) over the valid interior,
/// divided by the number of interior pixels.
double sobel_gradient(const Band& b);

struct FccResult {
  std::vector<double> per_band;
  double mean = 0.0;
};

/// Correlation of Laplacian-filtered PAN with each Laplacian-filtered band.
FccResult fcc(const Band& pan, const MultiImage& fused);

enum class HpdiMode { Signed, Absolute };

struct HpdiVariant {
  HpdiMode mode = HpdiMode::Signed;
  double epsilon = 1e-6;
};

HpdiMode parse_hpdi_mode(std::string_view text);
std::string_view to_string(HpdiMode mode);

struct HpdiResult {
  double value = 0.0;
  /// Share of interior pixels dropped because |PAN high-pass| <= epsilon.
  double excluded_fraction = 0.0;
};

/// Mean relative deviation of the fused band's Laplacian response from the
/// PAN's, over pixels where the PAN response exceeds epsilon in magnitude.
HpdiResult hpdi(const Band& pan, const Band& fused_band, const HpdiVariant& variant = {});

/// Same statistic on already-filtered inputs. Lets callers construct
/// filtered-domain scenarios directly.
HpdiResult hpdi_filtered(const Band& pan_highpass, const Band& fused_highpass,
                         const HpdiVariant& variant = {});

}  // namespace pansharp
