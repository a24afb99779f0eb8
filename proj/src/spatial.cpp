#include "pansharp/spatial.hpp"

#include <cmath>
#include <string>

#include "pansharp/error.hpp"
#include "pansharp/kernel.hpp"
#include "pansharp/spectral.hpp"

namespace pansharp {

double mean_gradient(const Band& b) {
  if (b.width() < 2 || b.height() < 2)
    fail(ErrorKind::BandTooSmall, "mean gradient needs at least 2x2 pixels");
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < b.height(); ++i)
    for (std::size_t j = 0; j + 1 < b.width(); ++j) {
      const double dx = b(i + 1, j) - b(i, j);
      const double dy = b(i, j + 1) - b(i, j);
      s += std::sqrt((dx * dx + dy * dy) / 2.0);
    }
  return s / static_cast<double>((b.height() - 1) * (b.width() - 1));
}

double sobel_gradient(const Band& b) {
  const auto [gx, gy] = sobel_gradients(b, BorderPolicy::ValidInterior);
  double s = 0.0;
  for (std::size_t n = 0; n < gx.size(); ++n) {
    const double x = gx.pixels()[n];
    const double y = gy.pixels()[n];
    s += std::sqrt((x * x + y * y) / 2.0);
  }
  return s / static_cast<double>(gx.size());
}

FccResult fcc(const Band& pan, const MultiImage& fused) {
  const Band pan_high = convolve(pan, laplacian3(), BorderPolicy::ValidInterior);
  FccResult r;
  for (const Band& b : fused.bands()) {
    if (!b.same_shape(pan)) fail(ErrorKind::InvalidArgument, "fcc: band size differs from PAN");
    r.per_band.push_back(correlation(pan_high, convolve(b, laplacian3(), BorderPolicy::ValidInterior)));
  }
  double s = 0.0;
  for (double v : r.per_band) s += v;
  r.mean = s / static_cast<double>(r.per_band.size());
  return r;
}

HpdiMode parse_hpdi_mode(std::string_view text) {
  if (text == "signed") return HpdiMode::Signed;
  if (text == "absolute") return HpdiMode::Absolute;
  fail(ErrorKind::InvalidArgument, "unknown HPDI mode '" + std::string(text) + "'");
}

std::string_view to_string(HpdiMode mode) { return mode == HpdiMode::Signed ? "signed" : "absolute"; }

HpdiResult hpdi_filtered(const Band& pan_highpass, const Band& fused_highpass, const HpdiVariant& variant) {
  if (!(variant.epsilon > 0.0)) fail(ErrorKind::InvalidArgument, "HPDI epsilon must be positive");
  if (!pan_highpass.same_shape(fused_highpass))
    fail(ErrorKind::InvalidArgument, "hpdi: filtered bands differ in size");
  double s = 0.0;
  std::size_t included = 0;
  for (std::size_t n = 0; n < pan_highpass.size(); ++n) {
    const double p = pan_highpass.pixels()[n];
    if (!(std::abs(p) > variant.epsilon)) continue;
    const double d = fused_highpass.pixels()[n] - p;
    s += variant.mode == HpdiMode::Signed ? d / p : std::abs(d) / std::abs(p);
    ++included;
  }
  if (included == 0)
    fail(ErrorKind::AllPixelsExcluded, "no PAN high-pass response exceeds epsilon");
  const double total = static_cast<double>(pan_highpass.size());
  return {s / static_cast<double>(included), (total - static_cast<double>(included)) / total};
}

HpdiResult hpdi(const Band& pan, const Band& fused_band, const HpdiVariant& variant) {
  if (!pan.same_shape(fused_band)) fail(ErrorKind::InvalidArgument, "hpdi: band size differs from PAN");
  return hpdi_filtered(convolve(pan, laplacian3(), BorderPolicy::ValidInterior),
                       convolve(fused_band, laplacian3(), BorderPolicy::ValidInterior), variant);
}

}  // namespace pansharp
