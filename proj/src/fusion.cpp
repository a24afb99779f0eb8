#include "pansharp/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pansharp/error.hpp"
#include "pansharp/kernel.hpp"
#include "pansharp/statistics.hpp"

namespace pansharp {

namespace {

constexpr double kRatioFloor = 1e-6;

Band with_pixels(const Band& shape, std::vector<double> px) {
  return Band(shape.width(), shape.height(), std::move(px), 8);
}

// F_k = M_k + gain_k * detail
MultiImage inject(const MultiImage& ms, const Band& detail, const std::vector<double>& gains) {
  std::vector<Band> out;
  for (std::size_t k = 0; k < ms.band_count(); ++k) {
    const auto m = ms.band(k).pixels();
    std::vector<double> px(m.size());
    for (std::size_t n = 0; n < px.size(); ++n) px[n] = m[n] + gains[k] * detail.pixels()[n];
    out.push_back(with_pixels(ms.band(k), std::move(px)));
  }
  return MultiImage(std::move(out), ms.labels());
}

Band difference(const Band& a, const Band& b) {
  std::vector<double> px(a.size());
  for (std::size_t n = 0; n < px.size(); ++n) px[n] = a.pixels()[n] - b.pixels()[n];
  return with_pixels(a, std::move(px));
}

void require_three_bands(const MultiImage& ms, FusionId id) {
  if (ms.band_count() < 3)
    fail(ErrorKind::NeedThreeBands, std::string(to_string(id)) + " needs at least 3 bands, got " +
                                        std::to_string(ms.band_count()));
}

void require_spread(const Band& b, const char* what) {
  if (stats::is_flat(b.pixels())) fail(ErrorKind::DegenerateStatistics, std::string(what) + " has zero variance");
}

MultiImage fuse_hfa(const MultiImage& ms, const Band& pan, const FusionParams& p) {
  const Band detail = difference(pan, lowpass_box(pan, p.lowpass_size));
  return inject(ms, detail, std::vector<double>(ms.band_count(), 1.0));
}

MultiImage fuse_hfm(const MultiImage& ms, const Band& pan, const FusionParams& p) {
  const Band low = lowpass_box(pan, p.lowpass_size);
  std::vector<double> ratio(pan.size());
  for (std::size_t n = 0; n < ratio.size(); ++n)
    ratio[n] = pan.pixels()[n] / std::max(low.pixels()[n], kRatioFloor);
  std::vector<Band> out;
  for (std::size_t k = 0; k < ms.band_count(); ++k) {
    const auto m = ms.band(k).pixels();
    std::vector<double> px(m.size());
    for (std::size_t n = 0; n < px.size(); ++n) px[n] = m[n] * ratio[n];
    out.push_back(with_pixels(ms.band(k), std::move(px)));
  }
  return MultiImage(std::move(out), ms.labels());
}

// Linear IHS: replacing I in the forward transform and inverting reduces to
// adding (I' - I) to every band.
MultiImage fuse_ihs(const MultiImage& ms, const Band& pan) {
  require_three_bands(ms, FusionId::IHS);
  std::vector<double> px(pan.size(), 0.0);
  for (const Band& b : ms.bands())
    for (std::size_t n = 0; n < px.size(); ++n) px[n] += b.pixels()[n];
  for (double& v : px) v /= static_cast<double>(ms.band_count());
  const Band intensity = with_pixels(pan, std::move(px));
  const Band matched = mean_variance_match(pan, intensity);
  return inject(ms, difference(matched, intensity), std::vector<double>(ms.band_count(), 1.0));
}

MultiImage fuse_rvs(const MultiImage& ms, const Band& pan, const FusionParams& p) {
  const Band low = lowpass_box(pan, p.lowpass_size);
  require_spread(low, "low-passed PAN");
  const double var_low = stats::variance(low.pixels());
  const double mean_low = stats::mean(low.pixels());
  std::vector<Band> out;
  for (const Band& m : ms.bands()) {
    const double slope = stats::covariance(m.pixels(), low.pixels()) / var_low;
    const double intercept = stats::mean(m.pixels()) - slope * mean_low;
    std::vector<double> px(pan.size());
    for (std::size_t n = 0; n < px.size(); ++n) px[n] = intercept + slope * pan.pixels()[n];
    out.push_back(with_pixels(m, std::move(px)));
  }
  return MultiImage(std::move(out), ms.labels());
}

MultiImage fuse_pca(const MultiImage& ms, const Band& pan) {
  require_three_bands(ms, FusionId::PCA);
  const std::size_t k = ms.band_count();
  const std::size_t n = pan.size();
  Eigen::MatrixXd cov(k, k);
  std::vector<double> means(k);
  for (std::size_t a = 0; a < k; ++a) means[a] = stats::mean(ms.band(a).pixels());
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b)
      cov(a, b) = cov(b, a) = stats::covariance(ms.band(a).pixels(), ms.band(b).pixels());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success)
    fail(ErrorKind::DegenerateStatistics, "band covariance eigen-decomposition failed");
  // Eigen sorts ascending; the first principal axis is the last column.
  Eigen::VectorXd axis = solver.eigenvectors().col(static_cast<Eigen::Index>(k - 1));
  Eigen::Index largest = 0;
  for (Eigen::Index a = 1; a < axis.size(); ++a)
    if (std::abs(axis(a)) > std::abs(axis(largest))) largest = a;
  if (axis(largest) < 0) axis = -axis;

  std::vector<double> pc1(n, 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    const auto m = ms.band(a).pixels();
    for (std::size_t p = 0; p < n; ++p) pc1[p] += axis(static_cast<Eigen::Index>(a)) * (m[p] - means[a]);
  }
  const Band component = with_pixels(pan, std::move(pc1));
  const Band matched = mean_variance_match(pan, component);
  std::vector<double> gains(k);
  for (std::size_t a = 0; a < k; ++a) gains[a] = axis(static_cast<Eigen::Index>(a));
  return inject(ms, difference(matched, component), gains);
}

MultiImage fuse_ef(const MultiImage& ms, const Band& pan, const FusionParams& p) {
  const Band edges = convolve(pan, laplacian3(), BorderPolicy::ReplicateEdge);
  return inject(ms, edges, std::vector<double>(ms.band_count(), p.ef_beta));
}

MultiImage fuse_sf(const MultiImage& ms, const Band& pan, const FusionParams& p) {
  const Band low = lowpass_box(pan, p.lowpass_size);
  require_spread(low, "low-passed PAN");
  const double var_low = stats::variance(low.pixels());
  std::vector<double> gains;
  for (const Band& m : ms.bands()) gains.push_back(stats::covariance(m.pixels(), low.pixels()) / var_low);
  return inject(ms, difference(pan, low), gains);
}

}  // namespace

std::string_view to_string(FusionId id) {
  switch (id) {
    case FusionId::IHS: return "IHS";
    case FusionId::HFA: return "HFA";
    case FusionId::HFM: return "HFM";
    case FusionId::RVS: return "RVS";
    case FusionId::PCA: return "PCA";
    case FusionId::EF: return "EF";
    case FusionId::SF: return "SF";
  }
  return "?";
}

std::optional<FusionId> parse_fusion_id(std::string_view text) {
  for (FusionId id : kAllFusionMethods)
    if (to_string(id) == text) return id;
  return std::nullopt;
}

Band mean_variance_match(const Band& src, const Band& ref) {
  if (!src.same_shape(ref)) fail(ErrorKind::InvalidArgument, "mean_variance_match: bands differ in size");
  require_spread(src, "matching source");
  const double ms = stats::mean(src.pixels());
  const double mr = stats::mean(ref.pixels());
  const double gain = stats::std_dev(ref.pixels()) / stats::std_dev(src.pixels());
  std::vector<double> px(src.size());
  for (std::size_t n = 0; n < px.size(); ++n) px[n] = (src.pixels()[n] - ms) * gain + mr;
  return with_pixels(src, std::move(px));
}

MultiImage fuse_unclipped(const ImagePair& pair, const FusionMethod& method) {
  const ImagePair aligned = pair.resampled();
  const Band& pan = aligned.pan();
  const MultiImage& ms = aligned.ms();
  switch (method.id) {
    case FusionId::HFA: return fuse_hfa(ms, pan, method.params);
    case FusionId::HFM: return fuse_hfm(ms, pan, method.params);
    case FusionId::IHS: return fuse_ihs(ms, pan);
    case FusionId::RVS: return fuse_rvs(ms, pan, method.params);
    case FusionId::PCA: return fuse_pca(ms, pan);
    case FusionId::EF: return fuse_ef(ms, pan, method.params);
    case FusionId::SF: return fuse_sf(ms, pan, method.params);
  }
  fail(ErrorKind::InvalidArgument, "unknown fusion method");
}

MultiImage fuse(const ImagePair& pair, const FusionMethod& method) {
  const MultiImage raw = fuse_unclipped(pair, method);
  std::vector<Band> bands;
  for (const Band& b : raw.bands()) bands.push_back(clip_dn(b));
  return MultiImage(std::move(bands), raw.labels());
}

}  // namespace pansharp
