#include "pansharp/raster.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "pansharp/error.hpp"

namespace pansharp {

namespace {

void check_depth(int depth) {
  if (depth != 6 && depth != 8)
    fail(ErrorKind::InvalidArgument, "source depth must be 6 or 8, got " + std::to_string(depth));
}

}  // namespace

Band::Band(std::size_t width, std::size_t height, double fill, int source_depth)
    : Band(width, height, std::vector<double>(width * height, fill), source_depth) {}

Band::Band(std::size_t width, std::size_t height, std::vector<double> pixels, int source_depth)
    : width_(width), height_(height), depth_(source_depth), pixels_(std::move(pixels)) {
  if (width == 0 || height == 0)
    fail(ErrorKind::InvalidArgument, "band dimensions must be positive");
  if (pixels_.size() != width * height)
    fail(ErrorKind::InvalidArgument, "pixel count " + std::to_string(pixels_.size()) +
                                         " does not match " + std::to_string(width) + "x" +
                                         std::to_string(height));
  check_depth(depth_);
  for (double v : pixels_)
    if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "band contains a non-finite value");
}

Band Band::transposed() const {
  Band out(height_, width_, 0.0, depth_);
  for (std::size_t i = 0; i < height_; ++i)
    for (std::size_t j = 0; j < width_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

MultiImage::MultiImage(std::vector<Band> bands, std::vector<std::string> labels)
    : bands_(std::move(bands)), labels_(std::move(labels)) {
  validate();
}

MultiImage::MultiImage(std::vector<Band> bands) : bands_(std::move(bands)) {
  for (std::size_t k = 0; k < bands_.size(); ++k) labels_.push_back(std::to_string(k + 1));
  validate();
}

void MultiImage::validate() const {
  if (bands_.empty()) fail(ErrorKind::InvalidArgument, "image needs at least one band");
  if (labels_.size() != bands_.size())
    fail(ErrorKind::InvalidArgument, "label count does not match band count");
  for (const Band& b : bands_)
    if (!b.same_shape(bands_.front()))
      fail(ErrorKind::InvalidArgument, "all bands must share width and height");
  std::set<std::string> unique(labels_.begin(), labels_.end());
  if (unique.size() != labels_.size()) fail(ErrorKind::InvalidArgument, "band labels must be unique");
}

ImagePair::ImagePair(Band pan, MultiImage ms, std::size_t scale)
    : pan_(std::move(pan)), ms_(std::move(ms)), scale_(scale) {
  if (scale_ == 0) fail(ErrorKind::InvalidArgument, "scale must be positive");
  if (pan_.width() != ms_.width() * scale_ || pan_.height() != ms_.height() * scale_)
    fail(ErrorKind::InvalidArgument,
         "PAN " + std::to_string(pan_.width()) + "x" + std::to_string(pan_.height()) +
             " is not MS " + std::to_string(ms_.width()) + "x" + std::to_string(ms_.height()) +
             " times scale " + std::to_string(scale_));
}

ImagePair ImagePair::resampled() const {
  if (scale_ == 1) return *this;
  return ImagePair(pan_, upsample_nearest(ms_, scale_), 1);
}

Band rescale_to_8bit(const Band& b) {
  if (b.source_depth() == 8) return b;
  std::vector<double> px(b.pixels().begin(), b.pixels().end());
  for (double& v : px) v = v * 255.0 / 63.0;
  return Band(b.width(), b.height(), std::move(px), 8);
}

Band upsample_nearest(const Band& b, std::size_t scale) {
  if (scale == 0) fail(ErrorKind::InvalidArgument, "scale must be positive");
  if (scale == 1) return b;
  Band out(b.width() * scale, b.height() * scale, 0.0, b.source_depth());
  for (std::size_t i = 0; i < out.height(); ++i)
    for (std::size_t j = 0; j < out.width(); ++j) out(i, j) = b(i / scale, j / scale);
  return out;
}

MultiImage upsample_nearest(const MultiImage& img, std::size_t scale) {
  std::vector<Band> bands;
  bands.reserve(img.band_count());
  for (const Band& b : img.bands()) bands.push_back(upsample_nearest(b, scale));
  return MultiImage(std::move(bands), img.labels());
}

double quantize_dn(double v) { return std::clamp(std::floor(v + 0.5), 0.0, 255.0); }

Band clip_dn(const Band& b) {
  std::vector<double> px(b.pixels().begin(), b.pixels().end());
  for (double& v : px) v = std::clamp(v, 0.0, 255.0);
  return Band(b.width(), b.height(), std::move(px), b.source_depth());
}

}  // namespace pansharp
