#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pansharp {

/// One 2-D grid of digital numbers, row-major, carried as doubles.
///
/// Row index `i` runs over `height` rows, column index `j` over `width`
/// columns. Values are only required to be finite: ingestion keeps DN in
/// [0, 255] while filtered bands (Laplacian, Sobel) may be negative or large.
class Band {
 public:
  Band() = default;
  Band(std::size_t width, std::size_t height, double fill = 0.0, int source_depth = 8);
  Band(std::size_t width, std::size_t height, std::vector<double> pixels, int source_depth = 8);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }
  int source_depth() const noexcept { return depth_; }

  double operator()(std::size_t i, std::size_t j) const { return pixels_[i * width_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return pixels_[i * width_ + j]; }

  std::span<const double> pixels() const noexcept { return pixels_; }
  std::span<double> pixels() noexcept { return pixels_; }

  bool same_shape(const Band& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  Band transposed() const;

  friend bool operator==(const Band&, const Band&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  int depth_ = 8;
  std::vector<double> pixels_;
};

/// Ordered, labelled, equally-sized bands.
class MultiImage {
 public:
  MultiImage() = default;
  MultiImage(std::vector<Band> bands, std::vector<std::string> labels);
  /// Labels "1", "2", ... in band order.
  explicit MultiImage(std::vector<Band> bands);

  std::size_t band_count() const noexcept { return bands_.size(); }
  std::size_t width() const noexcept { return bands_.front().width(); }
  std::size_t height() const noexcept { return bands_.front().height(); }

  const Band& band(std::size_t k) const { return bands_.at(k); }
  const std::vector<Band>& bands() const noexcept { return bands_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t k) const { return labels_.at(k); }

  friend bool operator==(const MultiImage&, const MultiImage&) = default;

 private:
  void validate() const;

  std::vector<Band> bands_;
  std::vector<std::string> labels_;
};

/// A PAN band and an MS image, either at their native resolution ratio
/// `scale` or already co-registered at the same size (`scale == 1`).
class ImagePair {
 public:
  ImagePair(Band pan, MultiImage ms, std::size_t scale);

  const Band& pan() const noexcept { return pan_; }
  const MultiImage& ms() const noexcept { return ms_; }
  std::size_t scale() const noexcept { return scale_; }

  /// The pair with MS brought to PAN size by nearest-neighbour replication.
  ImagePair resampled() const;

 private:
  Band pan_;
  MultiImage ms_;
  std::size_t scale_;
};

/// Linear stretch of 6-bit DN onto [0, 255]; 8-bit bands pass through.
Band rescale_to_8bit(const Band& b);

/// Output pixel (i, j) takes input pixel (i / scale, j / scale).
Band upsample_nearest(const Band& b, std::size_t scale);
MultiImage upsample_nearest(const MultiImage& img, std::size_t scale);

/// Round half up, then clip to [0, 255].
double quantize_dn(double v);
Band clip_dn(const Band& b);

}  // namespace pansharp
