#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "pansharp/raster.hpp"

namespace pansharp {

/// Square odd-sized correlation mask, row-major weights.
class Kernel {
 public:
  Kernel(std::size_t size, std::vector<double> weights);

  std::size_t size() const noexcept { return size_; }
  std::size_t radius() const noexcept { return size_ / 2; }
  double operator()(std::size_t u, std::size_t v) const { return weights_[u * size_ + v]; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  friend bool operator==(const Kernel&, const Kernel&) = default;

 private:
  std::size_t size_;
  std::vector<double> weights_;
};

/// Row-difference template: top row +1 +2 +1, bottom row -1 -2 -1.
const Kernel& sobel_x();
/// Column-difference template: left column -1 -2 -1, right column +1 +2 +1.
const Kernel& sobel_y();
/// 8-neighbour high-pass mask with centre weight 8.
const Kernel& laplacian3();

enum class BorderPolicy {
  /// Only pixels where the kernel fits; output shrinks by size - 1 per axis.
  ValidInterior,
  /// Same size as input; out-of-range taps read the nearest edge pixel.
  ReplicateEdge,
};

/// out(i, j) = sum_{u,v} k(u, v) * b(i + u - r, j + v - r), no kernel flip.
Band convolve(const Band& b, const Kernel& k, BorderPolicy policy = BorderPolicy::ValidInterior);

struct SobelPair {
  Band gx;
  Band gy;
};

SobelPair sobel_gradients(const Band& b, BorderPolicy policy = BorderPolicy::ValidInterior);

/// Replicate-edge mean over a size x size window. size 1 is the identity.
Band lowpass_box(const Band& b, std::size_t size);

}  // namespace pansharp
