#include "pansharp/kernel.hpp"

#include <algorithm>
#include <string>

#include "pansharp/error.hpp"

namespace pansharp {

Kernel::Kernel(std::size_t size, std::vector<double> weights) : size_(size), weights_(std::move(weights)) {
  if (size_ == 0 || size_ % 2 == 0)
    fail(ErrorKind::InvalidArgument, "kernel size must be odd, got " + std::to_string(size_));
  if (weights_.size() != size_ * size_)
    fail(ErrorKind::InvalidArgument, "kernel needs " + std::to_string(size_ * size_) + " weights");
}

const Kernel& sobel_x() {
  static const Kernel k(3, {1, 2, 1,
                            0, 0, 0,
                            -1, -2, -1});
  return k;
}

const Kernel& sobel_y() {
  static const Kernel k(3, {-1, 0, 1,
                            -2, 0, 2,
                            -1, 0, 1});
  return k;
}

const Kernel& laplacian3() {
  static const Kernel k(3, {-1, -1, -1,
                            -1, 8, -1,
                            -1, -1, -1});
  return k;
}

Band convolve(const Band& b, const Kernel& k, BorderPolicy policy) {
  const std::size_t n = k.size();
  const std::size_t r = k.radius();
  if (policy == BorderPolicy::ValidInterior) {
    if (b.width() < n || b.height() < n)
      fail(ErrorKind::BandTooSmall, std::to_string(b.width()) + "x" + std::to_string(b.height()) +
                                        " band is smaller than a " + std::to_string(n) + "x" +
                                        std::to_string(n) + " kernel");
    Band out(b.width() - (n - 1), b.height() - (n - 1));
    for (std::size_t i = 0; i < out.height(); ++i)
      for (std::size_t j = 0; j < out.width(); ++j) {
        double acc = 0.0;
        // Output (i, j) is centred on input (i + r, j + r).
        for (std::size_t u = 0; u < n; ++u)
          for (std::size_t v = 0; v < n; ++v) acc += k(u, v) * b(i + u, j + v);
        out(i, j) = acc;
      }
    return out;
  }

  const auto clamp_index = [](std::ptrdiff_t x, std::size_t extent) {
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(x, 0, static_cast<std::ptrdiff_t>(extent) - 1));
  };
  Band out(b.width(), b.height());
  for (std::size_t i = 0; i < b.height(); ++i)
    for (std::size_t j = 0; j < b.width(); ++j) {
      double acc = 0.0;
      for (std::size_t u = 0; u < n; ++u) {
        const std::size_t row = clamp_index(static_cast<std::ptrdiff_t>(i + u) - static_cast<std::ptrdiff_t>(r), b.height());
        for (std::size_t v = 0; v < n; ++v) {
          const std::size_t col = clamp_index(static_cast<std::ptrdiff_t>(j + v) - static_cast<std::ptrdiff_t>(r), b.width());
          acc += k(u, v) * b(row, col);
        }
      }
      out(i, j) = acc;
    }
  return out;
}

SobelPair sobel_gradients(const Band& b, BorderPolicy policy) {
  return {convolve(b, sobel_x(), policy), convolve(b, sobel_y(), policy)};
}

Band lowpass_box(const Band& b, std::size_t size) {
  if (size == 0 || size % 2 == 0)
    fail(ErrorKind::InvalidArgument, "low-pass size must be odd, got " + std::to_string(size));
  if (size == 1) return b;
  const double w = 1.0 / static_cast<double>(size * size);
  Band out = convolve(b, Kernel(size, std::vector<double>(size * size, w)), BorderPolicy::ReplicateEdge);
  return Band(out.width(), out.height(), std::vector<double>(out.pixels().begin(), out.pixels().end()),
              b.source_depth());
}

}  // namespace pansharp
