#pragma once

#include <cstddef>
#include <cstdint>

#include "pansharp/raster.hpp"

namespace pansharp {

struct SyntheticPair {
  Band pan;
  MultiImage ms;
  /// Ground-truth 3-band scene at PAN resolution.
  MultiImage reference;
  std::size_t scale = 1;
};

/// Window of the anti-alias box filter applied before decimating by `scale`.
std::size_t degradation_window(std::size_t scale);

/// Per-pixel 0.25 R + 0.5 G + 0.25 B, quantized.
Band synthesize_pan(const MultiImage& reference);

/// Box-filter each band with degradation_window(scale), then keep one pixel
/// per scale x scale block.
MultiImage degrade(const MultiImage& reference, std::size_t scale);

/// Deterministic Wald-style pair: a size x size R, G, B scene, its PAN
/// (0.25 R + 0.5 G + 0.25 B) and the MS obtained by box-filtering and
/// decimating the scene by `scale`. All values are integer DN, so the
/// in-memory pair equals what gets written to disk.
SyntheticPair generate_synthetic_pair(std::uint64_t seed, std::size_t size, std::size_t scale);

}  // namespace pansharp
