#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

#include "pansharp/raster.hpp"

namespace pansharp {

enum class FusionId { IHS, HFA, HFM, RVS, PCA, EF, SF };

inline constexpr std::array<FusionId, 7> kAllFusionMethods = {
    FusionId::EF, FusionId::HFA, FusionId::HFM, FusionId::IHS,
    FusionId::PCA, FusionId::RVS, FusionId::SF};

std::string_view to_string(FusionId id);
std::optional<FusionId> parse_fusion_id(std::string_view text);

struct FusionParams {
  /// Box low-pass window used by HFA, HFM, RVS and SF. 1 disables filtering.
  std::size_t lowpass_size = 5;
  /// Weight of the PAN Laplacian added by EF.
  double ef_beta = 0.15;
};

struct FusionMethod {
  FusionId id = FusionId::HFA;
  FusionParams params{};
};

/// Fused bands before the final [0, 255] clip. MS is brought to PAN size
/// first when the pair is not yet resampled.
MultiImage fuse_unclipped(const ImagePair& pair, const FusionMethod& method);

/// fuse_unclipped followed by clipping every DN to [0, 255].
MultiImage fuse(const ImagePair& pair, const FusionMethod& method);

/// Affine map giving `src` the mean and standard deviation of `ref`.
Band mean_variance_match(const Band& src, const Band& ref);

}  // namespace pansharp
