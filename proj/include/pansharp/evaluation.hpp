#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pansharp/fusion.hpp"
#include "pansharp/raster.hpp"
#include "pansharp/report.hpp"
#include "pansharp/spatial.hpp"

namespace pansharp {

struct EvaluationOptions {
  std::vector<FusionId> methods{kAllFusionMethods.begin(), kAllFusionMethods.end()};
  FusionParams params{};
  HpdiVariant hpdi{};
  /// Methods fused concurrently; output never depends on this.
  unsigned threads = 1;
};

struct MethodOutcome {
  FusionId id;
  std::optional<MultiImage> fused;
  std::string error;
};

struct Evaluation {
  Band pan;
  MultiImage ms;  // up-sampled to PAN size
  std::vector<MethodOutcome> outcomes;  // sorted by method name
  std::vector<MetricRecord> records;    // sorted
  /// Context-qualified messages for every cell that became "n/a" because of an error.
  std::vector<std::string> failures;

  bool any_failure() const noexcept { return !failures.empty(); }
};

/// Row-entity names that are not fusion methods.
inline constexpr std::string_view kOriginalRow = "ORG";
inline constexpr std::string_view kPanRow = "PAN";

/// Runs every requested method and scores it. Spectral metrics compare each
/// fused band with the up-sampled MS band; spatial metrics compare it with
/// PAN. A method or metric that throws yields "n/a" cells instead of aborting.
Evaluation evaluate(const ImagePair& pair, const EvaluationOptions& options);

/// Metric rows for one fused product (no ORG / PAN rows).
std::vector<MetricRecord> score_fused(std::string_view method, const Band& pan, const MultiImage& ms,
                                      const MultiImage& fused, const HpdiVariant& hpdi,
                                      std::vector<std::string>* failures = nullptr);

/// `image,band,bin,count`: ORG and every fused product, each band plus L.
std::string render_histograms_csv(const Evaluation& eval);

/// {metric: {method: [band values]}}; "n/a" cells are null, "inf" a string.
std::string render_charts_json(const Evaluation& eval);

struct RunConfig {
  std::filesystem::path pan_path;
  std::vector<std::filesystem::path> ms_paths;
  std::size_t scale = 1;
  EvaluationOptions options{};
  std::filesystem::path output_dir = ".";
};

/// key=value lines; '#' starts a comment. Keys: pan, ms (comma list), scale,
/// methods (comma list), hpdi, epsilon, lowpass, ef_beta, threads, out.
void apply_config_text(RunConfig& cfg, std::string_view text);
void apply_config_entry(RunConfig& cfg, std::string_view key, std::string_view value);

std::vector<FusionId> parse_method_list(std::string_view text);

/// Reads PAN and MS, 6-bit bands stretched to 8 bits. A single `.ppm` MS
/// path is read as R, G, B; otherwise one band per path, labelled 1, 2, ...
ImagePair load_pair(const std::filesystem::path& pan_path,
                    const std::vector<std::filesystem::path>& ms_paths, std::size_t scale);

struct RunSummary {
  std::vector<std::filesystem::path> written;
  std::vector<std::string> failures;
};

/// Writes metrics.csv, histograms.csv, charts.json and one fused image per
/// successful method (fused_<METHOD>.ppm, or per-band PGMs for non-RGB input).
RunSummary run_evaluation(const RunConfig& cfg);

}  // namespace pansharp
