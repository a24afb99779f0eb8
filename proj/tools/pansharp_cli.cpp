// pansharp: fuse PAN/MS pairs and score the results.
//
//   pansharp synth    --seed 7 --size 128 --scale 4 --out data/
//   pansharp fuse     --pan pan.pgm --ms ms.ppm --scale 4 --method SF --out sf.ppm
//   pansharp evaluate --pan pan.pgm --ms ms.ppm --scale 4 --out report/
//   pansharp diff     a/metrics.csv b/metrics.csv --tolerance 1e-9
//
// Exit status: 0 success, 1 when some result is "n/a" (or reports differ),
// 2 on invalid input.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "pansharp/error.hpp"
#include "pansharp/evaluation.hpp"
#include "pansharp/fusion.hpp"
#include "pansharp/raster_io.hpp"
#include "pansharp/report.hpp"
#include "pansharp/synthetic.hpp"

namespace fs = std::filesystem;
using namespace pansharp;

namespace {

constexpr int kOk = 0;
constexpr int kResultFailure = 1;
constexpr int kInvalidInput = 2;

struct RunFlags {
  std::string config;
  std::string pan;
  std::vector<std::string> ms;
  std::size_t scale = 1;
  std::string methods;
  std::string hpdi;
  double epsilon = 0;
  std::size_t lowpass = 0;
  double ef_beta = 0;
  unsigned threads = 1;
  std::string out;
};

void add_common(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--pan", f.pan, "PAN band (PGM or CSV)");
  cmd->add_option("--ms", f.ms, "MS input: one PPM, or one PGM/CSV per band")->expected(1, -1);
  cmd->add_option("--scale", f.scale, "PAN/MS resolution ratio")->check(CLI::PositiveNumber);
  cmd->add_option("--lowpass", f.lowpass, "box low-pass window (odd)");
  cmd->add_option("--ef-beta", f.ef_beta, "EF Laplacian weight");
}

RunConfig resolve(CLI::App* cmd, const RunFlags& f) {
  RunConfig cfg;
  if (!f.config.empty()) apply_config_text(cfg, read_file(f.config));
  const auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (given("--pan")) cfg.pan_path = f.pan;
  if (given("--ms")) cfg.ms_paths.assign(f.ms.begin(), f.ms.end());
  if (given("--scale")) apply_config_entry(cfg, "scale", std::to_string(f.scale));
  if (given("--lowpass")) apply_config_entry(cfg, "lowpass", std::to_string(f.lowpass));
  if (given("--ef-beta")) cfg.options.params.ef_beta = f.ef_beta;
  if (cmd->get_option_no_throw("--methods") && given("--methods")) apply_config_entry(cfg, "methods", f.methods);
  if (cmd->get_option_no_throw("--hpdi") && given("--hpdi")) apply_config_entry(cfg, "hpdi", f.hpdi);
  if (cmd->get_option_no_throw("--epsilon") && given("--epsilon"))
    apply_config_entry(cfg, "epsilon", format_number(f.epsilon));
  if (cmd->get_option_no_throw("--threads") && given("--threads")) cfg.options.threads = std::max(1u, f.threads);
  if (given("--out")) cfg.output_dir = f.out;
  if (cfg.pan_path.empty() || cfg.ms_paths.empty())
    fail(ErrorKind::InvalidArgument, "both --pan and --ms are required");
  return cfg;
}

int run_evaluate(CLI::App* cmd, const RunFlags& f) {
  const RunSummary summary = run_evaluation(resolve(cmd, f));
  for (const auto& p : summary.written) std::cout << "wrote " << p.string() << '\n';
  for (const auto& msg : summary.failures) std::cerr << "n/a: " << msg << '\n';
  return summary.failures.empty() ? kOk : kResultFailure;
}

int run_fuse(CLI::App* cmd, const RunFlags& f, const std::string& method_name) {
  const RunConfig cfg = resolve(cmd, f);
  const auto id = parse_fusion_id(method_name);
  if (!id) fail(ErrorKind::InvalidArgument, "unknown fusion method '" + method_name + "'");
  const ImagePair pair = load_pair(cfg.pan_path, cfg.ms_paths, cfg.scale);
  MultiImage fused;
  try {
    fused = fuse(pair, {*id, cfg.options.params});
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateStatistics && e.kind() != ErrorKind::NeedThreeBands) throw;
    std::cerr << method_name << ": " << e.what() << '\n';
    return kResultFailure;
  }
  fs::path out = cfg.output_dir;
  if (fused.band_count() == 3 || fused.band_count() == 1) {
    if (fs::is_directory(out) || !out.has_extension()) out /= "fused_" + method_name + (fused.band_count() == 3 ? ".ppm" : ".pgm");
    save_multi(fused, out);
    std::cout << "wrote " << out.string() << '\n';
  } else {
    fs::create_directories(out);
    for (std::size_t k = 0; k < fused.band_count(); ++k) {
      const fs::path p = out / ("fused_" + method_name + "_" + fused.label(k) + ".pgm");
      save_band(fused.band(k), p);
      std::cout << "wrote " << p.string() << '\n';
    }
  }
  return kOk;
}

int run_synth(std::uint64_t seed, std::size_t size, std::size_t scale, const fs::path& out) {
  const SyntheticPair pair = generate_synthetic_pair(seed, size, scale);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) fail(ErrorKind::IOFailure, "cannot create " + out.string() + ": " + ec.message());
  save_band(pair.pan, out / "pan.pgm");
  save_multi(pair.ms, out / "ms.ppm");
  save_multi(pair.reference, out / "reference.ppm");
  std::cout << "wrote " << (out / "pan.pgm").string() << ", " << (out / "ms.ppm").string() << ", "
            << (out / "reference.ppm").string() << '\n';
  return kOk;
}

int run_diff(const std::string& a, const std::string& b, double tolerance) {
  const auto diffs = compare_reports(read_file(a), read_file(b), tolerance);
  for (const ReportDiff& d : diffs) std::cout << d.to_string() << '\n';
  return diffs.empty() ? kOk : kResultFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pan-sharpening fusion and quality assessment"};
  app.require_subcommand(1);

  RunFlags flags;
  std::string fuse_method;
  auto* fuse_cmd = app.add_subcommand("fuse", "fuse a PAN/MS pair with one method");
  add_common(fuse_cmd, flags);
  fuse_cmd->add_option("--config", flags.config, "key=value config file");
  fuse_cmd->add_option("--method", fuse_method, "IHS, HFA, HFM, RVS, PCA, EF or SF")->required();
  fuse_cmd->add_option("--out", flags.out, "output image path or directory")->required();

  auto* eval_cmd = app.add_subcommand("evaluate", "fuse with several methods and write reports");
  add_common(eval_cmd, flags);
  eval_cmd->add_option("--config", flags.config, "key=value config file");
  eval_cmd->add_option("--methods", flags.methods, "comma-separated methods or 'all'");
  eval_cmd->add_option("--hpdi", flags.hpdi, "signed or absolute");
  eval_cmd->add_option("--epsilon", flags.epsilon, "HPDI denominator guard");
  eval_cmd->add_option("--threads", flags.threads, "methods evaluated concurrently");
  eval_cmd->add_option("--out", flags.out, "output directory");

  std::uint64_t seed = 1;
  std::size_t size = 128;
  std::size_t synth_scale = 4;
  std::string synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic PAN/MS/reference triple");
  synth_cmd->add_option("--seed", seed, "generator seed");
  synth_cmd->add_option("--size", size, "reference width and height")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--scale", synth_scale, "degradation factor")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--out", synth_out, "output directory")->required();

  std::string diff_a, diff_b;
  double tolerance = 1e-9;
  auto* diff_cmd = app.add_subcommand("diff", "compare two metrics.csv reports");
  diff_cmd->add_option("first", diff_a, "first metrics.csv")->required();
  diff_cmd->add_option("second", diff_b, "second metrics.csv")->required();
  diff_cmd->add_option("--tolerance", tolerance, "absolute tolerance on numeric values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*fuse_cmd) return run_fuse(fuse_cmd, flags, fuse_method);
    if (*eval_cmd) return run_evaluate(eval_cmd, flags);
    if (*synth_cmd) return run_synth(seed, size, synth_scale, synth_out);
    if (*diff_cmd) return run_diff(diff_a, diff_b, tolerance);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}
