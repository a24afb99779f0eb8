// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "oracle.hpp"
#include "pansharp/error.hpp"
#include "pansharp/evaluation.hpp"
#include "pansharp/fusion.hpp"
#include "pansharp/kernel.hpp"
#include "pansharp/raster_io.hpp"
#include "pansharp/report.hpp"
#include "pansharp/spatial.hpp"
#include "pansharp/spectral.hpp"
#include "pansharp/statistics.hpp"
#include "pansharp/synthetic.hpp"
#include "test_util.hpp"

using namespace pansharp;
using namespace pansharp::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

template <typename F>
std::optional<ErrorKind> thrown_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  } catch (...) {
    return std::nullopt;
  }
  return std::nullopt;
}

template <typename F>
bool throws(ErrorKind kind, F&& f) {
  return thrown_kind(std::forward<F>(f)) == kind;
}

// Worst absolute disagreement, tracked per metric name.
struct Worst {
  std::map<std::string, double> by_metric;
  void add(const std::string& name, double lib, double ref) {
    double& w = by_metric[name];
    w = std::max(w, std::fabs(lib - ref));
  }
  double max() const {
    double m = 0;
    for (const auto& [k, v] : by_metric) m = std::max(m, v);
    return m;
  }
};

Outcome oracle_suite() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(20240101);
  Worst worst;
  for (int trial = 0; trial < 100; ++trial) {
    const Band f = random_band(rng, 8, 8), m = random_band(rng, 8, 8);
    const auto gf = oracle::to_grid(f), gm = oracle::to_grid(m);
    worst.add("SD", std_dev(f), oracle::sd(gf));
    worst.add("En", entropy(f), oracle::entropy(gf));
    worst.add("CC", correlation(f, m), oracle::cc(gf, gm));
    const auto snr_ref = oracle::snr(gf, gm);
    out.require(snr_ref.has_value(), "SNR oracle undefined");
    if (snr_ref) worst.add("SNR", snr(f, m), *snr_ref);
    worst.add("NRMSE", nrmse(f, m), oracle::nrmse(gf, gm));
    worst.add("MG", mean_gradient(f), oracle::mg(gf));
    worst.add("SG", sobel_gradient(f), oracle::sg(gf));
    // m plays PAN for the spatial-against-PAN metrics.
    worst.add("FCC", fcc(m, MultiImage({f})).per_band[0], oracle::fcc_band(gm, gf));
    for (bool signed_mode : {true, false}) {
      const auto ref = oracle::hpdi(gm, gf, signed_mode, 1e-6);
      out.require(ref.has_value(), "HPDI oracle excluded every pixel");
      if (!ref) continue;
      const HpdiResult lib = hpdi(m, f, {signed_mode ? HpdiMode::Signed : HpdiMode::Absolute, 1e-6});
      worst.add(signed_mode ? "HPDI-signed" : "HPDI-abs", lib.value, ref->value);
    }
  }
  const double elapsed = seconds_since(t0);
  for (const auto& [name, w] : worst.by_metric) out.require(w <= 1e-9, name + " off by " + fmt(w));
  out.require(elapsed < 5.0, "runtime " + fmt(elapsed) + " s");
  out.detail << "100 pairs, 10 metrics, max |lib-oracle| " << fmt(worst.max()) << ", " << fmt(elapsed) << " s";
  return out;
}

Outcome analytic_fixtures() {
  Outcome out;
  const Band uniform = make_band(16, 16, [](std::size_t i, std::size_t j) { return double(16 * i + j); });
  const double en_uniform = entropy(uniform);
  out.require(std::fabs(en_uniform - 8.0) <= 1e-12, "entropy(uniform) = " + fmt(en_uniform));
  out.require(entropy(Band(8, 8, 42.0)) == 0.0, "entropy(constant) != 0");

  const Band ramp = column_ramp(8, 8);
  const double mg = mean_gradient(ramp), sg = sobel_gradient(ramp);
  out.require(std::fabs(mg - 0.7071) <= 1e-4, "MG(ramp) = " + fmt(mg));
  out.require(std::fabs(sg - 5.6569) <= 1e-4, "SG(ramp) = " + fmt(sg));

  out.require(nrmse(Band(8, 8, 0.0), Band(8, 8, 255.0)) == 1.0, "NRMSE(|d|=255) != 1");

  Rng rng(77);
  const Band f = random_band(rng, 8, 8);
  const double cc = correlation(f, map_band(f, [](double v) { return 255.0 - v; }));
  out.require(std::fabs(cc + 1.0) <= 1e-12, "CC(f, 255-f) = " + fmt(cc));

  const Band pan = random_band(rng, 8, 8);
  const double self_fcc = fcc(pan, MultiImage({pan})).per_band[0];
  out.require(std::fabs(self_fcc - 1.0) <= 1e-12, "FCC(pan, pan) = " + fmt(self_fcc));
  out.require(hpdi(pan, pan, {HpdiMode::Signed, 1e-6}).value == 0.0, "HPDI(pan, pan) != 0");
  out.detail << "En=" << fmt(en_uniform) << " MG=" << fmt(mg) << " SG=" << fmt(sg) << " CC=" << fmt(cc)
             << " FCC=" << fmt(self_fcc);
  return out;
}

Outcome degenerate_inputs() {
  Outcome out;
  Rng rng(5);
  const Band flat(8, 8, 120.0), noisy = random_band(rng, 8, 8);
  const Band affine = make_band(8, 8, [](std::size_t i, std::size_t j) { return 3.0 * i + 2.0 * j + 10.0; });
  const auto degenerate = ErrorKind::DegenerateStatistics;
  out.require(throws(degenerate, [&] { correlation(flat, noisy); }), "CC(constant, f)");
  out.require(throws(degenerate, [&] { correlation(noisy, flat); }), "CC(f, constant)");
  out.require(throws(degenerate, [&] { fcc(noisy, MultiImage({flat})); }), "FCC(pan, constant)");
  out.require(throws(degenerate, [&] { fcc(flat, MultiImage({noisy})); }), "FCC(constant pan, f)");
  out.require(throws(degenerate, [&] { mean_variance_match(flat, noisy); }), "mean_variance_match(constant)");
  out.require(throws(degenerate, [&] { fcc(noisy, MultiImage({affine})); }), "FCC(pan, affine)");
  out.require(throws(degenerate, [&] { fcc(affine, MultiImage({noisy})); }), "FCC(affine pan, f)");
  out.require(throws(ErrorKind::IdenticalImages, [&] { snr(noisy, noisy); }), "SNR(f, f) did not signal");

  // Through the scoring layer the same cases become sentinels.
  const MultiImage ms({random_band(rng, 8, 8), random_band(rng, 8, 8), random_band(rng, 8, 8)});
  std::vector<std::string> failures;
  const auto rows = score_fused("X", noisy, ms, ms, {}, &failures);
  int inf = 0;
  for (const auto& r : rows)
    if (r.metric == Metric::SNR) inf += r.value == MetricValue::infinite();
  out.require(inf == 3, "SNR(identical) not rendered as inf");

  // Whole pipeline on degenerate data must finish without escaping exceptions.
  int na_cells = 0;
  for (const Band& pan : {flat, affine, noisy}) {
    for (const MultiImage& m : {MultiImage({flat, flat, flat}, {"R", "G", "B"}),
                                MultiImage({affine, flat, noisy}, {"R", "G", "B"})}) {
      try {
        const Evaluation eval = evaluate(ImagePair(pan, m, 1), {});
        for (const auto& r : eval.records) na_cells += r.value == MetricValue::not_applicable();
      } catch (const std::exception& e) {
        out.require(false, std::string("evaluate threw: ") + e.what());
      }
    }
  }
  out.detail << "8 direct checks, SNR sentinel, 6 degenerate pipeline runs (" << na_cells << " n/a cells)";
  return out;
}

Outcome fusion_identity() {
  Outcome out;
  Rng rng(9);
  const FusionParams identity{1, 0.15};
  double worst_ihs = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 4 + rng.index(12);
    const MultiImage ms({random_band(rng, n, n), random_band(rng, n, n), random_band(rng, n, n)}, {"R", "G", "B"});
    const Band pan = random_band(rng, n, n, 1, 255);
    const ImagePair pair(pan, ms, 1);
    out.require(fuse_unclipped(pair, {FusionId::HFA, identity}) == ms, "HFA identity not bit-exact");
    out.require(fuse_unclipped(pair, {FusionId::HFM, identity}) == ms, "HFM identity not bit-exact");

    Band intensity(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        intensity(i, j) = (ms.band(0)(i, j) + ms.band(1)(i, j) + ms.band(2)(i, j)) / 3.0;
    const MultiImage back = fuse_unclipped(ImagePair(intensity, ms, 1), {FusionId::IHS, {}});
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t p = 0; p < n * n; ++p)
        worst_ihs = std::max(worst_ihs, std::fabs(back.band(k).pixels()[p] - ms.band(k).pixels()[p]));
  }
  out.require(worst_ihs <= 1e-6, "IHS round trip off by " + fmt(worst_ihs));
  out.detail << "20 random fixtures, HFA/HFM bit-exact, IHS max error " << fmt(worst_ihs);
  return out;
}

constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};

Outcome spatial_improvement() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  double min_mg_ratio = 1e9, min_sg_ratio = 1e9;
  for (std::uint64_t seed : kSeeds) {
    const SyntheticPair sp = generate_synthetic_pair(seed, 128, 4);
    const ImagePair pair(sp.pan, sp.ms, 4);
    const MultiImage up = upsample_nearest(sp.ms, 4);
    for (FusionId id : {FusionId::HFA, FusionId::HFM, FusionId::EF, FusionId::SF}) {
      const MultiImage fused = fuse(pair, {id, {}});
      for (std::size_t k = 0; k < 3; ++k) {
        const double mg_f = mean_gradient(fused.band(k)), mg_u = mean_gradient(up.band(k));
        const double sg_f = sobel_gradient(fused.band(k)), sg_u = sobel_gradient(up.band(k));
        const std::string where = "seed " + std::to_string(seed) + " " + std::string(to_string(id)) + " band " +
                                  up.label(k);
        out.require(mg_f > mg_u, where + " MG " + fmt(mg_f) + " <= " + fmt(mg_u));
        out.require(sg_f > sg_u, where + " SG " + fmt(sg_f) + " <= " + fmt(sg_u));
        min_mg_ratio = std::min(min_mg_ratio, mg_f / mg_u);
        min_sg_ratio = std::min(min_sg_ratio, sg_f / sg_u);
      }
    }
  }
  const double elapsed = seconds_since(t0);
  out.require(elapsed < 10.0, "runtime " + fmt(elapsed) + " s");
  out.detail << "seeds 1-5, 128x128, scale 4: min fused/upsampled MG " << fmt(min_mg_ratio) << ", SG "
             << fmt(min_sg_ratio) << ", " << fmt(elapsed) << " s";
  return out;
}

Outcome spectral_preservation() {
  Outcome out;
  double worst_margin_nrmse = 1e9, worst_margin_cc = 1e9;
  for (std::uint64_t seed : kSeeds) {
    const SyntheticPair sp = generate_synthetic_pair(seed, 128, 4);
    const ImagePair pair(sp.pan, sp.ms, 4);
    const MultiImage up = upsample_nearest(sp.ms, 4);
    for (FusionId id : {FusionId::HFA, FusionId::SF}) {
      const MultiImage fused = fuse(pair, {id, {}});
      for (std::size_t k = 0; k < 3; ++k) {
        const Band& ref = sp.reference.band(k);
        const double n_f = nrmse(fused.band(k), ref), c_f = correlation(fused.band(k), ref);
        // Baselines: plain up-sampled MS, and the band replaced by PAN outright.
        const double n_base = std::min(nrmse(up.band(k), ref), nrmse(sp.pan, ref));
        const double c_base = std::max(correlation(up.band(k), ref), correlation(sp.pan, ref));
        const std::string where = "seed " + std::to_string(seed) + " " + std::string(to_string(id)) + " band " +
                                  up.label(k);
        out.require(n_f < n_base, where + " NRMSE " + fmt(n_f) + " >= baseline " + fmt(n_base));
        out.require(c_f > c_base, where + " CC " + fmt(c_f) + " <= baseline " + fmt(c_base));
        worst_margin_nrmse = std::min(worst_margin_nrmse, n_base - n_f);
        worst_margin_cc = std::min(worst_margin_cc, c_f - c_base);
      }
    }
  }
  out.detail << "seeds 1-5, HFA and SF vs best baseline per band: min NRMSE margin " << fmt(worst_margin_nrmse)
             << ", min CC margin " << fmt(worst_margin_cc);
  return out;
}

Outcome hpdi_discrimination() {
  Outcome out;
  int tie_bands = 0, distinct_tie_bands = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SyntheticPair sp = generate_synthetic_pair(seed, 128, 4);
    const Evaluation eval = evaluate(ImagePair(sp.pan, sp.ms, 4), {});
    for (std::size_t k = 0; k < 3; ++k) {
      std::vector<double> fccs, hpdis;
      for (const MethodOutcome& m : eval.outcomes) {
        if (!m.fused) continue;
        fccs.push_back(fcc(eval.pan, *m.fused).per_band[k]);
        hpdis.push_back(hpdi(eval.pan, m.fused->band(k), {HpdiMode::Signed, 1e-6}).value);
      }
      out.require(fccs.size() == 7, "a method failed on seed " + std::to_string(seed));
      bool tie = false, distinct = true;
      for (std::size_t a = 0; a < fccs.size(); ++a)
        for (std::size_t b = a + 1; b < fccs.size(); ++b) {
          tie = tie || std::fabs(fccs[a] - fccs[b]) <= 0.005;
          distinct = distinct && std::fabs(hpdis[a] - hpdis[b]) > 1e-6;
        }
      if (tie) {
        ++tie_bands;
        distinct_tie_bands += distinct;
      }
    }
  }
  if (tie_bands > 0) out.require(distinct_tie_bands > 0, "no FCC-tie band with distinct HPDI values");

  // Injected filtered domain: two fused products scaling the PAN detail tie on
  // FCC but not on HPDI.
  Rng rng(31);
  const Band ph = random_band(rng, 16, 16, -50, 50);
  const Band f2 = map_band(ph, [](double v) { return 2.0 * v; });
  const Band f3 = map_band(ph, [](double v) { return 3.0 * v; });
  const double c2 = correlation(ph, f2), c3 = correlation(ph, f3);
  const double h2 = hpdi_filtered(ph, f2, {}).value, h3 = hpdi_filtered(ph, f3, {}).value;
  out.require(std::fabs(c2 - c3) <= 0.005, "constructed FCC values do not tie");
  out.require(std::fabs(h2 - h3) > 1e-6, "constructed HPDI values coincide");
  out.require(std::fabs(h2 - 1.0) <= 1e-9 && std::fabs(h3 - 2.0) <= 1e-9, "constructed HPDI values wrong");
  out.detail << "seeds 1-10: " << tie_bands << " FCC-tie bands, " << distinct_tie_bands
             << " with 7 distinct HPDI values; constructed tie FCC " << fmt(c2) << "/" << fmt(c3) << " HPDI "
             << fmt(h2) << "/" << fmt(h3);
  return out;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(PANSHARP_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome determinism() {
  Outcome out;
  TempDir dir("accept");
  const std::string d = dir.path().string();
  out.require(run_cli("synth --seed 6 --size 128 --scale 4 --out " + d + "/in") == 0, "synth failed");
  const std::string inputs = " --pan " + d + "/in/pan.pgm --ms " + d + "/in/ms.ppm --scale 4";
  out.require(run_cli("evaluate" + inputs + " --threads 1 --out " + d + "/a") == 0, "first evaluate failed");
  out.require(run_cli("evaluate" + inputs + " --threads 4 --out " + d + "/b") == 0, "second evaluate failed");
  out.require(run_cli("evaluate" + inputs + " --threads 1 --out " + d + "/c") == 0, "third evaluate failed");
  int compared = 0;
  std::vector<fs::path> files;
  if (fs::exists(dir / "a"))
    for (const auto& e : fs::directory_iterator(dir / "a")) files.push_back(e.path().filename());
  std::sort(files.begin(), files.end());
  for (const auto& f : files)
    for (const char* other : {"b", "c"}) {
      const fs::path p = dir / other / f;
      out.require(fs::exists(p) && read_file(dir / "a" / f) == read_file(p), f.string() + " differs in " + other);
      ++compared;
    }
  out.require(files.size() == 10, "expected 10 artifacts, got " + std::to_string(files.size()));
  out.detail << files.size() << " artifacts x 2 reruns (threads 1 and 4) byte-compared, " << compared << " comparisons";
  return out;
}

Outcome report_shape() {
  Outcome out;
  const SyntheticPair sp = generate_synthetic_pair(8, 64, 4);
  const Evaluation eval = evaluate(ImagePair(sp.pan, sp.ms, 4), {});
  const std::string csv = render_metrics_csv(eval.records);
  out.require(csv.rfind(std::string(kMetricsHeader) + "\n", 0) == 0, "header");
  const auto rows = parse_metrics_csv(csv);
  std::set<std::string> methods;
  for (FusionId id : kAllFusionMethods) methods.insert(std::string(to_string(id)));
  for (Metric metric : kAllMetrics) {
    int method_rows = 0, org_rows = 0, pan_rows = 0;
    const bool org_valued = metric == Metric::SD || metric == Metric::En || metric == Metric::MG ||
                            metric == Metric::SG;
    const bool pan_valued = metric == Metric::MG || metric == Metric::SG;
    const std::string name(to_string(metric));
    for (const auto& r : rows) {
      if (r.metric != metric) continue;
      if (methods.contains(r.method)) {
        ++method_rows;
        out.require(r.value != MetricValue::not_applicable(), r.method + "," + r.band + "," + name + " is n/a");
      } else if (r.method == kOriginalRow) {
        ++org_rows;
        out.require((r.value != MetricValue::not_applicable()) == org_valued, "ORG " + name + " sentinel pattern");
      } else if (r.method == kPanRow) {
        ++pan_rows;
        out.require((r.value != MetricValue::not_applicable()) == pan_valued, "PAN " + name + " sentinel pattern");
      } else {
        out.require(false, "unexpected row entity " + r.method);
      }
    }
    out.require(method_rows == 21 && org_rows == 3 && pan_rows == 1,
                name + " rows " + std::to_string(method_rows) + "/" + std::to_string(org_rows) + "/" +
                    std::to_string(pan_rows));
  }
  out.require(rows.size() == 9u * 25u, "total rows " + std::to_string(rows.size()));
  out.detail << rows.size() << " rows: per metric 21 method + 3 ORG + 1 PAN, n/a pattern checked";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 metric oracle suite", oracle_suite},
      {"2 analytic fixtures", analytic_fixtures},
      {"3 degenerate inputs", degenerate_inputs},
      {"4 fusion identity", fusion_identity},
      {"5 spatial improvement", spatial_improvement},
      {"6 spectral preservation", spectral_preservation},
      {"7 HPDI discrimination", hpdi_discrimination},
      {"8 end-to-end determinism", determinism},
      {"9 report shape", report_shape},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str());
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
