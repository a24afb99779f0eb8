#include "pansharp/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <future>
#include <map>
#include <json.hpp>

#include "pansharp/error.hpp"
#include "pansharp/raster_io.hpp"
#include "pansharp/spectral.hpp"

namespace pansharp {

namespace {

using Failures = std::vector<std::string>;

template <typename F>
MetricValue guarded(F&& compute, std::string& aux, const std::string& context, Failures* failures) {
  try {
    return compute();
  } catch (const Error& e) {
    aux = "error=" + std::string(to_string(e.kind()));
    if (failures) failures->push_back(context + ": " + e.what());
    return MetricValue::not_applicable();
  }
}

MetricRecord na(std::string_view method, const std::string& band, Metric m, std::string aux = {}) {
  return {std::string(method), band, m, MetricValue::not_applicable(), std::move(aux)};
}

std::vector<MetricRecord> failed_rows(std::string_view method, const MultiImage& ms, ErrorKind kind) {
  std::vector<MetricRecord> rows;
  for (const std::string& label : ms.labels())
    for (Metric m : kAllMetrics) rows.push_back(na(method, label, m, "error=" + std::string(to_string(kind))));
  return rows;
}

std::vector<MetricRecord> original_rows(const MultiImage& ms) {
  std::vector<MetricRecord> rows;
  for (std::size_t k = 0; k < ms.band_count(); ++k) {
    const Band& b = ms.band(k);
    const std::string& label = ms.label(k);
    for (Metric m : kAllMetrics) {
      MetricRecord r = na(kOriginalRow, label, m);
      switch (m) {
        case Metric::SD: r.value = MetricValue::number(std_dev(b)); break;
        case Metric::En: r.value = MetricValue::number(entropy(b)); break;
        case Metric::MG: r.value = guarded([&] { return MetricValue::number(mean_gradient(b)); }, r.aux, "", nullptr); break;
        case Metric::SG: r.value = guarded([&] { return MetricValue::number(sobel_gradient(b)); }, r.aux, "", nullptr); break;
        default: break;
      }
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

std::vector<MetricRecord> pan_rows(const Band& pan) {
  std::vector<MetricRecord> rows;
  for (Metric m : kAllMetrics) {
    MetricRecord r = na(kPanRow, "1", m);
    if (m == Metric::MG) r.value = guarded([&] { return MetricValue::number(mean_gradient(pan)); }, r.aux, "", nullptr);
    if (m == Metric::SG) r.value = guarded([&] { return MetricValue::number(sobel_gradient(pan)); }, r.aux, "", nullptr);
    rows.push_back(std::move(r));
  }
  return rows;
}

struct MethodResult {
  MethodOutcome outcome;
  std::vector<MetricRecord> records;
  Failures failures;
};

MethodResult run_method(FusionId id, const ImagePair& aligned, const EvaluationOptions& options) {
  MethodResult res{{id, std::nullopt, {}}, {}, {}};
  const std::string name(to_string(id));
  try {
    res.outcome.fused = fuse(aligned, {id, options.params});
  } catch (const Error& e) {
    res.outcome.error = e.what();
    res.failures.push_back(name + ": " + e.what());
    res.records = failed_rows(name, aligned.ms(), e.kind());
    return res;
  }
  res.records = score_fused(name, aligned.pan(), aligned.ms(), *res.outcome.fused, options.hpdi, &res.failures);
  return res;
}

}  // namespace

std::vector<MetricRecord> score_fused(std::string_view method, const Band& pan, const MultiImage& ms,
                                      const MultiImage& fused, const HpdiVariant& hpdi, Failures* failures) {
  std::vector<MetricRecord> rows;
  std::optional<FccResult> fcc_all;
  try {
    fcc_all = fcc(pan, fused);
  } catch (const Error&) {
    // Per-band recomputation below yields the specific failing bands.
  }

  for (std::size_t k = 0; k < fused.band_count(); ++k) {
    const Band& f = fused.band(k);
    const Band& m = ms.band(k);
    const std::string& label = fused.label(k);
    const std::string context = std::string(method) + " band " + label;
    for (Metric metric : kAllMetrics) {
      MetricRecord r = na(method, label, metric);
      const std::string where = context + " " + std::string(to_string(metric));
      switch (metric) {
        case Metric::SD: r.value = MetricValue::number(std_dev(f)); break;
        case Metric::En: r.value = MetricValue::number(entropy(f)); break;
        case Metric::CC:
          r.value = guarded([&] { return MetricValue::number(correlation(f, m)); }, r.aux, where, failures);
          break;
        case Metric::SNR:
          try {
            r.value = MetricValue::number(snr(f, m));
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::IdenticalImages) throw;
            r.value = MetricValue::infinite();
          }
          break;
        case Metric::NRMSE: r.value = MetricValue::number(nrmse(f, m)); break;
        case Metric::MG:
          r.value = guarded([&] { return MetricValue::number(mean_gradient(f)); }, r.aux, where, failures);
          break;
        case Metric::SG:
          r.value = guarded([&] { return MetricValue::number(sobel_gradient(f)); }, r.aux, where, failures);
          break;
        case Metric::FCC:
          r.value = guarded(
              [&] {
                if (fcc_all) return MetricValue::number(fcc_all->per_band[k]);
                const FccResult one = fcc(pan, MultiImage({f}, {label}));
                return MetricValue::number(one.per_band[0]);
              },
              r.aux, where, failures);
          if (fcc_all) r.aux = "mean=" + format_number(fcc_all->mean);
          break;
        case Metric::HPDI:
          r.value = guarded(
              [&] {
                const HpdiResult h = pansharp::hpdi(pan, f, hpdi);
                r.aux = "mode=" + std::string(to_string(hpdi.mode)) + ";excluded=" + format_number(h.excluded_fraction);
                return MetricValue::number(h.value);
              },
              r.aux, where, failures);
          break;
      }
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

Evaluation evaluate(const ImagePair& pair, const EvaluationOptions& options) {
  const ImagePair aligned = pair.resampled();
  std::vector<FusionId> methods = options.methods;
  std::sort(methods.begin(), methods.end(),
            [](FusionId a, FusionId b) { return to_string(a) < to_string(b); });
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

  std::vector<MethodResult> results(methods.size());
  const std::size_t batch = std::max(1u, options.threads);
  for (std::size_t start = 0; start < methods.size(); start += batch) {
    const std::size_t stop = std::min(methods.size(), start + batch);
    if (batch == 1) {
      results[start] = run_method(methods[start], aligned, options);
      continue;
    }
    std::vector<std::future<MethodResult>> pending;
    for (std::size_t n = start; n < stop; ++n)
      pending.push_back(std::async(std::launch::async, run_method, methods[n], std::cref(aligned), std::cref(options)));
    for (std::size_t n = start; n < stop; ++n) results[n] = pending[n - start].get();
  }

  Evaluation eval{aligned.pan(), aligned.ms(), {}, {}, {}};
  eval.records = original_rows(aligned.ms());
  for (MetricRecord& r : pan_rows(aligned.pan())) eval.records.push_back(std::move(r));
  for (MethodResult& res : results) {
    eval.outcomes.push_back(std::move(res.outcome));
    for (MetricRecord& r : res.records) eval.records.push_back(std::move(r));
    for (std::string& f : res.failures) eval.failures.push_back(std::move(f));
  }
  sort_records(eval.records);
  return eval;
}

std::string render_histograms_csv(const Evaluation& eval) {
  std::vector<std::pair<std::string, const MultiImage*>> images;
  images.emplace_back(kOriginalRow, &eval.ms);
  for (const MethodOutcome& o : eval.outcomes)
    if (o.fused) images.emplace_back(to_string(o.id), &*o.fused);
  std::sort(images.begin(), images.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::string out = "image,band,bin,count\n";
  const auto emit = [&](const std::string& image, const std::string& band, const Band& b) {
    const Histogram h = band_histogram(b);
    for (std::size_t bin = 0; bin < 256; ++bin)
      out += image + "," + band + "," + std::to_string(bin) + "," + std::to_string(h.counts[bin]) + "\n";
  };
  for (const auto& [name, img] : images) {
    for (std::size_t k = 0; k < img->band_count(); ++k) emit(name, img->label(k), img->band(k));
    if (img->band_count() == 3) emit(name, "L", luminance_band(*img));
  }
  return out;
}

std::string render_charts_json(const Evaluation& eval) {
  // std::map keys keep metric and method order fixed.
  std::map<std::string, std::map<std::string, std::vector<const MetricRecord*>>> grouped;
  for (const MetricRecord& r : eval.records) grouped[std::string(to_string(r.metric))][r.method].push_back(&r);

  nlohmann::json charts = nlohmann::json::object();
  for (const auto& [metric, by_method] : grouped) {
    nlohmann::json series = nlohmann::json::object();
    for (const auto& [method, rows] : by_method) {
      const bool any = std::any_of(rows.begin(), rows.end(), [](const MetricRecord* r) {
        return r->value.kind() != MetricValue::Kind::NotApplicable;
      });
      if (!any) continue;
      nlohmann::json values = nlohmann::json::array();
      for (const MetricRecord* r : rows) {
        switch (r->value.kind()) {
          case MetricValue::Kind::Number: values.push_back(r->value.value()); break;
          case MetricValue::Kind::Infinite: values.push_back("inf"); break;
          case MetricValue::Kind::NotApplicable: values.push_back(nullptr); break;
        }
      }
      series[method] = std::move(values);
    }
    charts[metric] = std::move(series);
  }
  return charts.dump(2) + "\n";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    fail(ErrorKind::InvalidArgument, "bad value '" + std::string(text) + "' for " + std::string(key));
  return v;
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> items;
  while (true) {
    const std::size_t comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    if (!item.empty()) items.push_back(item);
    if (comma == std::string_view::npos) return items;
    text = text.substr(comma + 1);
  }
}

}  // namespace

std::vector<FusionId> parse_method_list(std::string_view text) {
  std::vector<FusionId> ids;
  for (std::string_view item : split_list(text)) {
    if (item == "all") {
      ids.assign(kAllFusionMethods.begin(), kAllFusionMethods.end());
      continue;
    }
    const auto id = parse_fusion_id(item);
    if (!id) fail(ErrorKind::InvalidArgument, "unknown fusion method '" + std::string(item) + "'");
    ids.push_back(*id);
  }
  if (ids.empty()) fail(ErrorKind::InvalidArgument, "empty method list");
  return ids;
}

void apply_config_entry(RunConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "pan") {
    cfg.pan_path = std::string(value);
  } else if (key == "ms") {
    cfg.ms_paths.clear();
    for (std::string_view p : split_list(value)) cfg.ms_paths.emplace_back(std::string(p));
  } else if (key == "scale") {
    cfg.scale = parse_number<std::size_t>(key, value);
    if (cfg.scale == 0) fail(ErrorKind::InvalidArgument, "scale must be at least 1");
  } else if (key == "methods") {
    cfg.options.methods = parse_method_list(value);
  } else if (key == "hpdi") {
    cfg.options.hpdi.mode = parse_hpdi_mode(value);
  } else if (key == "epsilon") {
    cfg.options.hpdi.epsilon = parse_number<double>(key, value);
    if (!(cfg.options.hpdi.epsilon > 0.0)) fail(ErrorKind::InvalidArgument, "epsilon must be positive");
  } else if (key == "lowpass") {
    cfg.options.params.lowpass_size = parse_number<std::size_t>(key, value);
    if (cfg.options.params.lowpass_size % 2 == 0) fail(ErrorKind::InvalidArgument, "lowpass must be odd");
  } else if (key == "ef_beta") {
    cfg.options.params.ef_beta = parse_number<double>(key, value);
  } else if (key == "threads") {
    cfg.options.threads = std::max(1u, parse_number<unsigned>(key, value));
  } else if (key == "out") {
    cfg.output_dir = std::string(value);
  } else {
    fail(ErrorKind::InvalidArgument, "unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_text(RunConfig& cfg, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(ErrorKind::InvalidArgument, "config line " + std::to_string(line_no) + " has no '='");
    apply_config_entry(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

ImagePair load_pair(const std::filesystem::path& pan_path, const std::vector<std::filesystem::path>& ms_paths,
                    std::size_t scale) {
  if (ms_paths.empty()) fail(ErrorKind::InvalidArgument, "no MS input given");
  Band pan = rescale_to_8bit(load_band(pan_path));
  MultiImage ms;
  if (ms_paths.size() == 1 && ms_paths.front().extension() == ".ppm") {
    const MultiImage raw = load_ppm(ms_paths.front());
    std::vector<Band> bands;
    for (const Band& b : raw.bands()) bands.push_back(rescale_to_8bit(b));
    ms = MultiImage(std::move(bands), raw.labels());
  } else {
    std::vector<Band> bands;
    for (const auto& p : ms_paths) bands.push_back(rescale_to_8bit(load_band(p)));
    ms = MultiImage(std::move(bands));
  }
  return ImagePair(std::move(pan), std::move(ms), scale);
}

RunSummary run_evaluation(const RunConfig& cfg) {
  const ImagePair pair = load_pair(cfg.pan_path, cfg.ms_paths, cfg.scale);
  const Evaluation eval = evaluate(pair, cfg.options);

  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) fail(ErrorKind::IOFailure, "cannot create " + cfg.output_dir.string() + ": " + ec.message());

  RunSummary summary;
  const auto put = [&](const std::string& name, const std::string& bytes) {
    const auto path = cfg.output_dir / name;
    write_file(path, bytes);
    summary.written.push_back(path);
  };
  put("metrics.csv", render_metrics_csv(eval.records));
  put("histograms.csv", render_histograms_csv(eval));
  put("charts.json", render_charts_json(eval));
  for (const MethodOutcome& o : eval.outcomes) {
    if (!o.fused) continue;
    const std::string base = "fused_" + std::string(to_string(o.id));
    if (o.fused->band_count() == 3) {
      put(base + ".ppm", encode_ppm(*o.fused));
    } else {
      for (std::size_t k = 0; k < o.fused->band_count(); ++k)
        put(base + "_" + o.fused->label(k) + ".pgm", encode_pgm(o.fused->band(k)));
    }
  }
  summary.failures = eval.failures;
  return summary;
}

}  // namespace pansharp
