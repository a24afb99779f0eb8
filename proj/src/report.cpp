#include "pansharp/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <tuple>

#include "pansharp/error.hpp"

namespace pansharp {

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::SD: return "SD";
    case Metric::En: return "En";
    case Metric::CC: return "CC";
    case Metric::SNR: return "SNR";
    case Metric::NRMSE: return "NRMSE";
    case Metric::MG: return "MG";
    case Metric::SG: return "SG";
    case Metric::FCC: return "FCC";
    case Metric::HPDI: return "HPDI";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view text) {
  for (Metric m : kAllMetrics)
    if (to_string(m) == text) return m;
  return std::nullopt;
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string MetricValue::to_string() const {
  switch (kind_) {
    case Kind::Number: return format_number(value_);
    case Kind::Infinite: return "inf";
    case Kind::NotApplicable: return "n/a";
  }
  return "n/a";
}

std::optional<MetricValue> MetricValue::parse(std::string_view text) {
  if (text == "inf") return infinite();
  if (text == "n/a") return not_applicable();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    return std::nullopt;
  return number(v);
}

namespace {

auto sort_key(const MetricRecord& r) { return std::make_tuple(r.method, r.band, std::string(to_string(r.metric))); }

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const std::size_t at = line.find(sep);
    out.push_back(line.substr(0, at));
    if (at == std::string_view::npos) return out;
    line = line.substr(at + 1);
  }
}

}  // namespace

void sort_records(std::vector<MetricRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const MetricRecord& a, const MetricRecord& b) { return sort_key(a) < sort_key(b); });
}

std::string render_metrics_csv(std::vector<MetricRecord> records) {
  sort_records(records);
  std::string out(kMetricsHeader);
  out += '\n';
  for (const MetricRecord& r : records) {
    out += r.method;
    out += ',';
    out += r.band;
    out += ',';
    out += to_string(r.metric);
    out += ',';
    out += r.value.to_string();
    out += ',';
    out += r.aux;
    out += '\n';
  }
  return out;
}

std::vector<MetricRecord> parse_metrics_csv(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (std::string_view& l : lines)
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  if (lines.empty() || lines.front() != kMetricsHeader)
    fail(ErrorKind::MalformedReport, "missing header '" + std::string(kMetricsHeader) + "'");
  std::vector<MetricRecord> records;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto fields = split(lines[n], ',');
    const std::string where = " on line " + std::to_string(n + 1);
    if (fields.size() != 5) fail(ErrorKind::MalformedReport, "expected 5 fields" + where);
    const auto metric = parse_metric(fields[2]);
    if (!metric) fail(ErrorKind::MalformedReport, "unknown metric '" + std::string(fields[2]) + "'" + where);
    const auto value = MetricValue::parse(fields[3]);
    if (!value) fail(ErrorKind::MalformedReport, "bad value '" + std::string(fields[3]) + "'" + where);
    if (fields[0].empty() || fields[1].empty()) fail(ErrorKind::MalformedReport, "empty key" + where);
    records.push_back({std::string(fields[0]), std::string(fields[1]), *metric, *value, std::string(fields[4])});
  }
  return records;
}

std::string ReportDiff::to_string() const {
  std::string tag;
  switch (kind) {
    case Kind::ValueMismatch: tag = "value-mismatch"; break;
    case Kind::SentinelMismatch: tag = "sentinel-mismatch"; break;
    case Kind::OnlyInFirst: tag = "only-in-first"; break;
    case Kind::OnlyInSecond: tag = "only-in-second"; break;
  }
  const auto show = [](const std::optional<MetricValue>& v) { return v ? v->to_string() : std::string("-"); };
  return method + "," + band + "," + std::string(pansharp::to_string(metric)) + ": " + show(first) + " vs " +
         show(second) + " [" + tag + "]";
}

std::vector<ReportDiff> compare_reports(std::string_view first_csv, std::string_view second_csv, double tolerance) {
  using Key = std::tuple<std::string, std::string, std::string>;
  const auto index = [](const std::vector<MetricRecord>& records, const char* which) {
    std::map<Key, MetricRecord> m;
    for (const MetricRecord& r : records)
      if (!m.emplace(sort_key(r), r).second)
        fail(ErrorKind::MalformedReport, std::string("duplicate record in ") + which + " report: " + r.method +
                                             "," + r.band + "," + std::string(to_string(r.metric)));
    return m;
  };
  const auto a = index(parse_metrics_csv(first_csv), "first");
  const auto b = index(parse_metrics_csv(second_csv), "second");

  std::vector<ReportDiff> diffs;
  for (const auto& [key, ra] : a) {
    const auto it = b.find(key);
    if (it == b.end()) {
      diffs.push_back({ra.method, ra.band, ra.metric, ReportDiff::Kind::OnlyInFirst, ra.value, std::nullopt});
      continue;
    }
    const MetricValue& va = ra.value;
    const MetricValue& vb = it->second.value;
    if (va.kind() != vb.kind()) {
      diffs.push_back({ra.method, ra.band, ra.metric, ReportDiff::Kind::SentinelMismatch, va, vb});
    } else if (va.is_number() && !(std::abs(va.value() - vb.value()) <= tolerance)) {
      diffs.push_back({ra.method, ra.band, ra.metric, ReportDiff::Kind::ValueMismatch, va, vb});
    }
  }
  for (const auto& [key, rb] : b)
    if (!a.contains(key))
      diffs.push_back({rb.method, rb.band, rb.metric, ReportDiff::Kind::OnlyInSecond, std::nullopt, rb.value});
  return diffs;
}

}  // namespace pansharp
