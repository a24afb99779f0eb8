#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pansharp {

enum class Metric { SD, En, CC, SNR, NRMSE, MG, SG, FCC, HPDI };

inline constexpr std::array<Metric, 9> kAllMetrics = {Metric::SD,  Metric::En, Metric::CC,
                                                      Metric::SNR, Metric::NRMSE, Metric::MG,
                                                      Metric::SG,  Metric::FCC, Metric::HPDI};

std::string_view to_string(Metric m);
std::optional<Metric> parse_metric(std::string_view text);

/// A metric cell: a number, the "inf" sentinel, or "n/a".
class MetricValue {
 public:
  enum class Kind { Number, Infinite, NotApplicable };

  static MetricValue number(double v) { return MetricValue(Kind::Number, v); }
  static MetricValue infinite() { return MetricValue(Kind::Infinite, 0.0); }
  static MetricValue not_applicable() { return MetricValue(Kind::NotApplicable, 0.0); }

  Kind kind() const noexcept { return kind_; }
  bool is_number() const noexcept { return kind_ == Kind::Number; }
  double value() const noexcept { return value_; }

  /// Shortest round-trip decimal, or "inf" / "n/a".
  std::string to_string() const;
  static std::optional<MetricValue> parse(std::string_view text);

  friend bool operator==(const MetricValue&, const MetricValue&) = default;

 private:
  MetricValue(Kind kind, double v) : kind_(kind), value_(v) {}
  Kind kind_;
  double value_;
};

std::string format_number(double v);

struct MetricRecord {
  std::string method;
  std::string band;
  Metric metric;
  MetricValue value;
  std::string aux;

  friend bool operator==(const MetricRecord&, const MetricRecord&) = default;
};

inline constexpr std::string_view kMetricsHeader = "method,band,metric,value,aux";

/// Sorts by (method, band, metric name), all compared as strings.
void sort_records(std::vector<MetricRecord>& records);

std::string render_metrics_csv(std::vector<MetricRecord> records);
std::vector<MetricRecord> parse_metrics_csv(std::string_view text);

struct ReportDiff {
  enum class Kind { ValueMismatch, SentinelMismatch, OnlyInFirst, OnlyInSecond };
  std::string method;
  std::string band;
  Metric metric;
  Kind kind;
  std::optional<MetricValue> first;
  std::optional<MetricValue> second;

  std::string to_string() const;
};

/// Records whose numeric values differ by more than `tolerance`, whose
/// sentinels disagree, or that are present in only one report.
std::vector<ReportDiff> compare_reports(std::string_view first_csv, std::string_view second_csv,
                                        double tolerance);

}  // namespace pansharp
