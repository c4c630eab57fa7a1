#ifndef PLSTREAM_METRICS_HPP
#define PLSTREAM_METRICS_HPP

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "plstream/types.hpp"

namespace pls {

/// Fixed-bucket latency histogram: 0.1 ms buckets from 0 to 10 s, one
/// overflow bucket. O(1) memory on unbounded streams; quantiles are accurate
/// to the bucket width.
class LatencyHistogram {
 public:
  static constexpr double kBucketMs = 0.1;
  static constexpr double kMaxMs = 10000.0;

  void add(double latency_ms);
  std::uint64_t count() const { return count_; }
  /// Upper edge of the bucket containing quantile q (0 < q <= 1), in ms.
  double quantile_ms(double q) const;

 private:
  std::vector<std::uint64_t> buckets_ =
      std::vector<std::uint64_t>(static_cast<std::size_t>(kMaxMs / kBucketMs) + 1, 0);
  std::uint64_t count_ = 0;
};

struct MetricsReport {
  std::uint64_t processed = 0;
  std::uint64_t interval_processed = 0;
  double throughput = 0.0; // tuples/s over the report interval
  double p95_latency_ms = 0.0;
  double latency_bucket_ms = LatencyHistogram::kBucketMs;
  // absent when the stream carries no ground-truth labels
  std::optional<double> accuracy_cumulative;
  std::optional<double> accuracy_window;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;

  std::string to_json() const;
  std::string to_csv_row() const;
  static std::string csv_header();
};

/// Consumes the labelled stream and produces periodic and final reports.
/// Accuracy treats Positive as the positive class.
class MetricsTracker {
 public:
  explicit MetricsTracker(std::size_t accuracy_window = 10000)
      : window_capacity_(accuracy_window) {}

  void add(const LabelledTuple& t);

  /// Report over everything since the previous snapshot call.
  MetricsReport snapshot(double interval_seconds);
  /// Cumulative report over the whole stream.
  MetricsReport final_report(double elapsed_seconds) const;

  std::uint64_t processed() const { return processed_; }

 private:
  MetricsReport fill_quality(MetricsReport r) const;

  std::size_t window_capacity_;
  std::uint64_t processed_ = 0;
  std::uint64_t interval_start_ = 0;
  std::uint64_t tp_ = 0, tn_ = 0, fp_ = 0, fn_ = 0;
  LatencyHistogram latency_;
  std::deque<bool> window_; // recent correctness bits
  std::uint64_t window_correct_ = 0;
};

} // namespace pls

#endif
