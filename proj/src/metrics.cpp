#include "plstream/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace pls {

void LatencyHistogram::add(double latency_ms) {
  if (latency_ms < 0) latency_ms = 0;
  std::size_t idx = static_cast<std::size_t>(latency_ms / kBucketMs);
  if (idx >= buckets_.size()) idx = buckets_.size() - 1;
  ++buckets_[idx];
  ++count_;
}

double LatencyHistogram::quantile_ms(double q) const {
  if (count_ == 0) return 0.0;
  const auto target = static_cast<std::uint64_t>(std::ceil(q * static_cast<double>(count_)));
  std::uint64_t seen = 0;
  for (std::size_t i = 0; i < buckets_.size(); ++i) {
    seen += buckets_[i];
    if (seen >= target) return static_cast<double>(i + 1) * kBucketMs;
  }
  return kMaxMs;
}

std::string MetricsReport::to_json() const {
  nlohmann::ordered_json j;
  j["processed"] = processed;
  j["throughput"] = throughput;
  j["p95_latency_ms"] = p95_latency_ms;
  j["latency_bucket_ms"] = latency_bucket_ms;
  if (accuracy_cumulative) {
    j["accuracy_cumulative"] = *accuracy_cumulative;
    j["accuracy_window"] = *accuracy_window;
    j["precision"] = *precision;
    j["recall"] = *recall;
    j["f1"] = *f1;
    j["tp"] = tp;
    j["tn"] = tn;
    j["fp"] = fp;
    j["fn"] = fn;
  }
  return j.dump();
}

std::string MetricsReport::csv_header() {
  return "processed,throughput,p95_latency_ms,accuracy_cumulative,accuracy_window,"
         "precision,recall,f1";
}

std::string MetricsReport::to_csv_row() const {
  auto opt = [](const std::optional<double>& v) {
    return v ? std::to_string(*v) : std::string();
  };
  return std::to_string(processed) + "," + std::to_string(throughput) + "," +
         std::to_string(p95_latency_ms) + "," + opt(accuracy_cumulative) + "," +
         opt(accuracy_window) + "," + opt(precision) + "," + opt(recall) + "," +
         opt(f1);
}

void MetricsTracker::add(const LabelledTuple& t) {
  ++processed_;
  latency_.add(static_cast<double>(t.emit_ts - t.origin.ts));
  if (!t.true_label) return;
  const bool predicted_pos = t.label == Polarity::Positive;
  const bool actual_pos = *t.true_label == Polarity::Positive;
  if (predicted_pos && actual_pos) ++tp_;
  else if (!predicted_pos && !actual_pos) ++tn_;
  else if (predicted_pos) ++fp_;
  else ++fn_;

  const bool correct = predicted_pos == actual_pos;
  window_.push_back(correct);
  if (correct) ++window_correct_;
  if (window_.size() > window_capacity_) {
    if (window_.front()) --window_correct_;
    window_.pop_front();
  }
}

MetricsReport MetricsTracker::fill_quality(MetricsReport r) const {
  r.tp = tp_;
  r.tn = tn_;
  r.fp = fp_;
  r.fn = fn_;
  const std::uint64_t labelled = tp_ + tn_ + fp_ + fn_;
  if (labelled == 0) return r;
  r.accuracy_cumulative = static_cast<double>(tp_ + tn_) / static_cast<double>(labelled);
  r.accuracy_window = window_.empty()
                          ? 0.0
                          : static_cast<double>(window_correct_) /
                                static_cast<double>(window_.size());
  const double prec = tp_ + fp_ > 0
                          ? static_cast<double>(tp_) / static_cast<double>(tp_ + fp_)
                          : 0.0;
  const double rec = tp_ + fn_ > 0
                         ? static_cast<double>(tp_) / static_cast<double>(tp_ + fn_)
                         : 0.0;
  r.precision = prec;
  r.recall = rec;
  r.f1 = prec + rec > 0 ? 2.0 * prec * rec / (prec + rec) : 0.0;
  return r;
}

MetricsReport MetricsTracker::snapshot(double interval_seconds) {
  MetricsReport r;
  r.processed = processed_;
  r.interval_processed = processed_ - interval_start_;
  r.throughput = interval_seconds > 0
                     ? static_cast<double>(r.interval_processed) / interval_seconds
                     : 0.0;
  r.p95_latency_ms = latency_.quantile_ms(0.95);
  interval_start_ = processed_;
  return fill_quality(r);
}

MetricsReport MetricsTracker::final_report(double elapsed_seconds) const {
  MetricsReport r;
  r.processed = processed_;
  r.interval_processed = processed_;
  r.throughput = elapsed_seconds > 0
                     ? static_cast<double>(processed_) / elapsed_seconds
                     : 0.0;
  r.p95_latency_ms = latency_.quantile_ms(0.95);
  return fill_quality(r);
}

} // namespace pls
