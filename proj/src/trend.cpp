#include "plstream/trend.hpp"

#include <algorithm>

namespace pls {

void TrendState::record(Polarity label) {
  if (label == Polarity::Positive) ++window_pos_;
  else ++window_neg_;
  if (window_pos_ + window_neg_ >= window_size_) {
    const double ratio = static_cast<double>(window_pos_) /
                         static_cast<double>(window_pos_ + window_neg_);
    roll(ratio);
    window_pos_ = 0;
    window_neg_ = 0;
  }
}

void TrendState::roll(double pos_ratio) {
  auto clamp = [&](double v) { return std::clamp(v, wc_min_, wc_max_); };
  auto toward_one = [&](double v) {
    if (v > 1.0) return std::max(1.0, v - step_);
    if (v < 1.0) return std::min(1.0, v + step_);
    return v;
  };
  if (pos_ratio > 0.5 + hysteresis_) {
    wc_pos_ = clamp(wc_pos_ + step_);
    wc_neg_ = clamp(toward_one(wc_neg_));
  } else if (pos_ratio < 0.5 - hysteresis_) {
    wc_neg_ = clamp(wc_neg_ + step_);
    wc_pos_ = clamp(toward_one(wc_pos_));
  } else {
    wc_pos_ = clamp(toward_one(wc_pos_));
    wc_neg_ = clamp(toward_one(wc_neg_));
  }
}

} // namespace pls
