#ifndef PLSTREAM_TREND_HPP
#define PLSTREAM_TREND_HPP

#include <cstdint>

#include "plstream/types.hpp"

namespace pls {

/// Tumbling window of recent label decisions. When the window fills, the
/// positive ratio nudges the weighted coefficients applied to the similarity
/// sums of the next window. With step = 0 the coefficients never move and the
/// decision reduces to the plain sum comparison.
class TrendState {
 public:
  TrendState() = default;
  TrendState(unsigned window_size, double step, double hysteresis, double wc_min,
             double wc_max)
      : window_size_(window_size), step_(step), hysteresis_(hysteresis),
        wc_min_(wc_min), wc_max_(wc_max) {}

  static TrendState from(const HyperParams& hp) {
    return TrendState(hp.tdw, hp.ttd_step, hp.ttd_hysteresis, hp.wc_min, hp.wc_max);
  }

  double wc_pos() const { return wc_pos_; }
  double wc_neg() const { return wc_neg_; }
  unsigned window_pos() const { return window_pos_; }
  unsigned window_neg() const { return window_neg_; }
  unsigned window_size() const { return window_size_; }

  /// Majority label of the current (partial) window; empty window -> Positive.
  Polarity majority() const {
    return window_neg_ > window_pos_ ? Polarity::Negative : Polarity::Positive;
  }

  /// Counts one label; rolls the window when it fills.
  void record(Polarity label);

  /// Applies the coefficient adjustment for a completed window.
  void roll(double pos_ratio);

 private:
  unsigned window_size_ = 1000;
  double step_ = 0.05;
  double hysteresis_ = 0.05;
  double wc_min_ = 0.5;
  double wc_max_ = 1.5;
  double wc_pos_ = 1.0;
  double wc_neg_ = 1.0;
  unsigned window_pos_ = 0;
  unsigned window_neg_ = 0;
};

} // namespace pls

#endif
