#include <doctest.h>

#include <random>

#include "plstream/trend.hpp"

using namespace pls;

TEST_CASE("positive-heavy window raises wc_pos by one step") {
  TrendState t(10, 0.05, 0.05, 0.5, 1.5);
  t.roll(0.7);
  CHECK(t.wc_pos() == doctest::Approx(1.05));
  CHECK(t.wc_neg() == doctest::Approx(1.0));
}

TEST_CASE("negative-heavy window raises wc_neg symmetrically") {
  TrendState t(10, 0.05, 0.05, 0.5, 1.5);
  t.roll(0.3);
  CHECK(t.wc_neg() == doctest::Approx(1.05));
  CHECK(t.wc_pos() == doctest::Approx(1.0));
}

TEST_CASE("balanced windows decay the coefficients back toward 1") {
  TrendState t(10, 0.05, 0.05, 0.5, 1.5);
  t.roll(0.9);
  t.roll(0.9);
  CHECK(t.wc_pos() == doctest::Approx(1.10));
  t.roll(0.5);
  CHECK(t.wc_pos() == doctest::Approx(1.05));
  t.roll(0.52); // inside the hysteresis band: still decays
  CHECK(t.wc_pos() == doctest::Approx(1.0));
  t.roll(0.5); // already at 1.0: stays
  CHECK(t.wc_pos() == doctest::Approx(1.0));
  CHECK(t.wc_neg() == doctest::Approx(1.0));
}

TEST_CASE("coefficients clamp at the configured bounds") {
  TrendState t(10, 0.05, 0.05, 0.5, 1.5);
  for (int i = 0; i < 20; ++i) t.roll(1.0);
  CHECK(t.wc_pos() == doctest::Approx(1.5));
  CHECK(t.wc_neg() == doctest::Approx(1.0));
  for (int i = 0; i < 40; ++i) t.roll(0.0);
  CHECK(t.wc_neg() == doctest::Approx(1.5));
  CHECK(t.wc_pos() == doctest::Approx(1.0)); // decayed back, floored at 1
}

TEST_CASE("ratios inside the hysteresis band do not step") {
  TrendState t(10, 0.05, 0.05, 0.5, 1.5);
  t.roll(0.54);
  CHECK(t.wc_pos() == doctest::Approx(1.0));
  t.roll(0.46);
  CHECK(t.wc_neg() == doctest::Approx(1.0));
  t.roll(0.56);
  CHECK(t.wc_pos() == doctest::Approx(1.05));
}

TEST_CASE("record rolls a tumbling window when it fills") {
  TrendState t(4, 0.05, 0.05, 0.5, 1.5);
  t.record(Polarity::Positive);
  t.record(Polarity::Positive);
  t.record(Polarity::Positive);
  CHECK(t.wc_pos() == doctest::Approx(1.0)); // window not yet full
  CHECK(t.window_pos() == 3);
  t.record(Polarity::Negative); // fills: ratio 0.75 -> step up, window resets
  CHECK(t.wc_pos() == doctest::Approx(1.05));
  CHECK(t.window_pos() == 0);
  CHECK(t.window_neg() == 0);
}

TEST_CASE("majority of the partial window, ties positive") {
  TrendState t(100, 0.05, 0.05, 0.5, 1.5);
  CHECK(t.majority() == Polarity::Positive);
  t.record(Polarity::Negative);
  CHECK(t.majority() == Polarity::Negative);
  t.record(Polarity::Positive);
  CHECK(t.majority() == Polarity::Positive);
}

TEST_CASE("alternating balanced stream keeps both coefficients at 1") {
  TrendState t(10, 0.05, 0.05, 0.5, 1.5);
  for (int i = 0; i < 200; ++i)
    t.record(i % 2 ? Polarity::Negative : Polarity::Positive);
  CHECK(t.wc_pos() == doctest::Approx(1.0));
  CHECK(t.wc_neg() == doctest::Approx(1.0));
}

TEST_CASE("random balanced windows converge back to 1 after a shock") {
  std::mt19937_64 rng(3);
  TrendState t(10, 0.05, 0.05, 0.5, 1.5);
  for (int i = 0; i < 10; ++i) t.roll(1.0); // shock to the ceiling
  CHECK(t.wc_pos() == doctest::Approx(1.5));
  for (int i = 0; i < 50; ++i)
    t.roll(0.45 + 0.10 * std::uniform_real_distribution<double>(0, 1)(rng));
  CHECK(t.wc_pos() == doctest::Approx(1.0));
  CHECK(t.wc_neg() == doctest::Approx(1.0));
}

TEST_CASE("zero step disables adaptation entirely") {
  std::mt19937_64 rng(9);
  TrendState t(10, 0.0, 0.05, 0.5, 1.5);
  for (int i = 0; i < 100; ++i)
    t.roll(std::uniform_real_distribution<double>(0, 1)(rng));
  CHECK(t.wc_pos() == 1.0);
  CHECK(t.wc_neg() == 1.0);
}

TEST_CASE("coefficients never leave [wc_min, wc_max] under random rolls") {
  std::mt19937_64 rng(17);
  TrendState t(10, 0.2, 0.05, 0.5, 1.5);
  for (int i = 0; i < 500; ++i) {
    t.roll(std::uniform_real_distribution<double>(0, 1)(rng));
    CHECK(t.wc_pos() >= 0.5);
    CHECK(t.wc_pos() <= 1.5);
    CHECK(t.wc_neg() >= 0.5);
    CHECK(t.wc_neg() <= 1.5);
  }
}
