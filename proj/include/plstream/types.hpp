#ifndef PLSTREAM_TYPES_HPP
#define PLSTREAM_TYPES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pls {

enum class Polarity : std::uint8_t { Positive, Negative };

inline const char* to_string(Polarity p) {
  return p == Polarity::Positive ? "positive" : "negative";
}

/// One timestamped text item from the input stream. `true_label` is carried
/// only for evaluation; the labelling path never sees it.
struct Tuple {
  std::int64_t ts = 0;   // event timestamp, ms since epoch
  std::uint64_t seq = 0; // assigned at ingestion, strictly increasing
  std::string text;
  std::optional<Polarity> true_label;
};

struct TupleOrigin {
  std::uint64_t seq = 0;
  std::int64_t ts = 0;
};

/// Tokenized and filtered tuple. Token order follows the sentence order.
struct CleanTuple {
  TupleOrigin origin;
  std::vector<std::string> tokens;
  std::optional<Polarity> true_label; // pass-through for the metrics sink
};

/// Up to `b` clean tuples collected before one training step.
struct Batch {
  std::vector<CleanTuple> tuples;
  std::int64_t open_ts = 0; // wall clock when the batch was opened
};

struct LabelledTuple {
  TupleOrigin origin;
  Polarity label = Polarity::Positive;
  double sum_pos = 0.0;
  double sum_neg = 0.0;
  std::size_t known_token_count = 0;
  std::int64_t emit_ts = 0;
  std::optional<Polarity> true_label;
};

enum class Strategy : std::uint8_t { Local, Global, Hybrid };
enum class Pooling : std::uint8_t { Mean, Min, Max };

const char* to_string(Strategy s);
const char* to_string(Pooling p);
std::optional<Strategy> strategy_from_string(const std::string& s);
std::optional<Pooling> pooling_from_string(const std::string& s);

/// Tunable knobs. Values outside the experiment ranges are accepted with a
/// warning; only non-positive values are rejected.
struct HyperParams {
  unsigned window = 5;          // w, training context window
  unsigned dim = 20;            // d, vector dimension
  unsigned batch_size = 2000;   // b
  unsigned tdw = 1000;          // trend detection window, tuples
  unsigned merge_period_s = 30; // p, wall-clock merge trigger
  unsigned merge_every_k = 0;   // 0 = use merge_period_s
  unsigned mwc = 1;             // minimum word count
  unsigned lru_cap = 50000;     // c, vocabulary entry cap
  unsigned negative_samples = 5;
  double learning_rate = 0.025;
  double subsample = 0.0; // frequent-word subsampling threshold, 0 = off
  Strategy strategy = Strategy::Hybrid;
  Pooling pooling = Pooling::Mean;

  // trend detection
  double ttd_step = 0.05;
  double ttd_hysteresis = 0.05;
  double wc_min = 0.5;
  double wc_max = 1.5;

  /// Returns an error message for invalid (non-positive) fields, or appends
  /// out-of-range warnings to `warnings` and returns nullopt.
  std::optional<std::string> validate(std::vector<std::string>* warnings = nullptr) const;
};

/// Fixed positive/negative seed words anchoring polarity in embedding space.
struct ReferenceTable {
  std::vector<std::string> positive;
  std::vector<std::string> negative;

  bool contains(const std::string& word) const;

  /// The built-in reference word lists (21 positive, 21 negative).
  static const ReferenceTable& defaults();
  /// Parses a file with `[positive]` / `[negative]` sections, one word per line.
  static ReferenceTable load(const std::string& path);
};

} // namespace pls

#endif
