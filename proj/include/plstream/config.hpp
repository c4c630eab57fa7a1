#ifndef PLSTREAM_CONFIG_HPP
#define PLSTREAM_CONFIG_HPP

#include <optional>
#include <string>

#include "plstream/dataset.hpp"
#include "plstream/types.hpp"

namespace pls {

enum class Algo : std::uint8_t { Wcd, Lexicon, Kmeans };

const char* to_string(Algo a);
std::optional<Algo> algo_from_string(const std::string& s);

/// Full description of one pipeline run. A config echoed at startup fully
/// determines a single-worker run.
struct RunConfig {
  // input
  std::string input;          // file path, or "tcp://:PORT"
  InputFormat format = InputFormat::Plain;
  double rate = 0.0;          // tuples/s, 0 = max
  std::uint64_t limit = 0;    // stop after N tuples, 0 = unlimited

  // algorithm
  Algo algo = Algo::Wcd;
  HyperParams hp;
  bool ttd_enabled = true;
  bool normalize_reference_sums = false;
  std::string reference_path;  // empty: built-in table
  std::string stopwords_path;  // empty: built-in list
  std::string lexicon_path;    // required for the lexicon baseline
  bool lexicon_sentiwordnet = false;

  // runtime
  unsigned workers = 1;
  std::uint64_t seed = 42;
  unsigned batch_timeout_ms = 500;
  std::size_t queue_capacity = 64;
  bool logical_time = false; // deterministic timestamps instead of wall clock

  // output
  std::string out_path;          // empty: stdout; "-" also stdout
  std::string metrics_out_path;  // empty: stderr
  double report_interval_s = 5.0;
  std::string snapshot_out;      // save the final (merged) model here
  std::string snapshot_in;       // warm-start from this snapshot

  std::string to_json() const;
  static RunConfig from_json(const std::string& json_text);
};

struct RunResult {
  int exit_code = 0;
  std::string error;
  std::uint64_t ingested = 0;
  std::uint64_t malformed = 0;
  std::uint64_t labelled = 0;
  double elapsed_s = 0.0;
  std::string summary_json; // final metrics report
};

} // namespace pls

#endif
