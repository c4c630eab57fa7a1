#ifndef PLSTREAM_REGEN_HPP
#define PLSTREAM_REGEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "plstream/dataset.hpp"
#include "plstream/preprocess.hpp"

namespace pls {

struct RegenSkewResult {
  std::uint64_t total = 0;
  std::uint64_t positives = 0;
};

/// Rewrites a labelled dataset so the positive fraction hits `pos_fraction`
/// within +-0.5%, by replacement-free draws, then shuffles with the seed.
RegenSkewResult regen_skew(const std::string& in_path, const std::string& out_path,
                           InputFormat format, double pos_fraction,
                           std::uint64_t seed);

struct LengthBucket {
  std::size_t max_tokens; // inclusive upper bound; boundary goes to the lower bucket
  std::string out_path;
  std::uint64_t count = 0;
};

/// Partitions a dataset by post-filter token count. `buckets` must be sorted
/// by max_tokens ascending; the last bucket takes everything longer.
void regen_by_length(const std::string& in_path, InputFormat format,
                     std::vector<LengthBucket>& buckets,
                     const StopwordSet& stopwords);

} // namespace pls

#endif
