#ifndef PLSTREAM_PREPROCESS_HPP
#define PLSTREAM_PREPROCESS_HPP

#include <string>
#include <unordered_set>
#include <vector>

#include "plstream/types.hpp"

namespace pls {

using StopwordSet = std::unordered_set<std::string>;

/// The bundled English stopword list (also shipped as data/stopwords.txt).
const StopwordSet& default_stopwords();

/// Loads a stopword file, one lowercase word per line, UTF-8.
StopwordSet load_stopwords(const std::string& path);

/// Lowercases, splits on whitespace, strips punctuation from token edges and
/// drops stopwords, pure numbers, @/# tokens, URLs and emoticon-only tokens.
/// Never fails; the token list may come out empty.
CleanTuple tokenize_and_filter(const Tuple& tuple, const StopwordSet& stopwords);

/// Collects clean tuples into batches of at most `capacity` tuples. The
/// pipeline flushes on capacity, timeout, or end of stream.
class Batcher {
 public:
  explicit Batcher(std::size_t capacity) : capacity_(capacity) {}

  /// Returns true when the batch reached capacity and should be flushed.
  bool push(CleanTuple tuple, std::int64_t now_ms);

  bool empty() const { return current_.tuples.empty(); }
  std::int64_t open_ts() const { return current_.open_ts; }

  /// Hands out the accumulated batch and starts a fresh one.
  Batch flush();

 private:
  std::size_t capacity_;
  Batch current_;
};

} // namespace pls

#endif
