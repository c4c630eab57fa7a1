#ifndef PLSTREAM_EMBEDDING_HPP
#define PLSTREAM_EMBEDDING_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "plstream/types.hpp"

namespace pls {

using Rng = std::mt19937_64;

struct WordEntry {
  std::vector<float> vec; // input vector, row of the weight matrix
  std::vector<float> ctx; // output/context vector
  std::uint64_t count = 0;
  std::uint64_t last_used = 0;
};

/// Incrementally grown word -> vector lookup table plus training state.
/// Words below the minimum word count accumulate in a pending map and enter
/// the vocabulary once their cumulative count reaches the threshold.
class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  explicit EmbeddingModel(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  void set_dim(std::size_t d) { dim_ = d; }
  std::size_t vocab_size() const { return entries_.size(); }
  std::uint64_t total_tokens() const { return total_tokens_; }

  const std::unordered_map<std::string, WordEntry>& entries() const { return entries_; }
  std::unordered_map<std::string, WordEntry>& entries() { return entries_; }
  const std::unordered_map<std::string, std::uint64_t>& pending() const { return pending_; }
  std::unordered_map<std::string, std::uint64_t>& pending() { return pending_; }

  WordEntry* find(const std::string& word);
  const WordEntry* find(const std::string& word) const;

  /// Pure vector lookup; refreshes the word's last-used tick.
  std::optional<std::span<const float>> vector_of(const std::string& word);

  std::uint64_t tick() const { return tick_; }
  std::uint64_t next_tick() { return ++tick_; }
  void advance_tick_to(std::uint64_t t) { if (t > tick_) tick_ = t; }
  void add_tokens(std::uint64_t n) { total_tokens_ += n; }
  void set_total_tokens(std::uint64_t n) { total_tokens_ = n; }

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, WordEntry> entries_;
  std::unordered_map<std::string, std::uint64_t> pending_; // counts below mwc
  std::uint64_t total_tokens_ = 0;
  std::uint64_t tick_ = 0; // monotone last-used clock
};

/// Cumulative unigram^(3/4) sampling table. Rebuilt lazily: on first use and
/// on every merge trigger, not per update.
class NegativeTable {
 public:
  void build(const EmbeddingModel& model, unsigned mwc);
  bool empty() const { return words_.empty(); }
  std::size_t built_vocab_size() const { return words_.size(); }
  /// Samples one word; avoids `forbidden` with a bounded number of retries.
  const std::string* sample(Rng& rng, const std::string& forbidden) const;

 private:
  std::vector<std::string> words_;
  std::vector<double> cumulative_;
};

/// Counts every token of the batch; words crossing the minimum word count get
/// a vector initialized uniformly in [-0.5/d, 0.5/d] and a zero context
/// vector. Refreshes last-used ticks for all seen vocabulary words.
void observe_vocab(EmbeddingModel& model, const Batch& batch, unsigned mwc, Rng& rng);

/// One skip-gram negative-sampling pass over the batch. Requires
/// observe_vocab to have run. Returns the summed negative log-likelihood.
/// `table` is rebuilt in place when empty or badly stale.
double train_batch(EmbeddingModel& model, const Batch& batch, const HyperParams& hp,
                   Rng& rng, NegativeTable& table);

} // namespace pls

#endif
