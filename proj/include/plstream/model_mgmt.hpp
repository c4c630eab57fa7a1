#ifndef PLSTREAM_MODEL_MGMT_HPP
#define PLSTREAM_MODEL_MGMT_HPP

#include <chrono>
#include <mutex>

#include "plstream/embedding.hpp"
#include "plstream/types.hpp"

namespace pls {

/// Union of two models. Words in both get componentwise-pooled input and
/// context vectors; words in one model only are copied through. Counts are
/// summed, last-used ticks take the max. Hard error on dimension mismatch.
EmbeddingModel merge(const EmbeddingModel& a, const EmbeddingModel& b, Pooling pooling);

/// Evicts words in ascending last-used order until vocab_size <= cap.
/// Reference-table words are never evicted.
void prune_lru(EmbeddingModel& model, std::size_t cap, const ReferenceTable& pinned);

/// Shared model for the global and hybrid strategies. Workers either train
/// against the shared model directly (global, serialized through the lock) or
/// periodically merge their local model into it (hybrid).
class ModelStore {
 public:
  ModelStore(Strategy strategy, std::size_t dim, Pooling pooling)
      : strategy_(strategy), pooling_(pooling), shared_(dim) {}

  Strategy strategy() const { return strategy_; }

  /// Hybrid sync: merges the worker model into the shared model and hands a
  /// copy of the merged model back. No-op under the local strategy.
  void sync(EmbeddingModel& worker_model);

  /// Global strategy: exclusive access to the one shared model.
  std::mutex& mutex() { return mutex_; }
  EmbeddingModel& shared() { return shared_; }

  /// Snapshot of the shared model under the lock.
  EmbeddingModel shared_copy();

 private:
  Strategy strategy_;
  Pooling pooling_;
  std::mutex mutex_;
  EmbeddingModel shared_;
};

/// Count- or wall-clock-based merge trigger. A configured every-k-batches
/// count takes precedence over the period for reproducible runs.
class MergeTrigger {
 public:
  MergeTrigger(unsigned every_k_batches, unsigned period_s)
      : every_k_(every_k_batches),
        period_(std::chrono::seconds(period_s)),
        last_(std::chrono::steady_clock::now()) {}

  bool fired_on_batch();

 private:
  unsigned every_k_;
  unsigned batches_ = 0;
  std::chrono::steady_clock::duration period_;
  std::chrono::steady_clock::time_point last_;
};

} // namespace pls

#endif
