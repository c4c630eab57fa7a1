#include "plstream/model_mgmt.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace pls {

namespace {

void pool_into(std::vector<float>& dst, const std::vector<float>& other, Pooling pooling) {
  for (std::size_t i = 0; i < dst.size(); ++i) {
    switch (pooling) {
      case Pooling::Mean: dst[i] = 0.5f * (dst[i] + other[i]); break;
      case Pooling::Min: dst[i] = std::min(dst[i], other[i]); break;
      case Pooling::Max: dst[i] = std::max(dst[i], other[i]); break;
    }
  }
}

} // namespace

EmbeddingModel merge(const EmbeddingModel& a, const EmbeddingModel& b, Pooling pooling) {
  if (a.dim() != b.dim() && a.vocab_size() > 0 && b.vocab_size() > 0)
    throw std::invalid_argument("merge: dimension mismatch");

  EmbeddingModel out(a.dim() ? a.dim() : b.dim());
  out.entries() = a.entries();
  for (const auto& [word, entry] : b.entries()) {
    auto [it, inserted] = out.entries().emplace(word, entry);
    if (!inserted) {
      WordEntry& dst = it->second;
      pool_into(dst.vec, entry.vec, pooling);
      pool_into(dst.ctx, entry.ctx, pooling);
      dst.count += entry.count;
      dst.last_used = std::max(dst.last_used, entry.last_used);
    }
  }
  out.pending() = a.pending();
  for (const auto& [word, count] : b.pending()) out.pending()[word] += count;
  out.set_total_tokens(a.total_tokens() + b.total_tokens());
  out.advance_tick_to(std::max(a.tick(), b.tick()));
  return out;
}

void prune_lru(EmbeddingModel& model, std::size_t cap, const ReferenceTable& pinned) {
  if (model.vocab_size() <= cap) return;
  std::vector<std::pair<std::uint64_t, const std::string*>> order;
  order.reserve(model.vocab_size());
  for (const auto& [word, entry] : model.entries()) {
    if (pinned.contains(word)) continue;
    order.emplace_back(entry.last_used, &word);
  }
  std::sort(order.begin(), order.end(),
            [](const auto& x, const auto& y) {
              return x.first != y.first ? x.first < y.first : *x.second < *y.second;
            });
  std::size_t to_evict = model.vocab_size() - cap;
  for (const auto& [tick, word] : order) {
    if (to_evict == 0) break;
    model.entries().erase(*word);
    --to_evict;
  }
}

void ModelStore::sync(EmbeddingModel& worker_model) {
  if (strategy_ == Strategy::Local) return;
  std::lock_guard lock(mutex_);
  shared_ = merge(shared_, worker_model, pooling_);
  worker_model = shared_;
}

EmbeddingModel ModelStore::shared_copy() {
  std::lock_guard lock(mutex_);
  return shared_;
}

bool MergeTrigger::fired_on_batch() {
  if (every_k_ > 0) {
    if (++batches_ >= every_k_) {
      batches_ = 0;
      return true;
    }
    return false;
  }
  const auto now = std::chrono::steady_clock::now();
  if (now - last_ >= period_) {
    last_ = now;
    return true;
  }
  return false;
}

} // namespace pls
