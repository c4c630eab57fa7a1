#include "plstream/embedding.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "plstream/sgns_math.hpp"

namespace pls {

WordEntry* EmbeddingModel::find(const std::string& word) {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

const WordEntry* EmbeddingModel::find(const std::string& word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<std::span<const float>> EmbeddingModel::vector_of(const std::string& word) {
  WordEntry* e = find(word);
  if (!e) return std::nullopt;
  e->last_used = next_tick();
  return std::span<const float>(e->vec);
}

void NegativeTable::build(const EmbeddingModel& model, unsigned mwc) {
  words_.clear();
  cumulative_.clear();
  words_.reserve(model.vocab_size());
  cumulative_.reserve(model.vocab_size());
  double acc = 0.0;
  for (const auto& [word, entry] : model.entries()) {
    if (entry.count < mwc) continue;
    acc += std::pow(static_cast<double>(entry.count), 0.75);
    words_.push_back(word);
    cumulative_.push_back(acc);
  }
}

const std::string* NegativeTable::sample(Rng& rng, const std::string& forbidden) const {
  if (words_.empty()) return nullptr;
  std::uniform_real_distribution<double> dist(0.0, cumulative_.back());
  for (int attempt = 0; attempt < 8; ++attempt) {
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), dist(rng));
    std::size_t idx = std::min<std::size_t>(it - cumulative_.begin(), words_.size() - 1);
    if (words_[idx] != forbidden) return &words_[idx];
  }
  return nullptr;
}

void observe_vocab(EmbeddingModel& model, const Batch& batch, unsigned mwc, Rng& rng) {
  assert(model.dim() > 0);
  const float bound = 0.5f / static_cast<float>(model.dim());
  std::uniform_real_distribution<float> init(-bound, bound);
  for (const CleanTuple& tuple : batch.tuples) {
    for (const std::string& token : tuple.tokens) {
      model.add_tokens(1);
      if (WordEntry* e = model.find(token)) {
        ++e->count;
        e->last_used = model.next_tick();
        continue;
      }
      std::uint64_t count = ++model.pending()[token];
      if (count >= mwc) {
        WordEntry entry;
        entry.count = count;
        entry.last_used = model.next_tick();
        entry.vec.resize(model.dim());
        for (float& v : entry.vec) v = init(rng);
        entry.ctx.assign(model.dim(), 0.0f);
        model.entries().emplace(token, std::move(entry));
        model.pending().erase(token);
      }
    }
  }
}

double train_batch(EmbeddingModel& model, const Batch& batch, const HyperParams& hp,
                   Rng& rng, NegativeTable& table) {
  // Lazy rebuild: first use, or the vocabulary outgrew the table by 2x since
  // the last build. Regular rebuilds happen on the merge trigger.
  if (table.empty() || model.vocab_size() > 2 * table.built_vocab_size())
    table.build(model, hp.mwc);
  if (table.empty()) return 0.0;

  const float lr = static_cast<float>(hp.learning_rate);
  const int window = static_cast<int>(hp.window);
  double loss = 0.0;
  std::vector<WordEntry*> sentence;
  std::vector<std::span<float>> negatives;
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  for (const CleanTuple& tuple : batch.tuples) {
    sentence.clear();
    for (const std::string& token : tuple.tokens) {
      WordEntry* e = model.find(token);
      if (!e || e->count < hp.mwc) continue; // not trainable yet
      if (hp.subsample > 0.0 && model.total_tokens() > 0) {
        const double freq = static_cast<double>(e->count) /
                            static_cast<double>(model.total_tokens());
        const double keep = (std::sqrt(freq / hp.subsample) + 1.0) * hp.subsample / freq;
        if (keep < 1.0 && unif(rng) > keep) continue;
      }
      sentence.push_back(e);
    }
    const int n = static_cast<int>(sentence.size());
    for (int i = 0; i < n; ++i) {
      WordEntry* center = sentence[i];
      const int lo = std::max(0, i - window);
      const int hi = std::min(n - 1, i + window);
      for (int j = lo; j <= hi; ++j) {
        if (j == i) continue;
        WordEntry* context = sentence[j];
        negatives.clear();
        for (unsigned k = 0; k < hp.negative_samples; ++k) {
          // forbid the positive context word as its own negative
          const std::string* neg = table.sample(rng, std::string());
          if (!neg) continue;
          WordEntry* ne = model.find(*neg);
          if (!ne || ne == context) continue;
          negatives.push_back(std::span<float>(ne->ctx));
        }
        loss += sgns::pair_update<float>(std::span<float>(center->vec),
                                         std::span<float>(context->ctx),
                                         std::span<std::span<float>>(negatives), lr);
      }
    }
#ifndef NDEBUG
    for (WordEntry* e : sentence) {
      for (float v : e->vec) assert(std::isfinite(v));
      for (float v : e->ctx) assert(std::isfinite(v));
    }
#endif
  }
  return loss;
}

} // namespace pls
