#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "plstream/model_mgmt.hpp"

using namespace pls;

namespace {

void put(EmbeddingModel& m, const std::string& word, std::vector<float> vec,
         std::vector<float> ctx, std::uint64_t count = 1, std::uint64_t used = 0) {
  WordEntry e;
  e.vec = std::move(vec);
  e.ctx = std::move(ctx);
  e.count = count;
  e.last_used = used;
  m.entries().emplace(word, std::move(e));
}

EmbeddingModel random_model(std::mt19937_64& rng, std::size_t dim,
                            std::size_t vocab) {
  EmbeddingModel m(dim);
  std::uniform_real_distribution<float> unif(-1.0f, 1.0f);
  for (std::size_t i = 0; i < vocab; ++i) {
    std::string word = "w" + std::to_string(rng() % (vocab * 2));
    if (m.find(word)) continue;
    std::vector<float> v(dim), c(dim);
    for (auto& x : v) x = unif(rng);
    for (auto& x : c) x = unif(rng);
    put(m, word, std::move(v), std::move(c), 1 + rng() % 50, rng() % 1000);
  }
  return m;
}

bool same_vectors(const EmbeddingModel& a, const EmbeddingModel& b) {
  if (a.vocab_size() != b.vocab_size()) return false;
  for (const auto& [word, ea] : a.entries()) {
    const WordEntry* eb = b.find(word);
    if (!eb || ea.vec != eb->vec || ea.ctx != eb->ctx) return false;
  }
  return true;
}

} // namespace

TEST_CASE("mean merge averages overlapping words") {
  EmbeddingModel a(2), b(2);
  put(a, "shared", {2, 4}, {1, 0}, 3, 10);
  put(b, "shared", {4, 6}, {3, 2}, 5, 7);
  put(a, "only_a", {1, 1}, {0, 0}, 2, 4);
  put(b, "only_b", {9, 9}, {1, 1}, 1, 2);

  const EmbeddingModel m = merge(a, b, Pooling::Mean);
  REQUIRE(m.vocab_size() == 3);
  const WordEntry* s = m.find("shared");
  REQUIRE(s != nullptr);
  CHECK(s->vec == std::vector<float>{3, 5});
  CHECK(s->ctx == std::vector<float>{2, 1});
  CHECK(s->count == 8);
  CHECK(s->last_used == 10);
  CHECK(m.find("only_a")->vec == std::vector<float>{1, 1});
  CHECK(m.find("only_b")->vec == std::vector<float>{9, 9});
}

TEST_CASE("min and max pooling act componentwise") {
  EmbeddingModel a(2), b(2);
  put(a, "w", {1, 8}, {-1, 4});
  put(b, "w", {5, 2}, {3, -2});
  const EmbeddingModel lo = merge(a, b, Pooling::Min);
  CHECK(lo.find("w")->vec == std::vector<float>{1, 2});
  CHECK(lo.find("w")->ctx == std::vector<float>{-1, -2});
  const EmbeddingModel hi = merge(a, b, Pooling::Max);
  CHECK(hi.find("w")->vec == std::vector<float>{5, 8});
  CHECK(hi.find("w")->ctx == std::vector<float>{3, 4});
}

TEST_CASE("merging with an empty model is the identity on vectors") {
  std::mt19937_64 rng(5);
  const EmbeddingModel m = random_model(rng, 4, 20);
  const EmbeddingModel empty(4);
  for (Pooling p : {Pooling::Mean, Pooling::Min, Pooling::Max}) {
    CHECK(same_vectors(merge(m, empty, p), m));
    CHECK(same_vectors(merge(empty, m, p), m));
  }
}

TEST_CASE("merge is commutative and self-merge preserves vectors") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const EmbeddingModel a = random_model(rng, 4, 15);
    const EmbeddingModel b = random_model(rng, 4, 15);
    for (Pooling p : {Pooling::Mean, Pooling::Min, Pooling::Max}) {
      CHECK(same_vectors(merge(a, b, p), merge(b, a, p)));
      // counts sum on self-merge by design; the geometry must not move
      CHECK(same_vectors(merge(a, a, p), a));
    }
  }
}

TEST_CASE("merge pools pending counts and metadata") {
  EmbeddingModel a(2), b(2);
  a.pending()["soon"] = 2;
  b.pending()["soon"] = 1;
  b.pending()["later"] = 1;
  a.set_total_tokens(100);
  b.set_total_tokens(40);
  a.advance_tick_to(9);
  b.advance_tick_to(30);
  const EmbeddingModel m = merge(a, b, Pooling::Mean);
  CHECK(m.pending().at("soon") == 3);
  CHECK(m.pending().at("later") == 1);
  CHECK(m.total_tokens() == 140);
  CHECK(m.tick() == 30);
}

TEST_CASE("dimension mismatch is a hard error") {
  EmbeddingModel a(2), b(3);
  put(a, "x", {1, 1}, {0, 0});
  put(b, "y", {1, 1, 1}, {0, 0, 0});
  CHECK_THROWS_AS(merge(a, b, Pooling::Mean), std::invalid_argument);
}

TEST_CASE("lru pruning evicts the least recently used words") {
  EmbeddingModel m(2);
  for (int i = 0; i < 10; ++i)
    put(m, "w" + std::to_string(i), {1, 1}, {0, 0}, 1, 100 - i); // w9 oldest
  prune_lru(m, 4, ReferenceTable{});
  CHECK(m.vocab_size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(m.find("w" + std::to_string(i)) != nullptr);
  for (int i = 4; i < 10; ++i) CHECK(m.find("w" + std::to_string(i)) == nullptr);
}

TEST_CASE("reference words survive pruning regardless of age") {
  EmbeddingModel m(2);
  put(m, "good", {1, 1}, {0, 0}, 1, 0); // oldest possible
  for (int i = 0; i < 9; ++i)
    put(m, "w" + std::to_string(i), {1, 1}, {0, 0}, 1, 10 + i);
  ReferenceTable ref;
  ref.positive = {"good"};
  prune_lru(m, 3, ref);
  CHECK(m.vocab_size() == 3);
  CHECK(m.find("good") != nullptr);
}

TEST_CASE("pruning below the cap is a no-op") {
  std::mt19937_64 rng(2);
  EmbeddingModel m = random_model(rng, 4, 12);
  const std::size_t before = m.vocab_size();
  prune_lru(m, before + 5, ReferenceTable{});
  CHECK(m.vocab_size() == before);
}

TEST_CASE("hybrid sync pools the worker into the shared model") {
  ModelStore store(Strategy::Hybrid, 2, Pooling::Mean);
  EmbeddingModel w1(2), w2(2);
  put(w1, "shared", {2, 2}, {0, 0});
  put(w1, "a", {1, 0}, {0, 0});
  put(w2, "shared", {6, 6}, {0, 0});
  put(w2, "b", {0, 1}, {0, 0});

  store.sync(w1); // shared model was empty: copy-through
  CHECK(w1.find("shared")->vec == std::vector<float>{2, 2});
  store.sync(w2); // now pooled with w1's contribution
  CHECK(w2.find("shared")->vec == std::vector<float>{4, 4});
  CHECK(w2.find("a") != nullptr);
  CHECK(w2.find("b") != nullptr);
  // the worker receives a copy of the merged shared state
  const EmbeddingModel shared = store.shared_copy();
  CHECK(same_vectors(shared, w2));
}

TEST_CASE("local store sync leaves the worker untouched") {
  ModelStore store(Strategy::Local, 2, Pooling::Mean);
  EmbeddingModel w(2);
  put(w, "x", {5, 5}, {1, 1});
  store.sync(w);
  CHECK(w.find("x")->vec == std::vector<float>{5, 5});
  CHECK(store.shared_copy().vocab_size() == 0);
}

TEST_CASE("count-based merge trigger fires every k batches") {
  MergeTrigger trigger(3, 3600);
  std::vector<bool> fires;
  for (int i = 0; i < 9; ++i) fires.push_back(trigger.fired_on_batch());
  CHECK(fires == std::vector<bool>{false, false, true, false, false, true,
                                   false, false, true});
}

TEST_CASE("period-based trigger does not fire immediately") {
  MergeTrigger trigger(0, 3600);
  for (int i = 0; i < 5; ++i) CHECK_FALSE(trigger.fired_on_batch());
}
