#ifndef PLSTREAM_LABELLER_HPP
#define PLSTREAM_LABELLER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plstream/embedding.hpp"
#include "plstream/trend.hpp"
#include "plstream/types.hpp"

namespace pls {

/// dot(a,b)/(|a||b|); zero-norm inputs yield 0 by convention.
double cosine(std::span<const float> a, std::span<const float> b);

struct Centroid {
  std::vector<float> vec;
  std::size_t known_count = 0;
};

/// Componentwise mean over the tokens present in the model; unknown tokens
/// are skipped. nullopt when no token is known.
std::optional<Centroid> centroid(EmbeddingModel& model,
                                 std::span<const std::string> tokens);

struct ScoreResult {
  double sum_pos = 0.0;
  double sum_neg = 0.0;
  std::size_t pos_covered = 0; // reference positives found in the model
  std::size_t neg_covered = 0;
};

/// One cosine evaluation per reference word; words absent from the model
/// contribute 0. `csc_counter`, when given, counts similarity evaluations
/// (the per-tuple cost is |positive| + |negative| regardless of tuple length).
ScoreResult score(EmbeddingModel& model, std::span<const float> centroid_vec,
                  const ReferenceTable& ref, bool normalize = false,
                  std::uint64_t* csc_counter = nullptr);

/// Positive iff wc_pos*sum_pos > wc_neg*sum_neg; ties and no-known-words fall
/// back to the majority of the current trend window (empty window: Positive).
Polarity decide(double sum_pos, double sum_neg, const TrendState& trend,
                std::size_t known_count);

} // namespace pls

#endif
