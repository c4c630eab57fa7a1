#include "plstream/labeller.hpp"

#include <cmath>

namespace pls {

double cosine(std::span<const float> a, std::span<const float> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::optional<Centroid> centroid(EmbeddingModel& model,
                                 std::span<const std::string> tokens) {
  Centroid c;
  c.vec.assign(model.dim(), 0.0f);
  for (const std::string& token : tokens) {
    auto vec = model.vector_of(token);
    if (!vec) continue;
    for (std::size_t i = 0; i < vec->size(); ++i) c.vec[i] += (*vec)[i];
    ++c.known_count;
  }
  if (c.known_count == 0) return std::nullopt;
  const float inv = 1.0f / static_cast<float>(c.known_count);
  for (float& v : c.vec) v *= inv;
  return c;
}

ScoreResult score(EmbeddingModel& model, std::span<const float> centroid_vec,
                  const ReferenceTable& ref, bool normalize,
                  std::uint64_t* csc_counter) {
  ScoreResult r;
  auto side = [&](const std::vector<std::string>& words, double& sum,
                  std::size_t& covered) {
    for (const std::string& word : words) {
      if (csc_counter) ++*csc_counter;
      auto vec = model.vector_of(word);
      if (!vec) continue; // contributes 0
      sum += cosine(centroid_vec, *vec);
      ++covered;
    }
  };
  side(ref.positive, r.sum_pos, r.pos_covered);
  side(ref.negative, r.sum_neg, r.neg_covered);
  if (normalize) {
    if (r.pos_covered > 0) r.sum_pos /= static_cast<double>(r.pos_covered);
    if (r.neg_covered > 0) r.sum_neg /= static_cast<double>(r.neg_covered);
  }
  return r;
}

Polarity decide(double sum_pos, double sum_neg, const TrendState& trend,
                std::size_t known_count) {
  if (known_count == 0) return trend.majority();
  const double pos = trend.wc_pos() * sum_pos;
  const double neg = trend.wc_neg() * sum_neg;
  if (pos > neg) return Polarity::Positive;
  if (pos < neg) return Polarity::Negative;
  return trend.majority();
}

} // namespace pls
