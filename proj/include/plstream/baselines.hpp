#ifndef PLSTREAM_BASELINES_HPP
#define PLSTREAM_BASELINES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "plstream/types.hpp"

namespace pls {

/// Word -> polarity score in [-1, 1].
using Lexicon = std::unordered_map<std::string, double>;

/// Loads `word<TAB>score` lines.
Lexicon load_lexicon_tsv(const std::string& path);

/// Loads SentiWordNet 3.0's native format (POS, id, PosScore, NegScore,
/// SynsetTerms, Gloss); a word's score is PosScore - NegScore averaged over
/// its synsets.
Lexicon load_sentiwordnet(const std::string& path);

struct LexiconScore {
  double total = 0.0;
  double sum_pos = 0.0; // positive contributions
  double sum_neg = 0.0; // magnitude of negative contributions
  std::size_t matched = 0; // tokens found in the lexicon
};

LexiconScore lexicon_score(std::span<const std::string> tokens, const Lexicon& lexicon);

/// Positive iff the summed score > 0; ties go Positive.
Polarity lexicon_label(std::span<const std::string> tokens, const Lexicon& lexicon);

/// Streaming 2-means over tuple centroid vectors, cosine distance, running
/// mean centers. Which cluster means "positive" is fixed after a calibration
/// window by comparing the clusters' accumulated reference scores.
class StreamKMeans {
 public:
  explicit StreamKMeans(std::size_t calibration_window = 500)
      : calibration_window_(calibration_window) {}

  struct Assignment {
    Polarity label;
    int cluster = -1; // -1 before both centers exist
  };

  /// Assigns the nearer center and updates it by running mean.
  /// `ref_margin` is the tuple's reference score sum_pos - sum_neg, used only
  /// for cluster->polarity calibration.
  Assignment assign(std::span<const float> centroid_vec, double ref_margin);

  bool initialized() const { return counts_[0] > 0 && counts_[1] > 0; }
  std::span<const float> center(int i) const { return centers_[i]; }
  std::uint64_t count(int i) const { return counts_[i]; }

 private:
  Polarity cluster_polarity(int cluster) const;

  std::size_t calibration_window_;
  std::vector<float> centers_[2];
  std::uint64_t counts_[2] = {0, 0};
  double ref_margin_sum_[2] = {0.0, 0.0};
  std::uint64_t seen_ = 0;
  bool mapping_fixed_ = false;
  int positive_cluster_ = 0;
};

} // namespace pls

#endif
