#include "plstream/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "plstream/labeller.hpp"

namespace pls {

Lexicon load_lexicon_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon: " + path);
  Lexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    std::string word = line.substr(0, tab);
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    try {
      lex[word] = std::stod(line.substr(tab + 1));
    } catch (const std::exception&) {
      // malformed score, skip the row
    }
  }
  return lex;
}

Lexicon load_sentiwordnet(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sentiwordnet file: " + path);
  std::unordered_map<std::string, std::pair<double, std::uint64_t>> acc;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string pos, id, pos_score, neg_score, terms;
    if (!std::getline(row, pos, '\t') || !std::getline(row, id, '\t') ||
        !std::getline(row, pos_score, '\t') || !std::getline(row, neg_score, '\t') ||
        !std::getline(row, terms, '\t'))
      continue;
    double score;
    try {
      score = std::stod(pos_score) - std::stod(neg_score);
    } catch (const std::exception&) {
      continue;
    }
    // SynsetTerms look like "good#1 well#2"
    std::istringstream term_stream(terms);
    std::string term;
    while (term_stream >> term) {
      const auto hash = term.rfind('#');
      std::string word = hash == std::string::npos ? term : term.substr(0, hash);
      std::transform(word.begin(), word.end(), word.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      auto& [sum, n] = acc[word];
      sum += score;
      ++n;
    }
  }
  Lexicon lex;
  for (const auto& [word, entry] : acc)
    lex[word] = entry.first / static_cast<double>(entry.second);
  return lex;
}

LexiconScore lexicon_score(std::span<const std::string> tokens, const Lexicon& lexicon) {
  LexiconScore r;
  for (const std::string& token : tokens) {
    auto it = lexicon.find(token);
    if (it == lexicon.end()) continue; // unknown tokens contribute 0
    ++r.matched;
    r.total += it->second;
    if (it->second > 0) r.sum_pos += it->second;
    else r.sum_neg += -it->second;
  }
  return r;
}

Polarity lexicon_label(std::span<const std::string> tokens, const Lexicon& lexicon) {
  return lexicon_score(tokens, lexicon).total < 0 ? Polarity::Negative
                                                  : Polarity::Positive;
}

Polarity StreamKMeans::cluster_polarity(int cluster) const {
  if (mapping_fixed_) return cluster == positive_cluster_ ? Polarity::Positive
                                                          : Polarity::Negative;
  // provisional mapping from the accumulated reference margins so far
  const int pos = ref_margin_sum_[0] >= ref_margin_sum_[1] ? 0 : 1;
  return cluster == pos ? Polarity::Positive : Polarity::Negative;
}

StreamKMeans::Assignment StreamKMeans::assign(std::span<const float> centroid_vec,
                                              double ref_margin) {
  // bootstrap: the first two distinct centroids become the centers
  if (counts_[0] == 0) {
    centers_[0].assign(centroid_vec.begin(), centroid_vec.end());
    counts_[0] = 1;
    ref_margin_sum_[0] += ref_margin;
    ++seen_;
    return {cluster_polarity(0), 0};
  }
  if (counts_[1] == 0) {
    if (std::equal(centroid_vec.begin(), centroid_vec.end(), centers_[0].begin(),
                   centers_[0].end())) {
      // identical to center 0: absorb, keep waiting for a distinct point
      ++counts_[0];
      ref_margin_sum_[0] += ref_margin;
      ++seen_;
      return {cluster_polarity(0), 0};
    }
    centers_[1].assign(centroid_vec.begin(), centroid_vec.end());
    counts_[1] = 1;
    ref_margin_sum_[1] += ref_margin;
    ++seen_;
    return {cluster_polarity(1), 1};
  }

  const double d0 = 1.0 - cosine(centroid_vec, centers_[0]);
  const double d1 = 1.0 - cosine(centroid_vec, centers_[1]);
  const int c = d1 < d0 ? 1 : 0;

  ++counts_[c];
  const float inv = 1.0f / static_cast<float>(counts_[c]);
  for (std::size_t i = 0; i < centers_[c].size(); ++i)
    centers_[c][i] += (centroid_vec[i] - centers_[c][i]) * inv;
  ref_margin_sum_[c] += ref_margin;

  if (!mapping_fixed_ && ++seen_ >= calibration_window_) {
    positive_cluster_ = ref_margin_sum_[0] >= ref_margin_sum_[1] ? 0 : 1;
    mapping_fixed_ = true;
  }
  return {cluster_polarity(c), c};
}

} // namespace pls
