#include "synth.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <stdexcept>

#include "plstream/types.hpp"

namespace pls::synth {

namespace {

const std::vector<std::string> kExtraPositive = {
    "amazing",    "tasty",     "delicious", "friendly",  "perfect",
    "charming",   "delightful", "enjoyable", "pleasant",  "lovely",
    "incredible", "fabulous",  "terrific",  "outstanding", "satisfying",
    "fresh",      "happy",     "fun",       "nice",      "warm"};

const std::vector<std::string> kExtraNegative = {
    "horrible", "nasty",     "bland",      "dirty",      "rude",
    "mediocre", "gross",     "annoying",   "dreadful",   "lousy",
    "overpriced", "stale",   "filthy",     "unfriendly", "disgusting",
    "miserable", "noisy",    "chaotic",    "broken",     "messy"};

const char* kTopicWords[] = {
    // restaurant
    "pizza", "burger", "menu", "waiter", "table", "dinner", "lunch", "chef",
    "kitchen", "sauce", "salad", "steak", "dessert", "coffee", "plate",
    "order", "bill", "portion", "flavor", "drink",
    // movies
    "movie", "film", "actor", "scene", "plot", "director", "screen",
    "character", "ending", "script", "cinema", "camera", "sequel", "cast",
    "dialogue", "trailer", "drama", "comedy", "thriller", "documentary",
    // hotel
    "hotel", "room", "bed", "lobby", "checkin", "shower", "towel", "pillow",
    "reception", "floor", "window", "elevator", "suite", "breakfast", "pool",
    "parking", "wifi", "view", "balcony", "luggage",
    // shopping
    "store", "price", "shirt", "shoes", "brand", "cashier", "discount",
    "receipt", "return", "size", "color", "fabric", "quality", "package",
    "shipping", "warranty", "gadget", "battery", "phone", "laptop",
    // travel
    "flight", "airport", "train", "ticket", "seat", "journey", "luggages",
    "crew", "delay", "gate", "boarding", "window2", "city", "tour", "museum",
    "beach", "guide", "map", "bus", "taxi",
    // sports
    "game", "team", "coach", "player", "goal", "match", "season", "stadium",
    "fans", "score", "league", "referee", "training", "defense", "striker",
    "tournament", "winner", "racket", "court", "pitch"};
constexpr std::size_t kWordsPerTopic = 20;

const char* kFillers[] = {"the", "and", "was", "it", "to", "of", "for", "this",
                          "that", "with", "very", "so", "a", "is", "at", "on"};

const char* kTweetNoise[] = {"@user123", "@friend", "#fun", "#news", "42",
                             "2021", ":)", ":(", "!!!", "http://t.co/abc",
                             "www.example.com"};

} // namespace

const std::vector<std::string>& positive_words() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> w = ReferenceTable::defaults().positive;
    w.insert(w.end(), kExtraPositive.begin(), kExtraPositive.end());
    return w;
  }();
  return words;
}

const std::vector<std::string>& negative_words() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> w = ReferenceTable::defaults().negative;
    w.insert(w.end(), kExtraNegative.begin(), kExtraNegative.end());
    return w;
  }();
  return words;
}

std::vector<DatasetRow> make_rows(const CorpusSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> len_dist(spec.mean_len, spec.len_spread);
  const unsigned topics =
      std::min<unsigned>(spec.topics, sizeof(kTopicWords) / sizeof(char*) / kWordsPerTopic);
  // mildly skewed in-topic ranks so word frequencies are uneven
  std::geometric_distribution<unsigned> rank(0.15);

  std::vector<DatasetRow> rows;
  rows.reserve(spec.count);
  const bool tweet = spec.format == InputFormat::Sentiment140;
  for (std::size_t i = 0; i < spec.count; ++i) {
    const bool positive = unif(rng) < spec.pos_fraction;
    const unsigned topic = static_cast<unsigned>(rng() % topics);
    const unsigned len = static_cast<unsigned>(
        std::clamp<double>(len_dist(rng), 4.0, spec.mean_len * 3.0));

    std::string text;
    for (unsigned t = 0; t < len; ++t) {
      const double roll = unif(rng);
      std::string word;
      if (roll < spec.p_sentiment) {
        const bool own = unif(rng) >= spec.cross_noise;
        const auto& pool = (positive == own) ? positive_words() : negative_words();
        word = pool[rng() % pool.size()];
      } else if (roll < spec.p_sentiment + spec.p_filler) {
        if (tweet && unif(rng) < 0.25) {
          word = kTweetNoise[rng() % (sizeof(kTweetNoise) / sizeof(char*))];
        } else {
          word = kFillers[rng() % (sizeof(kFillers) / sizeof(char*))];
        }
      } else if (roll < spec.p_sentiment + spec.p_filler + spec.p_rare &&
                 spec.rare_vocab > 0) {
        // long vocabulary tail: most of these appear only a handful of times
        word = "zq" + std::to_string(rng() % spec.rare_vocab);
      } else {
        const unsigned r =
            std::min<unsigned>(rank(rng), static_cast<unsigned>(kWordsPerTopic - 1));
        word = kTopicWords[topic * kWordsPerTopic + r];
      }
      if (!text.empty()) text.push_back(' ');
      text += word;
    }
    DatasetRow row;
    row.label = positive ? Polarity::Positive : Polarity::Negative;
    row.text = std::move(text);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t write_corpus(const std::string& path, const CorpusSpec& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  std::size_t positives = 0;
  for (const DatasetRow& row : make_rows(spec)) {
    if (row.label == Polarity::Positive) ++positives;
    write_row(out, row, spec.format);
  }
  return positives;
}

} // namespace pls::synth
