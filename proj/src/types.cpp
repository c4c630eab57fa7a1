#include "plstream/types.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pls {

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::Local: return "local";
    case Strategy::Global: return "global";
    case Strategy::Hybrid: return "hybrid";
  }
  return "?";
}

const char* to_string(Pooling p) {
  switch (p) {
    case Pooling::Mean: return "mean";
    case Pooling::Min: return "min";
    case Pooling::Max: return "max";
  }
  return "?";
}

std::optional<Strategy> strategy_from_string(const std::string& s) {
  if (s == "local") return Strategy::Local;
  if (s == "global") return Strategy::Global;
  if (s == "hybrid") return Strategy::Hybrid;
  return std::nullopt;
}

std::optional<Pooling> pooling_from_string(const std::string& s) {
  if (s == "mean") return Pooling::Mean;
  if (s == "min") return Pooling::Min;
  if (s == "max") return Pooling::Max;
  return std::nullopt;
}

std::optional<std::string> HyperParams::validate(std::vector<std::string>* warnings) const {
  auto positive = [](auto v) { return v > 0; };
  if (!positive(window)) return "window must be positive";
  if (!positive(dim)) return "dim must be positive";
  if (!positive(batch_size)) return "batch size must be positive";
  if (!positive(tdw)) return "tdw must be positive";
  if (merge_every_k == 0 && !positive(merge_period_s))
    return "merge trigger must be positive";
  if (!positive(mwc)) return "mwc must be positive";
  if (!positive(lru_cap)) return "lru cap must be positive";
  if (!positive(negative_samples)) return "negative sample count must be positive";
  if (!(learning_rate > 0)) return "learning rate must be positive";
  if (ttd_step < 0) return "trend step must be non-negative";
  if (!(wc_min > 0) || wc_max < wc_min) return "invalid trend coefficient clamp";

  if (warnings) {
    auto warn_range = [&](const char* name, double v, double lo, double hi) {
      if (v < lo || v > hi) {
        std::ostringstream os;
        os << name << "=" << v << " outside the usual range [" << lo << ", " << hi << "]";
        warnings->push_back(os.str());
      }
    };
    warn_range("window", window, 1, 10);
    warn_range("dim", dim, 10, 500);
    warn_range("batch", batch_size, 200, 5000);
    warn_range("tdw", tdw, 200, 2000);
    if (merge_every_k == 0) warn_range("merge-period", merge_period_s, 20, 90);
    warn_range("mwc", mwc, 1, 20);
  }
  return std::nullopt;
}

bool ReferenceTable::contains(const std::string& word) const {
  return std::find(positive.begin(), positive.end(), word) != positive.end() ||
         std::find(negative.begin(), negative.end(), word) != negative.end();
}

const ReferenceTable& ReferenceTable::defaults() {
  static const ReferenceTable table{
      {"dazzling", "brilliant", "phenomenal", "excellent", "fantastic",
       "gripping", "mesmerizing", "riveting", "spectacular", "cool",
       "awesome", "thrilling", "moving", "exciting", "love", "wonderful",
       "best", "great", "superb", "still", "beautiful"},
      {"sucks", "terrible", "awful", "unwatchable", "hideous", "bad",
       "cliche", "boring", "stupid", "slow", "worst", "waste", "unexciting",
       "rubbish", "tedious", "unbearable", "pointless", "cheesy",
       "frustrated", "awkward", "disappointing"}};
  return table;
}

ReferenceTable ReferenceTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reference table: " + path);
  ReferenceTable table;
  std::vector<std::string>* section = nullptr;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line == "[positive]") {
      section = &table.positive;
    } else if (line == "[negative]") {
      section = &table.negative;
    } else if (section) {
      std::string word = line;
      std::transform(word.begin(), word.end(), word.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      section->push_back(word);
    } else {
      throw std::runtime_error("reference table: word before any section: " + line);
    }
  }
  if (table.positive.empty() || table.negative.empty())
    throw std::runtime_error("reference table: both sections must be non-empty");
  for (const auto& w : table.positive)
    if (std::find(table.negative.begin(), table.negative.end(), w) != table.negative.end())
      throw std::runtime_error("reference table: word in both sections: " + w);
  return table;
}

} // namespace pls
