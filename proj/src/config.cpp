#include "plstream/config.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pls {

const char* to_string(Algo a) {
  switch (a) {
    case Algo::Wcd: return "wcd";
    case Algo::Lexicon: return "lexicon";
    case Algo::Kmeans: return "kmeans";
  }
  return "?";
}

std::optional<Algo> algo_from_string(const std::string& s) {
  if (s == "wcd") return Algo::Wcd;
  if (s == "lexicon") return Algo::Lexicon;
  if (s == "kmeans") return Algo::Kmeans;
  return std::nullopt;
}

std::string RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["input"] = input;
  j["format"] = pls::to_string(format);
  j["rate"] = rate;
  j["limit"] = limit;
  j["algo"] = pls::to_string(algo);
  j["workers"] = workers;
  j["seed"] = seed;
  j["strategy"] = pls::to_string(hp.strategy);
  j["pooling"] = pls::to_string(hp.pooling);
  j["window"] = hp.window;
  j["dim"] = hp.dim;
  j["batch"] = hp.batch_size;
  j["batch_timeout_ms"] = batch_timeout_ms;
  j["tdw"] = hp.tdw;
  j["merge_period_s"] = hp.merge_period_s;
  j["merge_every_k"] = hp.merge_every_k;
  j["mwc"] = hp.mwc;
  j["lru_cap"] = hp.lru_cap;
  j["negative_samples"] = hp.negative_samples;
  j["learning_rate"] = hp.learning_rate;
  j["subsample"] = hp.subsample;
  j["ttd_enabled"] = ttd_enabled;
  j["ttd_step"] = hp.ttd_step;
  j["ttd_hysteresis"] = hp.ttd_hysteresis;
  j["wc_min"] = hp.wc_min;
  j["wc_max"] = hp.wc_max;
  j["normalize_reference_sums"] = normalize_reference_sums;
  j["reference"] = reference_path;
  j["stopwords"] = stopwords_path;
  j["lexicon"] = lexicon_path;
  j["lexicon_sentiwordnet"] = lexicon_sentiwordnet;
  j["queue_capacity"] = queue_capacity;
  j["logical_time"] = logical_time;
  j["out"] = out_path;
  j["metrics_out"] = metrics_out_path;
  j["report_interval_s"] = report_interval_s;
  j["snapshot_out"] = snapshot_out;
  j["snapshot_in"] = snapshot_in;
  return j.dump();
}

RunConfig RunConfig::from_json(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  RunConfig c;
  auto opt = [&](const char* key, auto& field) {
    if (auto it = j.find(key); it != j.end()) it->get_to(field);
  };
  opt("input", c.input);
  if (auto it = j.find("format"); it != j.end()) {
    auto f = input_format_from_string(it->get<std::string>());
    if (!f) throw std::invalid_argument("unknown input format");
    c.format = *f;
  }
  opt("rate", c.rate);
  opt("limit", c.limit);
  if (auto it = j.find("algo"); it != j.end()) {
    auto a = algo_from_string(it->get<std::string>());
    if (!a) throw std::invalid_argument("unknown algorithm");
    c.algo = *a;
  }
  opt("workers", c.workers);
  opt("seed", c.seed);
  if (auto it = j.find("strategy"); it != j.end()) {
    auto s = strategy_from_string(it->get<std::string>());
    if (!s) throw std::invalid_argument("unknown strategy");
    c.hp.strategy = *s;
  }
  if (auto it = j.find("pooling"); it != j.end()) {
    auto p = pooling_from_string(it->get<std::string>());
    if (!p) throw std::invalid_argument("unknown pooling");
    c.hp.pooling = *p;
  }
  opt("window", c.hp.window);
  opt("dim", c.hp.dim);
  opt("batch", c.hp.batch_size);
  opt("batch_timeout_ms", c.batch_timeout_ms);
  opt("tdw", c.hp.tdw);
  opt("merge_period_s", c.hp.merge_period_s);
  opt("merge_every_k", c.hp.merge_every_k);
  opt("mwc", c.hp.mwc);
  opt("lru_cap", c.hp.lru_cap);
  opt("negative_samples", c.hp.negative_samples);
  opt("learning_rate", c.hp.learning_rate);
  opt("subsample", c.hp.subsample);
  opt("ttd_enabled", c.ttd_enabled);
  opt("ttd_step", c.hp.ttd_step);
  opt("ttd_hysteresis", c.hp.ttd_hysteresis);
  opt("wc_min", c.hp.wc_min);
  opt("wc_max", c.hp.wc_max);
  opt("normalize_reference_sums", c.normalize_reference_sums);
  opt("reference", c.reference_path);
  opt("stopwords", c.stopwords_path);
  opt("lexicon", c.lexicon_path);
  opt("lexicon_sentiwordnet", c.lexicon_sentiwordnet);
  opt("queue_capacity", c.queue_capacity);
  opt("logical_time", c.logical_time);
  opt("out", c.out_path);
  opt("metrics_out", c.metrics_out_path);
  opt("report_interval_s", c.report_interval_s);
  opt("snapshot_out", c.snapshot_out);
  opt("snapshot_in", c.snapshot_in);
  return c;
}

} // namespace pls
