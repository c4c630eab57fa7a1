// Command-line front end. Talks to the engine exclusively through the C API;
// run configurations are composed as the JSON documents the engine accepts.
#include <cstdio>
#include <cstdlib>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "plstream.h"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct RunFlags {
  std::string config_path;
  std::string input;
  std::string format = "plain";
  std::string algo = "wcd";
  unsigned workers = 1;
  std::string strategy = "hybrid";
  unsigned merge_period = 30;
  unsigned merge_every_k = 0;
  unsigned batch = 2000;
  unsigned batch_timeout_ms = 500;
  unsigned dim = 20;
  unsigned window = 5;
  unsigned tdw = 1000;
  double ttd_step = 0.05;
  bool no_ttd = false;
  unsigned mwc = 1;
  unsigned lru_cap = 50000;
  unsigned negative = 5;
  double learning_rate = 0.025;
  std::uint64_t seed = 42;
  std::uint64_t limit = 0;
  std::string rate = "max";
  std::string out;
  std::string metrics_out;
  std::string reference;
  std::string stopwords;
  std::string lexicon;
  bool lexicon_sentiwordnet = false;
  bool normalize_reference_sums = false;
  bool logical_time = false;
  std::string pooling = "mean";
  std::string snapshot_out;
  std::string snapshot_in;
  double report_interval = 5.0;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config_path, "key=value config file; flags override it");
  cmd->add_option("--input", f.input, "input file path or tcp://:PORT");
  cmd->add_option("--format", f.format, "input format")
      ->check(CLI::IsMember({"sentiment140", "yelp", "plain"}));
  cmd->add_option("--algo", f.algo, "labelling algorithm")
      ->check(CLI::IsMember({"wcd", "lexicon", "kmeans"}));
  cmd->add_option("--workers", f.workers, "parallel train+label workers");
  cmd->add_option("--strategy", f.strategy, "model management strategy")
      ->check(CLI::IsMember({"local", "global", "hybrid"}));
  cmd->add_option("--merge-period", f.merge_period, "model merge period, seconds");
  cmd->add_option("--merge-every-k", f.merge_every_k,
                  "merge every K batches instead of by wall clock");
  cmd->add_option("--batch", f.batch, "tuples per training batch");
  cmd->add_option("--batch-timeout-ms", f.batch_timeout_ms,
                  "flush an underfull batch after this long");
  cmd->add_option("--dim", f.dim, "embedding dimension");
  cmd->add_option("--window", f.window, "training context window");
  cmd->add_option("--tdw", f.tdw, "trend detection window, tuples");
  cmd->add_option("--ttd-step", f.ttd_step, "trend coefficient step size");
  cmd->add_flag("--no-ttd", f.no_ttd, "disable temporal trend detection");
  cmd->add_option("--mwc", f.mwc, "minimum word count before training");
  cmd->add_option("--lru-cap", f.lru_cap, "vocabulary cap for LRU pruning");
  cmd->add_option("--negative", f.negative, "negative samples per pair");
  cmd->add_option("--learning-rate", f.learning_rate, "SGNS learning rate");
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--limit", f.limit, "stop after N tuples (0 = all)");
  cmd->add_option("--rate", f.rate, "replay rate in tuples/s, or 'max'");
  cmd->add_option("--out", f.out, "labelled output JSONL ('-' = stdout)");
  cmd->add_option("--metrics-out", f.metrics_out, "metrics report JSONL file");
  cmd->add_option("--reference", f.reference, "reference table file");
  cmd->add_option("--stopwords", f.stopwords, "stopword file");
  cmd->add_option("--lexicon", f.lexicon, "lexicon file for the lexicon baseline");
  cmd->add_flag("--lexicon-sentiwordnet", f.lexicon_sentiwordnet,
                "treat --lexicon as SentiWordNet 3.0 format");
  cmd->add_flag("--normalize-reference-sums", f.normalize_reference_sums,
                "divide each reference sum by its covered count");
  cmd->add_flag("--logical-time", f.logical_time,
                "deterministic logical timestamps (reproducible runs)");
  cmd->add_option("--pooling", f.pooling, "merge pooling rule")
      ->check(CLI::IsMember({"mean", "min", "max"}));
  cmd->add_option("--snapshot-out", f.snapshot_out, "save the final model here");
  cmd->add_option("--snapshot-in", f.snapshot_in, "warm-start from this snapshot");
  cmd->add_option("--report-interval", f.report_interval, "metrics interval, seconds");
}

json parse_config_value(const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) {
      if (d == static_cast<long long>(d) && v.find('.') == std::string::npos)
        return static_cast<long long>(d);
      return d;
    }
  } catch (const std::exception&) {
  }
  return v;
}

ordered_json build_config(const RunFlags& f, const CLI::App* cmd) {
  ordered_json cfg = ordered_json::object();
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + f.config_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(0, eq);
      std::string value = line.substr(eq + 1);
      cfg[key] = parse_config_value(value);
    }
  }

  auto flag_set = [&](const std::string& name) { return cmd->count(name) > 0; };
  auto put = [&](const char* key, const std::string& flag, const json& value) {
    if (flag_set(flag) || !cfg.contains(key)) cfg[key] = value;
  };
  put("input", "--input", f.input);
  put("format", "--format", f.format);
  put("algo", "--algo", f.algo);
  put("workers", "--workers", f.workers);
  put("strategy", "--strategy", f.strategy);
  put("merge_period_s", "--merge-period", f.merge_period);
  put("merge_every_k", "--merge-every-k", f.merge_every_k);
  put("batch", "--batch", f.batch);
  put("batch_timeout_ms", "--batch-timeout-ms", f.batch_timeout_ms);
  put("dim", "--dim", f.dim);
  put("window", "--window", f.window);
  put("tdw", "--tdw", f.tdw);
  put("ttd_step", "--ttd-step", f.ttd_step);
  put("ttd_enabled", "--no-ttd", !f.no_ttd);
  put("mwc", "--mwc", f.mwc);
  put("lru_cap", "--lru-cap", f.lru_cap);
  put("negative_samples", "--negative", f.negative);
  put("learning_rate", "--learning-rate", f.learning_rate);
  put("seed", "--seed", f.seed);
  put("limit", "--limit", f.limit);
  put("rate", "--rate", f.rate == "max" ? 0.0 : std::stod(f.rate));
  put("out", "--out", f.out);
  put("metrics_out", "--metrics-out", f.metrics_out);
  put("reference", "--reference", f.reference);
  put("stopwords", "--stopwords", f.stopwords);
  put("lexicon", "--lexicon", f.lexicon);
  put("lexicon_sentiwordnet", "--lexicon-sentiwordnet", f.lexicon_sentiwordnet);
  put("normalize_reference_sums", "--normalize-reference-sums",
      f.normalize_reference_sums);
  put("logical_time", "--logical-time", f.logical_time);
  put("pooling", "--pooling", f.pooling);
  put("snapshot_out", "--snapshot-out", f.snapshot_out);
  put("snapshot_in", "--snapshot-in", f.snapshot_in);
  put("report_interval_s", "--report-interval", f.report_interval);
  return cfg;
}

int run_engine(const ordered_json& cfg, bool quiet, std::string* summary_out) {
  std::cerr << "config: " << cfg.dump() << "\n";
  pls_engine* engine = pls_engine_create(cfg.dump().c_str());
  if (!engine) {
    std::cerr << "error: out of memory\n";
    return PLS_ERR_RUNTIME;
  }
  const int rc = pls_engine_run(engine);
  if (rc != PLS_OK) {
    std::cerr << "error: " << pls_engine_error(engine) << "\n";
  } else if (!quiet) {
    std::cerr << "summary: " << pls_engine_summary(engine) << "\n"
              << "ingested=" << pls_engine_ingested(engine)
              << " malformed=" << pls_engine_malformed(engine)
              << " labelled=" << pls_engine_labelled(engine) << " elapsed_s="
              << pls_engine_elapsed_seconds(engine) << "\n";
  }
  if (summary_out) *summary_out = pls_engine_summary(engine);
  pls_engine_destroy(engine);
  return rc;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void on_signal(int) { pls_request_stop(); }

} // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  CLI::App app{"Online polarity labelling of text streams"};
  app.require_subcommand(1);

  // --- run ---
  RunFlags run_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "execute the labelling pipeline");
  add_run_flags(run_cmd, run_flags);

  // --- bench ---
  RunFlags bench_flags;
  std::string bench_csv = "bench.csv";
  std::string algos = "wcd";
  std::string workers_list, strategy_list, batch_list, dim_list, skew_list;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "run an experiment grid and emit a summary CSV");
  add_run_flags(bench_cmd, bench_flags);
  bench_cmd->add_option("--csv", bench_csv, "summary CSV output path");
  bench_cmd->add_option("--algos", algos, "comma-separated algorithms");
  bench_cmd->add_option("--workers-list", workers_list, "comma-separated worker counts");
  bench_cmd->add_option("--strategy-list", strategy_list, "comma-separated strategies");
  bench_cmd->add_option("--batch-list", batch_list, "comma-separated batch sizes");
  bench_cmd->add_option("--dim-list", dim_list, "comma-separated dimensions");
  bench_cmd->add_option("--skew-list", skew_list,
                        "comma-separated positive fractions; regenerates the input per run");

  // --- regen ---
  CLI::App* regen_cmd = app.add_subcommand("regen", "dataset regeneration tools");
  regen_cmd->require_subcommand(1);
  std::string rg_input, rg_out, rg_format = "yelp", rg_prefix = "bucket";
  double rg_fraction = 0.5;
  std::uint64_t rg_seed = 42;
  std::string rg_bounds = "30,100,300";
  CLI::App* skew_cmd = regen_cmd->add_subcommand("skew", "resample to a positive fraction");
  skew_cmd->add_option("--input", rg_input)->required();
  skew_cmd->add_option("--out", rg_out)->required();
  skew_cmd->add_option("--format", rg_format)
      ->check(CLI::IsMember({"sentiment140", "yelp"}));
  skew_cmd->add_option("--fraction", rg_fraction)->required();
  skew_cmd->add_option("--seed", rg_seed);
  CLI::App* length_cmd =
      regen_cmd->add_subcommand("length", "partition by post-filter token count");
  length_cmd->add_option("--input", rg_input)->required();
  length_cmd->add_option("--format", rg_format)
      ->check(CLI::IsMember({"sentiment140", "yelp"}));
  length_cmd->add_option("--bounds", rg_bounds, "inclusive upper bounds, ascending");
  length_cmd->add_option("--out-prefix", rg_prefix, "bucket files get _N.csv suffixes");

  // --- snapshot / restore ---
  RunFlags snap_flags;
  CLI::App* snap_cmd =
      app.add_subcommand("snapshot", "run the pipeline and save the final model");
  add_run_flags(snap_cmd, snap_flags);
  std::string restore_model;
  RunFlags restore_flags;
  CLI::App* restore_cmd =
      app.add_subcommand("restore", "inspect a snapshot; with --input, resume from it");
  restore_cmd->add_option("--model", restore_model, "snapshot path")->required();
  add_run_flags(restore_cmd, restore_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : PLS_ERR_CONFIG;
  }

  try {
    if (run_cmd->parsed()) {
      return run_engine(build_config(run_flags, run_cmd), false, nullptr);
    }

    if (snap_cmd->parsed()) {
      if (snap_flags.snapshot_out.empty()) {
        std::cerr << "error: snapshot requires --snapshot-out\n";
        return PLS_ERR_CONFIG;
      }
      return run_engine(build_config(snap_flags, snap_cmd), false, nullptr);
    }

    if (restore_cmd->parsed()) {
      char err[256] = {0};
      uint32_t version = 0, dim = 0;
      uint64_t vocab = 0;
      const int rc = pls_snapshot_info(restore_model.c_str(), &version, &dim, &vocab,
                                       err, sizeof(err));
      if (rc != PLS_OK) {
        std::cerr << "error: " << err << "\n";
        return rc;
      }
      std::cout << "snapshot version=" << version << " dim=" << dim
                << " vocab=" << vocab << "\n";
      if (restore_cmd->count("--input") > 0) {
        restore_flags.snapshot_in = restore_model;
        auto cfg = build_config(restore_flags, restore_cmd);
        cfg["snapshot_in"] = restore_model;
        return run_engine(cfg, false, nullptr);
      }
      return PLS_OK;
    }

    if (skew_cmd->parsed()) {
      char err[256] = {0};
      const int rc = pls_regen_skew(rg_input.c_str(), rg_out.c_str(),
                                    rg_format.c_str(), rg_fraction, rg_seed, err,
                                    sizeof(err));
      if (rc != PLS_OK) std::cerr << "error: " << err << "\n";
      return rc;
    }

    if (length_cmd->parsed()) {
      std::vector<size_t> bounds;
      for (const std::string& b : split_csv(rg_bounds))
        bounds.push_back(static_cast<size_t>(std::stoull(b)));
      std::vector<std::string> paths;
      std::vector<const char*> cpaths;
      for (size_t i = 0; i <= bounds.size(); ++i)
        paths.push_back(rg_prefix + "_" + std::to_string(i) + ".csv");
      for (const auto& p : paths) cpaths.push_back(p.c_str());
      char err[256] = {0};
      const int rc = pls_regen_by_length(rg_input.c_str(), rg_format.c_str(),
                                         bounds.data(), bounds.size(), cpaths.data(),
                                         err, sizeof(err));
      if (rc != PLS_OK) {
        std::cerr << "error: " << err << "\n";
      } else {
        for (const auto& p : paths) std::cout << p << "\n";
      }
      return rc;
    }

    if (bench_cmd->parsed()) {
      std::ofstream csv(bench_csv);
      if (!csv) {
        std::cerr << "error: cannot open " << bench_csv << "\n";
        return PLS_ERR_RUNTIME;
      }
      csv << "algo,workers,strategy,batch,dim,skew,throughput,p95_latency_ms,"
             "accuracy_cumulative,accuracy_window,f1\n";
      auto or_default = [](const std::string& list, const std::string& fallback) {
        return list.empty() ? split_csv(fallback) : split_csv(list);
      };
      const auto algo_values = split_csv(algos);
      const auto worker_values = or_default(workers_list, std::to_string(bench_flags.workers));
      const auto strategy_values = or_default(strategy_list, bench_flags.strategy);
      const auto batch_values = or_default(batch_list, std::to_string(bench_flags.batch));
      const auto dim_values = or_default(dim_list, std::to_string(bench_flags.dim));
      const auto skew_values = skew_list.empty() ? std::vector<std::string>{""}
                                                 : split_csv(skew_list);
      for (const auto& skew : skew_values) {
        std::string input = bench_flags.input;
        if (!skew.empty()) {
          input = bench_flags.input + ".skew" + skew + ".csv";
          char err[256] = {0};
          const int rc = pls_regen_skew(bench_flags.input.c_str(), input.c_str(),
                                        bench_flags.format.c_str(), std::stod(skew),
                                        bench_flags.seed, err, sizeof(err));
          if (rc != PLS_OK) {
            std::cerr << "error: " << err << "\n";
            return rc;
          }
        }
        for (const auto& algo : algo_values)
          for (const auto& workers : worker_values)
            for (const auto& strategy : strategy_values)
              for (const auto& batch : batch_values)
                for (const auto& dim : dim_values) {
                  RunFlags f = bench_flags;
                  f.input = input;
                  f.algo = algo;
                  f.workers = static_cast<unsigned>(std::stoul(workers));
                  f.strategy = strategy;
                  f.batch = static_cast<unsigned>(std::stoul(batch));
                  f.dim = static_cast<unsigned>(std::stoul(dim));
                  auto cfg = build_config(f, bench_cmd);
                  cfg["algo"] = algo;
                  cfg["workers"] = f.workers;
                  cfg["strategy"] = strategy;
                  cfg["batch"] = f.batch;
                  cfg["dim"] = f.dim;
                  if (cfg.value("out", std::string()).empty()) cfg["out"] = "/dev/null";
                  std::string summary;
                  const int rc = run_engine(cfg, true, &summary);
                  if (rc != PLS_OK) return rc;
                  const json s = json::parse(summary);
                  auto num = [&](const char* key) {
                    return s.contains(key) ? std::to_string(s[key].get<double>())
                                           : std::string();
                  };
                  csv << algo << "," << workers << "," << strategy << "," << batch
                      << "," << dim << "," << skew << "," << num("throughput") << ","
                      << num("p95_latency_ms") << "," << num("accuracy_cumulative")
                      << "," << num("accuracy_window") << "," << num("f1") << "\n";
                  csv.flush();
                }
      }
      std::cerr << "wrote " << bench_csv << "\n";
      return PLS_OK;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return PLS_ERR_RUNTIME;
  }
  return PLS_ERR_CONFIG;
}
