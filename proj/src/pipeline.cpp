#include "plstream/pipeline.hpp"

#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "plstream/baselines.hpp"
#include "plstream/channel.hpp"
#include "plstream/embedding.hpp"
#include "plstream/labeller.hpp"
#include "plstream/metrics.hpp"
#include "plstream/model_mgmt.hpp"
#include "plstream/preprocess.hpp"
#include "plstream/snapshot.hpp"
#include "plstream/trend.hpp"

namespace pls {

namespace {

std::atomic<bool> g_stop{false};

std::int64_t wall_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

struct SourceStats {
  std::uint64_t ingested = 0;
  std::uint64_t malformed = 0;
  bool io_error = false;
  std::string error;
};

void file_source(const RunConfig& cfg, BoundedChannel<Tuple>& out, SourceStats& stats) {
  std::ifstream in(cfg.input, std::ios::binary);
  if (!in) {
    stats.io_error = true;
    stats.error = "cannot open input: " + cfg.input;
    return;
  }
  DatasetReader reader(in, cfg.format);
  const auto start = std::chrono::steady_clock::now();
  std::uint64_t seq = 0;
  while (!g_stop.load(std::memory_order_relaxed)) {
    auto row = reader.next();
    if (!row) break;
    if (cfg.rate > 0) {
      const auto due = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                   std::chrono::duration<double>(
                                       static_cast<double>(seq) / cfg.rate));
      std::this_thread::sleep_until(due);
    }
    Tuple t;
    t.seq = seq++;
    t.ts = cfg.logical_time ? static_cast<std::int64_t>(t.seq) : wall_ms();
    t.text = std::move(row->text);
    t.true_label = row->label;
    out.push(std::move(t));
    if (cfg.limit > 0 && seq >= cfg.limit) break;
  }
  stats.ingested = seq;
  stats.malformed = reader.malformed();
}

void socket_source(int port, const RunConfig& cfg, BoundedChannel<Tuple>& out,
                   SourceStats& stats) {
  int server = ::socket(AF_INET, SOCK_STREAM, 0);
  if (server < 0) {
    stats.io_error = true;
    stats.error = "socket() failed";
    return;
  }
  int one = 1;
  ::setsockopt(server, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_ANY);
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::bind(server, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0 ||
      ::listen(server, 4) < 0) {
    stats.io_error = true;
    stats.error = "cannot listen on port " + std::to_string(port);
    ::close(server);
    return;
  }
  // accept-loop with a poll timeout so stop requests are honored
  timeval tv{1, 0};
  ::setsockopt(server, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
  std::uint64_t seq = 0;
  bool done = false;
  while (!done && !g_stop.load(std::memory_order_relaxed)) {
    int client = ::accept(server, nullptr, nullptr);
    if (client < 0) continue;
    ::setsockopt(client, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
    std::string buffer;
    char chunk[4096];
    bool open = true;
    while (open && !done && !g_stop.load(std::memory_order_relaxed)) {
      const ssize_t n = ::read(client, chunk, sizeof(chunk));
      if (n == 0) open = false;
      else if (n < 0) continue; // timeout, re-check stop flag
      else buffer.append(chunk, static_cast<std::size_t>(n));
      std::size_t pos;
      while ((pos = buffer.find('\n')) != std::string::npos) {
        std::string line = buffer.substr(0, pos);
        buffer.erase(0, pos + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        // each line is one record in the configured format
        std::istringstream record(line);
        std::vector<std::string> fields;
        std::optional<DatasetRow> row;
        if (read_csv_record(record, fields)) row = parse_row(fields, cfg.format);
        if (!row) {
          ++stats.malformed;
          continue;
        }
        Tuple t;
        t.seq = seq++;
        t.ts = wall_ms(); // arrival time
        t.text = std::move(row->text);
        t.true_label = row->label;
        out.push(std::move(t));
        if (cfg.limit > 0 && seq >= cfg.limit) {
          done = true;
          break;
        }
      }
    }
    ::close(client);
  }
  ::close(server);
  stats.ingested = seq;
}

struct WorkerOutput {
  LabelledTuple tuple;
};

class Worker {
 public:
  Worker(const RunConfig& cfg, unsigned id, ModelStore* store,
         const ReferenceTable& ref, const Lexicon* lexicon)
      : cfg_(cfg), id_(id), store_(store), ref_(ref), lexicon_(lexicon),
        model_(cfg.hp.dim),
        rng_(cfg.seed + 0x9e3779b97f4a7c15ULL * (id + 1)),
        trend_(TrendState::from(cfg.hp)),
        trigger_(cfg.hp.merge_every_k, cfg.hp.merge_period_s) {
    if (!cfg.ttd_enabled) {
      // trend disabled: coefficients pinned at 1, window only feeds the
      // tie/no-known-words fallback
      trend_ = TrendState(cfg.hp.tdw, 0.0, cfg.hp.ttd_hysteresis, cfg.hp.wc_min,
                          cfg.hp.wc_max);
    }
  }

  void warm_start(const EmbeddingModel& snapshot) { model_ = snapshot; }
  EmbeddingModel& model() { return model_; }

  void process(const Batch& batch, std::vector<LabelledTuple>& out) {
    const bool global = store_ && store_->strategy() == Strategy::Global;
    if (global) {
      std::lock_guard lock(store_->mutex());
      process_on(store_->shared(), batch, out);
    } else {
      process_on(model_, batch, out);
    }
    if (trigger_.fired_on_batch()) on_trigger(global);
  }

 private:
  void process_on(EmbeddingModel& model, const Batch& batch,
                  std::vector<LabelledTuple>& out) {
    const bool trains = cfg_.algo != Algo::Lexicon;
    if (trains) {
      observe_vocab(model, batch, cfg_.hp.mwc, rng_);
      train_batch(model, batch, cfg_.hp, rng_, table_);
    }
    for (const CleanTuple& tuple : batch.tuples) {
      LabelledTuple lt;
      lt.origin = tuple.origin;
      lt.true_label = tuple.true_label;
      label(model, tuple, lt);
      lt.emit_ts = cfg_.logical_time ? tuple.origin.ts : wall_ms();
      out.push_back(std::move(lt));
    }
  }

  void label(EmbeddingModel& model, const CleanTuple& tuple, LabelledTuple& lt) {
    switch (cfg_.algo) {
      case Algo::Wcd: {
        auto c = centroid(model, tuple.tokens);
        if (c) {
          lt.known_token_count = c->known_count;
          const ScoreResult s =
              score(model, c->vec, ref_, cfg_.normalize_reference_sums);
          lt.sum_pos = s.sum_pos;
          lt.sum_neg = s.sum_neg;
        }
        lt.label = decide(lt.sum_pos, lt.sum_neg, trend_, lt.known_token_count);
        trend_.record(lt.label);
        break;
      }
      case Algo::Lexicon: {
        const LexiconScore s = lexicon_score(tuple.tokens, *lexicon_);
        lt.sum_pos = s.sum_pos;
        lt.sum_neg = s.sum_neg;
        lt.known_token_count = s.matched;
        lt.label = s.total < 0 ? Polarity::Negative : Polarity::Positive;
        break;
      }
      case Algo::Kmeans: {
        auto c = centroid(model, tuple.tokens);
        if (!c) {
          lt.label = Polarity::Positive;
          break;
        }
        lt.known_token_count = c->known_count;
        const ScoreResult s =
            score(model, c->vec, ref_, cfg_.normalize_reference_sums);
        lt.sum_pos = s.sum_pos;
        lt.sum_neg = s.sum_neg;
        lt.label = kmeans_.assign(c->vec, s.sum_pos - s.sum_neg).label;
        break;
      }
    }
  }

  void on_trigger(bool global) {
    if (cfg_.algo == Algo::Lexicon) return;
    if (store_ && store_->strategy() == Strategy::Hybrid) {
      store_->sync(model_);
    }
    if (global) {
      std::lock_guard lock(store_->mutex());
      prune_lru(store_->shared(), cfg_.hp.lru_cap, ref_);
      table_.build(store_->shared(), cfg_.hp.mwc);
    } else {
      prune_lru(model_, cfg_.hp.lru_cap, ref_);
      table_.build(model_, cfg_.hp.mwc);
    }
  }

  const RunConfig& cfg_;
  unsigned id_;
  ModelStore* store_; // null under the local strategy
  const ReferenceTable& ref_;
  const Lexicon* lexicon_;
  EmbeddingModel model_;
  NegativeTable table_;
  Rng rng_;
  TrendState trend_;
  MergeTrigger trigger_;
  StreamKMeans kmeans_;
};

void write_labelled_json(std::ostream& out, const LabelledTuple& t) {
  nlohmann::ordered_json j;
  j["seq"] = t.origin.seq;
  j["ts"] = t.origin.ts;
  j["emit_ts"] = t.emit_ts;
  j["label"] = to_string(t.label);
  j["sum_pos"] = t.sum_pos;
  j["sum_neg"] = t.sum_neg;
  j["known_token_count"] = t.known_token_count;
  if (t.true_label) j["true_label"] = to_string(*t.true_label);
  out << j.dump() << "\n";
}

} // namespace

void request_stop() { g_stop.store(true, std::memory_order_relaxed); }
void reset_stop() { g_stop.store(false, std::memory_order_relaxed); }

RunResult run_pipeline(const RunConfig& cfg,
                       const std::function<void(const LabelledTuple&)>& tap) {
  RunResult result;

  // --- config validation (exit code 1) ---
  std::vector<std::string> warnings;
  if (auto err = cfg.hp.validate(&warnings)) {
    result.exit_code = 1;
    result.error = *err;
    return result;
  }
  if (cfg.input.empty()) {
    result.exit_code = 1;
    result.error = "no input configured";
    return result;
  }
  if (cfg.workers == 0) {
    result.exit_code = 1;
    result.error = "workers must be >= 1";
    return result;
  }
  if (cfg.algo == Algo::Lexicon && cfg.lexicon_path.empty()) {
    result.exit_code = 1;
    result.error = "the lexicon baseline needs --lexicon";
    return result;
  }
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";

  try {
    const ReferenceTable ref = cfg.reference_path.empty()
                                   ? ReferenceTable::defaults()
                                   : ReferenceTable::load(cfg.reference_path);
    const StopwordSet stopwords = cfg.stopwords_path.empty()
                                      ? default_stopwords()
                                      : load_stopwords(cfg.stopwords_path);
    std::optional<Lexicon> lexicon;
    if (!cfg.lexicon_path.empty()) {
      lexicon = cfg.lexicon_sentiwordnet ? load_sentiwordnet(cfg.lexicon_path)
                                         : load_lexicon_tsv(cfg.lexicon_path);
    }

    std::unique_ptr<ModelStore> store;
    if (cfg.hp.strategy != Strategy::Local)
      store = std::make_unique<ModelStore>(cfg.hp.strategy, cfg.hp.dim, cfg.hp.pooling);

    std::optional<EmbeddingModel> warm;
    if (!cfg.snapshot_in.empty()) {
      warm = load_snapshot(cfg.snapshot_in);
      if (warm->dim() != cfg.hp.dim)
        throw std::runtime_error("snapshot dimension does not match --dim");
    }

    std::vector<std::unique_ptr<Worker>> workers;
    for (unsigned i = 0; i < cfg.workers; ++i) {
      workers.push_back(std::make_unique<Worker>(cfg, i, store.get(), ref,
                                                 lexicon ? &*lexicon : nullptr));
      if (warm) workers.back()->warm_start(*warm);
    }
    if (warm && store) {
      std::lock_guard lock(store->mutex());
      store->shared() = *warm;
    }

    BoundedChannel<Tuple> raw_chan(cfg.queue_capacity);
    std::vector<std::unique_ptr<BoundedChannel<Batch>>> batch_chans;
    for (unsigned i = 0; i < cfg.workers; ++i)
      batch_chans.push_back(std::make_unique<BoundedChannel<Batch>>(cfg.queue_capacity));
    BoundedChannel<LabelledTuple> out_chan(cfg.queue_capacity * cfg.workers);

    const auto t_start = std::chrono::steady_clock::now();

    // --- source ---
    SourceStats stats;
    std::thread source_thread([&] {
      if (cfg.input.rfind("tcp://:", 0) == 0) {
        socket_source(std::stoi(cfg.input.substr(7)), cfg, raw_chan, stats);
      } else {
        file_source(cfg, raw_chan, stats);
      }
      raw_chan.close();
    });

    // --- preprocess + batch, round-robin over workers ---
    std::thread batch_thread([&] {
      Batcher batcher(cfg.hp.batch_size);
      std::size_t rr = 0;
      auto dispatch = [&] {
        if (batcher.empty()) return;
        batch_chans[rr % cfg.workers]->push(batcher.flush());
        ++rr;
      };
      const auto timeout = std::chrono::milliseconds(cfg.batch_timeout_ms);
      while (true) {
        std::optional<Tuple> tuple;
        if (batcher.empty()) {
          tuple = raw_chan.pop();
          if (!tuple) break;
        } else {
          bool timed_out = false;
          const auto deadline = std::chrono::steady_clock::time_point(
                                    std::chrono::steady_clock::duration(0)) +
                                std::chrono::milliseconds(batcher.open_ts()) + timeout;
          tuple = raw_chan.pop_until(deadline, &timed_out);
          if (!tuple) {
            if (timed_out) {
              dispatch();
              continue;
            }
            break; // closed and drained
          }
        }
        const auto now_steady = std::chrono::duration_cast<std::chrono::milliseconds>(
                                    std::chrono::steady_clock::now().time_since_epoch())
                                    .count();
        if (batcher.push(tokenize_and_filter(*tuple, stopwords), now_steady)) dispatch();
      }
      dispatch(); // end-of-stream flush
      for (auto& ch : batch_chans) ch->close();
    });

    // --- workers ---
    std::vector<std::thread> worker_threads;
    for (unsigned i = 0; i < cfg.workers; ++i) {
      worker_threads.emplace_back([&, i] {
        std::vector<LabelledTuple> out;
        while (auto batch = batch_chans[i]->pop()) {
          out.clear();
          workers[i]->process(*batch, out);
          for (LabelledTuple& t : out) out_chan.push(std::move(t));
        }
      });
    }

    // --- sink + metrics ---
    std::uint64_t labelled = 0;
    MetricsTracker tracker;
    std::thread sink_thread([&] {
      std::ofstream out_file, metrics_file;
      std::ostream* out = &std::cout;
      if (!cfg.out_path.empty() && cfg.out_path != "-") {
        out_file.open(cfg.out_path, std::ios::binary);
        if (!out_file) {
          std::cerr << "cannot open output: " << cfg.out_path << "\n";
          request_stop();
          return;
        }
        out = &out_file;
      }
      std::ostream* metrics = &std::cerr;
      if (!cfg.metrics_out_path.empty()) {
        metrics_file.open(cfg.metrics_out_path, std::ios::binary);
        if (metrics_file) metrics = &metrics_file;
      }
      auto last_report = std::chrono::steady_clock::now();
      while (auto t = out_chan.pop()) {
        write_labelled_json(*out, *t);
        tracker.add(*t);
        if (tap) tap(*t);
        ++labelled;
        const auto now = std::chrono::steady_clock::now();
        const double since = std::chrono::duration<double>(now - last_report).count();
        if (cfg.report_interval_s > 0 && since >= cfg.report_interval_s) {
          *metrics << tracker.snapshot(since).to_json() << "\n";
          last_report = now;
        }
      }
      out->flush();
    });

    source_thread.join();
    batch_thread.join();
    for (auto& t : worker_threads) t.join();
    out_chan.close();
    sink_thread.join();

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    if (!cfg.snapshot_out.empty()) {
      EmbeddingModel final_model(cfg.hp.dim);
      if (store) {
        if (cfg.hp.strategy == Strategy::Hybrid)
          for (auto& w : workers) store->sync(w->model());
        final_model = store->shared_copy();
      } else {
        for (auto& w : workers)
          final_model = merge(final_model, w->model(), cfg.hp.pooling);
      }
      save_snapshot(final_model, cfg.snapshot_out);
    }

    result.ingested = stats.ingested;
    result.malformed = stats.malformed;
    result.labelled = labelled;
    result.elapsed_s = elapsed;
    result.summary_json = tracker.final_report(elapsed).to_json();
    if (stats.io_error) {
      result.exit_code = 2;
      result.error = stats.error;
    }
  } catch (const std::exception& e) {
    result.exit_code = 2;
    result.error = e.what();
  }
  return result;
}

} // namespace pls
