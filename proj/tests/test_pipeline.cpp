#include <doctest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "plstream/pipeline.hpp"
#include "plstream/snapshot.hpp"
#include "support/synth.hpp"

using namespace pls;

namespace {

struct TempPath {
  std::string path;
  explicit TempPath(std::string p) : path(std::move(p)) {}
  ~TempPath() { std::remove(path.c_str()); }
};

RunConfig small_config(const std::string& input, std::size_t workers = 1) {
  RunConfig c;
  c.input = input;
  c.format = InputFormat::Yelp;
  c.workers = static_cast<unsigned>(workers);
  c.logical_time = true;
  c.hp.batch_size = 50;
  c.hp.dim = 12;
  c.hp.merge_every_k = 5;
  c.hp.tdw = 100;
  c.batch_timeout_ms = 10000; // deterministic: batches close on size only
  c.out_path = "/dev/null";
  c.metrics_out_path = "/dev/null";
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

} // namespace

TEST_CASE("every well-formed input tuple comes out exactly once") {
  const TempPath in("pipe_conserve.csv");
  synth::CorpusSpec spec;
  spec.count = 1200;
  spec.seed = 5;
  synth::write_corpus(in.path, spec);

  RunConfig c = small_config(in.path, 2);
  std::vector<std::uint64_t> seqs;
  RunResult r = run_pipeline(c, [&](const LabelledTuple& t) {
    seqs.push_back(t.origin.seq);
  });
  REQUIRE(r.exit_code == 0);
  CHECK(r.ingested == 1200);
  CHECK(r.labelled == 1200);
  CHECK(seqs.size() == 1200);
  std::set<std::uint64_t> unique(seqs.begin(), seqs.end());
  CHECK(unique.size() == 1200);
  CHECK(*unique.begin() == 0);
  CHECK(*unique.rbegin() == 1199);
}

TEST_CASE("malformed rows are counted and skipped") {
  const TempPath in("pipe_malformed.csv");
  {
    std::ofstream out(in.path, std::ios::binary);
    out << "\"2\",\"lovely place great food\"\n";
    out << "\"7\",\"label out of range\"\n";
    out << "\"1\",\"terrible awful visit\"\n";
    out << "\"2\",\"   \"\n"; // whitespace-only text
  }
  RunConfig c = small_config(in.path);
  RunResult r = run_pipeline(c);
  CHECK(r.exit_code == 0);
  CHECK(r.ingested == 2);
  CHECK(r.malformed == 2);
  CHECK(r.labelled == 2);
}

TEST_CASE("empty input ends cleanly with zero outputs") {
  const TempPath in("pipe_empty.csv");
  { std::ofstream out(in.path); }
  RunConfig c = small_config(in.path);
  RunResult r = run_pipeline(c);
  CHECK(r.exit_code == 0);
  CHECK(r.ingested == 0);
  CHECK(r.labelled == 0);
}

TEST_CASE("missing input file fails with an io error") {
  RunConfig c = small_config("no_such_file_anywhere.csv");
  RunResult r = run_pipeline(c);
  CHECK(r.exit_code == 2);
  CHECK_FALSE(r.error.empty());
}

TEST_CASE("invalid hyperparameters fail validation") {
  RunConfig c = small_config("irrelevant.csv");
  c.hp.dim = 0;
  RunResult r = run_pipeline(c);
  CHECK(r.exit_code == 1);
  CHECK_FALSE(r.error.empty());
}

TEST_CASE("limit stops the source after n tuples") {
  const TempPath in("pipe_limit.csv");
  synth::CorpusSpec spec;
  spec.count = 500;
  spec.seed = 6;
  synth::write_corpus(in.path, spec);
  RunConfig c = small_config(in.path);
  c.limit = 120;
  RunResult r = run_pipeline(c);
  CHECK(r.exit_code == 0);
  CHECK(r.ingested == 120);
  CHECK(r.labelled == 120);
}

TEST_CASE("single-worker logical-time runs are byte-identical") {
  const TempPath in("pipe_det.csv");
  synth::CorpusSpec spec;
  spec.count = 600;
  spec.seed = 9;
  synth::write_corpus(in.path, spec);

  auto run_once = [&](const std::string& out_path) {
    RunConfig c = small_config(in.path);
    c.out_path = out_path;
    RunResult r = run_pipeline(c);
    REQUIRE(r.exit_code == 0);
    return read_file(out_path);
  };
  const TempPath o1("pipe_det1.jsonl"), o2("pipe_det2.jsonl");
  const std::string a = run_once(o1.path);
  const std::string b = run_once(o2.path);
  CHECK(a == b);
  CHECK_FALSE(a.empty());
}

TEST_CASE("output lines carry the full record schema") {
  const TempPath in("pipe_schema.csv");
  synth::CorpusSpec spec;
  spec.count = 80;
  spec.seed = 12;
  synth::write_corpus(in.path, spec);
  const TempPath out("pipe_schema.jsonl");
  RunConfig c = small_config(in.path);
  c.out_path = out.path;
  REQUIRE(run_pipeline(c).exit_code == 0);

  std::ifstream lines(out.path);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("seq"));
    CHECK(j.contains("ts"));
    CHECK(j.contains("emit_ts"));
    CHECK(j.contains("label"));
    CHECK(j.contains("sum_pos"));
    CHECK(j.contains("sum_neg"));
    CHECK(j.contains("known_token_count"));
    CHECK(j.contains("true_label"));
    const std::string label = j["label"];
    CHECK((label == "positive" || label == "negative"));
    // logical time: ts echoes seq
    CHECK(j["ts"] == j["seq"]);
    ++n;
  }
  CHECK(n == 80);
}

TEST_CASE("all three strategies conserve tuples with several workers") {
  const TempPath in("pipe_strats.csv");
  synth::CorpusSpec spec;
  spec.count = 900;
  spec.seed = 14;
  synth::write_corpus(in.path, spec);
  for (Strategy s : {Strategy::Local, Strategy::Global, Strategy::Hybrid}) {
    RunConfig c = small_config(in.path, 3);
    c.hp.strategy = s;
    RunResult r = run_pipeline(c);
    CHECK(r.exit_code == 0);
    CHECK(r.labelled == 900);
  }
}

TEST_CASE("lexicon and kmeans baselines run through the same pipeline") {
  const TempPath in("pipe_algos.csv");
  synth::CorpusSpec spec;
  spec.count = 400;
  spec.seed = 15;
  synth::write_corpus(in.path, spec);

  RunConfig lex = small_config(in.path);
  lex.algo = Algo::Lexicon;
  lex.lexicon_path = std::string(PLS_DATA_DIR) + "/lexicon.tsv";
  RunResult rl = run_pipeline(lex);
  CHECK(rl.exit_code == 0);
  CHECK(rl.labelled == 400);

  RunConfig km = small_config(in.path);
  km.algo = Algo::Kmeans;
  RunResult rk = run_pipeline(km);
  CHECK(rk.exit_code == 0);
  CHECK(rk.labelled == 400);
}

TEST_CASE("snapshot out writes a loadable model, snapshot in warm starts") {
  const TempPath in("pipe_snap.csv");
  synth::CorpusSpec spec;
  spec.count = 300;
  spec.seed = 16;
  synth::write_corpus(in.path, spec);

  const TempPath snap("pipe_model.snap");
  RunConfig c = small_config(in.path);
  c.snapshot_out = snap.path;
  REQUIRE(run_pipeline(c).exit_code == 0);

  EmbeddingModel m = load_snapshot(snap.path);
  CHECK(m.dim() == 12);
  CHECK(m.vocab_size() > 0);

  RunConfig warm = small_config(in.path);
  warm.snapshot_in = snap.path;
  std::size_t known_first_tuple = 0;
  bool first = true;
  RunResult r = run_pipeline(warm, [&](const LabelledTuple& t) {
    if (first) {
      known_first_tuple = t.known_token_count;
      first = false;
    }
  });
  CHECK(r.exit_code == 0);
  // warm start: the very first tuple already has known words
  CHECK(known_first_tuple > 0);
}

TEST_CASE("summary json reports accuracy for labelled streams") {
  const TempPath in("pipe_summary.csv");
  synth::CorpusSpec spec;
  spec.count = 500;
  spec.seed = 17;
  synth::write_corpus(in.path, spec);
  RunConfig c = small_config(in.path);
  RunResult r = run_pipeline(c);
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.summary_json);
  CHECK(j["processed"] == 500);
  CHECK(j.contains("accuracy_cumulative"));
  CHECK(j.contains("p95_latency_ms"));
}

TEST_CASE("tcp source ingests newline-delimited rows until the peer closes") {
  RunConfig c = small_config("tcp://:39471");
  c.logical_time = true;
  c.limit = 2; // the source stops listening once the limit is reached
  std::thread feeder([] {
    // retry until the listener is up
    int fd = -1;
    for (int attempt = 0; attempt < 100; ++attempt) {
      fd = ::socket(AF_INET, SOCK_STREAM, 0);
      sockaddr_in addr{};
      addr.sin_family = AF_INET;
      addr.sin_port = htons(39471);
      addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
      if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) == 0)
        break;
      ::close(fd);
      fd = -1;
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
    if (fd < 0) return; // the ingestion checks below will fail and report
    const char* payload =
        "\"2\",\"great wonderful food\"\n\"1\",\"awful terrible service\"\n";
    (void)!::send(fd, payload, std::strlen(payload), 0);
    ::close(fd);
  });
  RunResult r = run_pipeline(c);
  feeder.join();
  CHECK(r.exit_code == 0);
  CHECK(r.ingested == 2);
  CHECK(r.labelled == 2);
}

TEST_CASE("paced replay takes at least the scheduled time") {
  const TempPath in("pipe_rate.csv");
  synth::CorpusSpec spec;
  spec.count = 100;
  spec.seed = 18;
  synth::write_corpus(in.path, spec);
  RunConfig c = small_config(in.path);
  c.rate = 400.0; // 100 tuples -> >= 0.25 s
  RunResult r = run_pipeline(c);
  CHECK(r.exit_code == 0);
  CHECK(r.elapsed_s >= 0.24);
  CHECK(r.elapsed_s < 5.0);
}
