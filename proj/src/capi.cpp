#include "plstream.h"

#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "plstream/pipeline.hpp"
#include "plstream/regen.hpp"
#include "plstream/snapshot.hpp"

namespace {

void fill_errbuf(char* errbuf, size_t len, const std::string& msg) {
  if (!errbuf || len == 0) return;
  std::strncpy(errbuf, msg.c_str(), len - 1);
  errbuf[len - 1] = '\0';
}

} // namespace

struct pls_engine {
  std::string config_json;
  pls::RunResult last;
};

extern "C" {

const char* pls_version(void) { return "0.1.0"; }

pls_engine* pls_engine_create(const char* config_json) {
  if (!config_json) return nullptr;
  auto* engine = new (std::nothrow) pls_engine;
  if (engine) engine->config_json = config_json;
  return engine;
}

void pls_engine_destroy(pls_engine* engine) { delete engine; }

int pls_engine_run(pls_engine* engine) {
  if (!engine) return PLS_ERR_CONFIG;
  pls::RunConfig cfg;
  try {
    cfg = pls::RunConfig::from_json(engine->config_json);
  } catch (const std::exception& e) {
    engine->last = pls::RunResult{};
    engine->last.exit_code = PLS_ERR_CONFIG;
    engine->last.error = e.what();
    return PLS_ERR_CONFIG;
  }
  engine->last = pls::run_pipeline(cfg);
  return engine->last.exit_code;
}

const char* pls_engine_error(const pls_engine* engine) {
  return engine ? engine->last.error.c_str() : "null engine";
}

const char* pls_engine_summary(const pls_engine* engine) {
  return engine ? engine->last.summary_json.c_str() : "";
}

uint64_t pls_engine_ingested(const pls_engine* engine) {
  return engine ? engine->last.ingested : 0;
}

uint64_t pls_engine_malformed(const pls_engine* engine) {
  return engine ? engine->last.malformed : 0;
}

uint64_t pls_engine_labelled(const pls_engine* engine) {
  return engine ? engine->last.labelled : 0;
}

double pls_engine_elapsed_seconds(const pls_engine* engine) {
  return engine ? engine->last.elapsed_s : 0.0;
}

void pls_request_stop(void) { pls::request_stop(); }

int pls_regen_skew(const char* in_path, const char* out_path, const char* format,
                   double pos_fraction, uint64_t seed, char* errbuf,
                   size_t errbuf_len) {
  if (!in_path || !out_path || !format) {
    fill_errbuf(errbuf, errbuf_len, "null argument");
    return PLS_ERR_CONFIG;
  }
  const auto fmt = pls::input_format_from_string(format);
  if (!fmt) {
    fill_errbuf(errbuf, errbuf_len, "unknown format");
    return PLS_ERR_CONFIG;
  }
  try {
    pls::regen_skew(in_path, out_path, *fmt, pos_fraction, seed);
    return PLS_OK;
  } catch (const std::invalid_argument& e) {
    fill_errbuf(errbuf, errbuf_len, e.what());
    return PLS_ERR_CONFIG;
  } catch (const std::exception& e) {
    fill_errbuf(errbuf, errbuf_len, e.what());
    return PLS_ERR_RUNTIME;
  }
}

int pls_regen_by_length(const char* in_path, const char* format,
                        const size_t* bounds, size_t n_bounds,
                        const char* const* out_paths, char* errbuf,
                        size_t errbuf_len) {
  if (!in_path || !format || !out_paths || (n_bounds > 0 && !bounds)) {
    fill_errbuf(errbuf, errbuf_len, "null argument");
    return PLS_ERR_CONFIG;
  }
  const auto fmt = pls::input_format_from_string(format);
  if (!fmt) {
    fill_errbuf(errbuf, errbuf_len, "unknown format");
    return PLS_ERR_CONFIG;
  }
  try {
    std::vector<pls::LengthBucket> buckets;
    for (size_t i = 0; i < n_bounds; ++i)
      buckets.push_back({bounds[i], out_paths[i], 0});
    buckets.push_back({SIZE_MAX, out_paths[n_bounds], 0});
    pls::regen_by_length(in_path, *fmt, buckets, pls::default_stopwords());
    return PLS_OK;
  } catch (const std::invalid_argument& e) {
    fill_errbuf(errbuf, errbuf_len, e.what());
    return PLS_ERR_CONFIG;
  } catch (const std::exception& e) {
    fill_errbuf(errbuf, errbuf_len, e.what());
    return PLS_ERR_RUNTIME;
  }
}

int pls_snapshot_info(const char* path, uint32_t* version, uint32_t* dim,
                      uint64_t* vocab_size, char* errbuf, size_t errbuf_len) {
  if (!path) {
    fill_errbuf(errbuf, errbuf_len, "null path");
    return PLS_ERR_CONFIG;
  }
  try {
    const pls::SnapshotInfo info = pls::snapshot_info(path);
    if (version) *version = info.version;
    if (dim) *dim = info.dim;
    if (vocab_size) *vocab_size = info.vocab_size;
    return PLS_OK;
  } catch (const std::exception& e) {
    fill_errbuf(errbuf, errbuf_len, e.what());
    return PLS_ERR_RUNTIME;
  }
}

} // extern "C"
