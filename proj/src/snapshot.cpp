#include "plstream/snapshot.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace pls {

namespace {

constexpr char kMagic[4] = {'P', 'L', 'S', 'M'};
constexpr std::uint32_t kVersion = 1;

// x86-64 is little-endian; raw writes of fixed-width integers match the
// on-disk format directly.
template <class T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(value));
}

template <class T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(value));
  if (!in) throw std::runtime_error("snapshot: truncated file");
  return value;
}

} // namespace

void write_snapshot(const EmbeddingModel& model, std::ostream& out) {
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(model.dim()));
  put<std::uint64_t>(out, model.vocab_size());

  // Sorted for a canonical byte stream regardless of hash-map order.
  std::vector<const std::string*> words;
  words.reserve(model.vocab_size());
  for (const auto& [word, entry] : model.entries()) words.push_back(&word);
  std::sort(words.begin(), words.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });

  for (const std::string* word : words) {
    const WordEntry& e = model.entries().at(*word);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(word->size()));
    out.write(word->data(), static_cast<std::streamsize>(word->size()));
    put<std::uint64_t>(out, e.count);
    put<std::uint64_t>(out, e.last_used);
    out.write(reinterpret_cast<const char*>(e.vec.data()),
              static_cast<std::streamsize>(e.vec.size() * sizeof(float)));
    out.write(reinterpret_cast<const char*>(e.ctx.data()),
              static_cast<std::streamsize>(e.ctx.size() * sizeof(float)));
  }
}

EmbeddingModel read_snapshot(std::istream& in) {
  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("snapshot: bad magic");
  const auto version = get<std::uint32_t>(in);
  if (version != kVersion) throw std::runtime_error("snapshot: unsupported version");
  const auto dim = get<std::uint32_t>(in);
  const auto vocab = get<std::uint64_t>(in);

  EmbeddingModel model(dim);
  std::uint64_t max_tick = 0;
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < vocab; ++i) {
    const auto len = get<std::uint32_t>(in);
    std::string word(len, '\0');
    in.read(word.data(), len);
    WordEntry e;
    e.count = get<std::uint64_t>(in);
    e.last_used = get<std::uint64_t>(in);
    e.vec.resize(dim);
    e.ctx.resize(dim);
    in.read(reinterpret_cast<char*>(e.vec.data()),
            static_cast<std::streamsize>(dim * sizeof(float)));
    in.read(reinterpret_cast<char*>(e.ctx.data()),
            static_cast<std::streamsize>(dim * sizeof(float)));
    if (!in) throw std::runtime_error("snapshot: truncated record");
    max_tick = std::max(max_tick, e.last_used);
    total += e.count;
    model.entries().emplace(std::move(word), std::move(e));
  }
  model.advance_tick_to(max_tick);
  model.set_total_tokens(total);
  return model;
}

void save_snapshot(const EmbeddingModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open snapshot for writing: " + path);
  write_snapshot(model, out);
  if (!out) throw std::runtime_error("snapshot write failed: " + path);
}

EmbeddingModel load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open snapshot: " + path);
  return read_snapshot(in);
}

SnapshotInfo snapshot_info(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open snapshot: " + path);
  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("snapshot: bad magic");
  SnapshotInfo info;
  info.version = get<std::uint32_t>(in);
  info.dim = get<std::uint32_t>(in);
  info.vocab_size = get<std::uint64_t>(in);
  return info;
}

} // namespace pls
