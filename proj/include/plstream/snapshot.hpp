#ifndef PLSTREAM_SNAPSHOT_HPP
#define PLSTREAM_SNAPSHOT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "plstream/embedding.hpp"

namespace pls {

struct SnapshotInfo {
  std::uint32_t version = 0;
  std::uint32_t dim = 0;
  std::uint64_t vocab_size = 0;
};

/// Binary model snapshot, little-endian: magic "PLSM", version, dim, vocab
/// size, then per word: length-prefixed UTF-8 word, count, last_used, and
/// dim float32 input plus dim float32 context components.
void save_snapshot(const EmbeddingModel& model, const std::string& path);
EmbeddingModel load_snapshot(const std::string& path);
SnapshotInfo snapshot_info(const std::string& path);

void write_snapshot(const EmbeddingModel& model, std::ostream& out);
EmbeddingModel read_snapshot(std::istream& in);

} // namespace pls

#endif
