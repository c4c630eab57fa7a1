#ifndef PLSTREAM_DATASET_HPP
#define PLSTREAM_DATASET_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "plstream/types.hpp"

namespace pls {

enum class InputFormat : std::uint8_t { Sentiment140, Yelp, Plain };

const char* to_string(InputFormat f);
std::optional<InputFormat> input_format_from_string(const std::string& s);

struct DatasetRow {
  std::optional<Polarity> label;
  std::string text;
};

/// Reads one RFC 4180 record (quoted fields may contain commas, quotes and
/// newlines). Returns false at end of stream.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields);

std::string csv_quote(const std::string& field);

/// Parses one record per the format's column layout.
/// Sentiment140: polarity{0,4}, id, date, query, user, text.
/// Yelp polarity: label{1,2}, text.  Plain: the raw line is the text.
/// nullopt when the record is malformed.
std::optional<DatasetRow> parse_row(const std::vector<std::string>& fields,
                                    InputFormat format);

/// Streaming dataset reader; counts malformed rows instead of failing.
class DatasetReader {
 public:
  DatasetReader(std::istream& in, InputFormat format) : in_(in), format_(format) {}

  /// Next well-formed row; skips and counts malformed ones.
  std::optional<DatasetRow> next();
  std::uint64_t malformed() const { return malformed_; }

 private:
  std::istream& in_;
  InputFormat format_;
  std::vector<std::string> fields_;
  std::uint64_t malformed_ = 0;
};

void write_row(std::ostream& out, const DatasetRow& row, InputFormat format);

/// Loads a whole labelled dataset into memory (regen tooling only).
std::vector<DatasetRow> load_dataset(const std::string& path, InputFormat format,
                                     std::uint64_t* malformed = nullptr);

} // namespace pls

#endif
