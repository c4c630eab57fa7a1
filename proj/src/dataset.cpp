#include "plstream/dataset.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

namespace pls {

const char* to_string(InputFormat f) {
  switch (f) {
    case InputFormat::Sentiment140: return "sentiment140";
    case InputFormat::Yelp: return "yelp";
    case InputFormat::Plain: return "plain";
  }
  return "?";
}

std::optional<InputFormat> input_format_from_string(const std::string& s) {
  if (s == "sentiment140") return InputFormat::Sentiment140;
  if (s == "yelp") return InputFormat::Yelp;
  if (s == "plain") return InputFormat::Plain;
  return std::nullopt;
}

bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  int c = in.get();
  if (c == EOF) return false;

  std::string field;
  bool quoted = false;
  while (true) {
    if (quoted) {
      if (c == EOF) break; // unterminated quote: emit what we have
      if (c == '"') {
        int next = in.get();
        if (next == '"') {
          field.push_back('"');
        } else {
          quoted = false;
          c = next;
          continue;
        }
      } else {
        field.push_back(static_cast<char>(c));
      }
    } else {
      if (c == EOF || c == '\n') break;
      if (c == '\r') {
        int next = in.peek();
        if (next == '\n') in.get();
        break;
      }
      if (c == '"' && field.empty()) {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else {
        field.push_back(static_cast<char>(c));
      }
    }
    c = in.get();
  }
  fields.push_back(std::move(field));
  return true;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::optional<DatasetRow> parse_row(const std::vector<std::string>& fields,
                                    InputFormat format) {
  DatasetRow row;
  switch (format) {
    case InputFormat::Sentiment140:
      if (fields.size() != 6) return std::nullopt;
      if (fields[0] == "0") row.label = Polarity::Negative;
      else if (fields[0] == "4") row.label = Polarity::Positive;
      else return std::nullopt;
      row.text = fields[5];
      break;
    case InputFormat::Yelp:
      if (fields.size() != 2) return std::nullopt;
      if (fields[0] == "1") row.label = Polarity::Negative;
      else if (fields[0] == "2") row.label = Polarity::Positive;
      else return std::nullopt;
      row.text = fields[1];
      break;
    case InputFormat::Plain:
      if (fields.empty()) return std::nullopt;
      row.text = fields[0];
      for (std::size_t i = 1; i < fields.size(); ++i) row.text += "," + fields[i];
      break;
  }
  // strip whitespace-only texts at ingestion
  if (row.text.find_first_not_of(" \t\r\n") == std::string::npos) return std::nullopt;
  return row;
}

std::optional<DatasetRow> DatasetReader::next() {
  while (read_csv_record(in_, fields_)) {
    if (fields_.size() == 1 && fields_[0].empty()) continue; // blank line
    if (auto row = parse_row(fields_, format_)) return row;
    ++malformed_;
  }
  return std::nullopt;
}

void write_row(std::ostream& out, const DatasetRow& row, InputFormat format) {
  switch (format) {
    case InputFormat::Sentiment140:
      out << (row.label == Polarity::Positive ? "4" : "0") << ",0,,NO_QUERY,,"
          << csv_quote(row.text) << "\n";
      break;
    case InputFormat::Yelp:
      out << (row.label == Polarity::Positive ? "2" : "1") << ","
          << csv_quote(row.text) << "\n";
      break;
    case InputFormat::Plain: {
      std::string text = row.text;
      for (char& c : text)
        if (c == '\n' || c == '\r') c = ' ';
      out << text << "\n";
      break;
    }
  }
}

std::vector<DatasetRow> load_dataset(const std::string& path, InputFormat format,
                                     std::uint64_t* malformed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset: " + path);
  DatasetReader reader(in, format);
  std::vector<DatasetRow> rows;
  while (auto row = reader.next()) rows.push_back(std::move(*row));
  if (malformed) *malformed = reader.malformed();
  return rows;
}

} // namespace pls
