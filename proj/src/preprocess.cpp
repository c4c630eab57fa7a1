#include "plstream/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

namespace pls {

namespace {

// NLTK-style English stopword list. Deliberately excludes sentiment-bearing
// words; note the reference tables contain "still", so it must not be here.
const char* kStopwords[] = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you",
    "your", "yours", "yourself", "yourselves", "he", "him", "his", "himself",
    "she", "her", "hers", "herself", "it", "its", "itself", "they", "them",
    "their", "theirs", "themselves", "what", "which", "who", "whom", "this",
    "that", "these", "those", "am", "is", "are", "was", "were", "be", "been",
    "being", "have", "has", "had", "having", "do", "does", "did", "doing",
    "a", "an", "the", "and", "but", "if", "or", "because", "as", "until",
    "while", "of", "at", "by", "for", "with", "about", "against", "between",
    "into", "through", "during", "before", "after", "above", "below", "to",
    "from", "up", "down", "in", "out", "on", "off", "over", "under", "again",
    "further", "then", "once", "here", "there", "when", "where", "why",
    "how", "all", "any", "both", "each", "few", "more", "most", "other",
    "some", "such", "no", "nor", "not", "only", "own", "same", "so", "than",
    "too", "very", "s", "t", "can", "will", "just", "don", "should", "now",
    "d", "ll", "m", "o", "re", "ve", "y", "ain", "aren", "couldn", "didn",
    "doesn", "hadn", "hasn", "haven", "isn", "ma", "mightn", "mustn",
    "needn", "shan", "shouldn", "wasn", "weren", "won", "wouldn", "im",
    "ive", "id", "dont", "cant", "wont", "didnt", "doesnt", "isnt", "youre",
    "u", "ur", "rt", "amp", "would", "could", "get", "got", "go", "going",
    "one", "also", "us"};

bool is_ascii_digit_or_sep(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == ',' ||
         c == ':' || c == '-' || c == '+' || c == '%';
}

bool is_pure_number(const std::string& tok) {
  bool has_digit = false;
  for (char c : tok) {
    if (std::isdigit(static_cast<unsigned char>(c))) has_digit = true;
    else if (!is_ascii_digit_or_sep(c)) return false;
  }
  return has_digit;
}

bool is_url(const std::string& tok) {
  return tok.find("://") != std::string::npos || tok.rfind("www.", 0) == 0;
}

// Emoticons and similar tokens carry no letters or digits at all.
bool has_letter_or_digit(const std::string& tok) {
  return std::any_of(tok.begin(), tok.end(), [](unsigned char c) {
    return std::isalnum(c) || c >= 0x80; // keep non-ASCII words
  });
}

bool is_edge_punct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u) && c != '@' && c != '#';
}

} // namespace

const StopwordSet& default_stopwords() {
  static const StopwordSet set = [] {
    StopwordSet s;
    for (const char* w : kStopwords) s.insert(w);
    return s;
  }();
  return set;
}

StopwordSet load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword file: " + path);
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) set.insert(line);
  }
  return set;
}

CleanTuple tokenize_and_filter(const Tuple& tuple, const StopwordSet& stopwords) {
  CleanTuple out;
  out.origin = {tuple.seq, tuple.ts};
  out.true_label = tuple.true_label;

  const std::string& text = tuple.text;
  std::size_t i = 0;
  std::string tok;
  while (i <= text.size()) {
    char c = i < text.size() ? text[i] : ' ';
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!tok.empty()) {
        std::transform(tok.begin(), tok.end(), tok.begin(),
                       [](unsigned char ch) { return std::tolower(ch); });
        // URL check before edge stripping: trailing '/' etc. is part of it.
        bool drop = is_url(tok);
        if (!drop) {
          // usernames and hashtags
          if (tok[0] == '@' || tok[0] == '#') drop = true;
        }
        if (!drop) {
          // strip punctuation from the edges only; "don't" keeps its apostrophe
          std::size_t b = 0, e = tok.size();
          while (b < e && is_edge_punct(tok[b])) ++b;
          while (e > b && is_edge_punct(tok[e - 1])) --e;
          tok = tok.substr(b, e - b);
          drop = tok.empty() || !has_letter_or_digit(tok) || is_pure_number(tok) ||
                 stopwords.count(tok) > 0;
        }
        if (!drop) out.tokens.push_back(tok);
        tok.clear();
      }
    } else {
      tok.push_back(c);
    }
    ++i;
  }
  return out;
}

bool Batcher::push(CleanTuple tuple, std::int64_t now_ms) {
  if (current_.tuples.empty()) current_.open_ts = now_ms;
  current_.tuples.push_back(std::move(tuple));
  return current_.tuples.size() >= capacity_;
}

Batch Batcher::flush() {
  Batch out = std::move(current_);
  current_ = Batch{};
  return out;
}

} // namespace pls
