#include "plstream/regen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

namespace pls {

RegenSkewResult regen_skew(const std::string& in_path, const std::string& out_path,
                           InputFormat format, double pos_fraction,
                           std::uint64_t seed) {
  if (pos_fraction < 0.0 || pos_fraction > 1.0)
    throw std::invalid_argument("pos_fraction must be in [0, 1]");
  if (format == InputFormat::Plain)
    throw std::invalid_argument("skew regeneration needs a labelled format");

  std::vector<DatasetRow> rows = load_dataset(in_path, format);
  std::vector<std::size_t> pos_idx, neg_idx;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    (rows[i].label == Polarity::Positive ? pos_idx : neg_idx).push_back(i);
  }

  // Largest replacement-free sample hitting the fraction: take all of one
  // class and size the other to match.
  std::size_t take_pos, take_neg;
  if (pos_fraction <= 0.0) {
    take_pos = 0;
    take_neg = neg_idx.size();
  } else if (pos_fraction >= 1.0) {
    take_pos = pos_idx.size();
    take_neg = 0;
  } else {
    const double avail_ratio =
        static_cast<double>(pos_idx.size()) /
        std::max<double>(1.0, static_cast<double>(neg_idx.size()));
    const double want_ratio = pos_fraction / (1.0 - pos_fraction);
    if (avail_ratio >= want_ratio) {
      take_neg = neg_idx.size();
      take_pos = static_cast<std::size_t>(
          std::min<double>(static_cast<double>(pos_idx.size()),
                           want_ratio * static_cast<double>(take_neg) + 0.5));
    } else {
      take_pos = pos_idx.size();
      take_neg = static_cast<std::size_t>(
          std::min<double>(static_cast<double>(neg_idx.size()),
                           static_cast<double>(take_pos) / want_ratio + 0.5));
    }
  }
  if (take_pos > pos_idx.size() || take_neg > neg_idx.size() ||
      take_pos + take_neg == 0)
    throw std::runtime_error("dataset too small for the requested skew");

  std::mt19937_64 rng(seed);
  std::shuffle(pos_idx.begin(), pos_idx.end(), rng);
  std::shuffle(neg_idx.begin(), neg_idx.end(), rng);

  std::vector<std::size_t> chosen(pos_idx.begin(), pos_idx.begin() + take_pos);
  chosen.insert(chosen.end(), neg_idx.begin(), neg_idx.begin() + take_neg);
  std::shuffle(chosen.begin(), chosen.end(), rng);

  const double got = static_cast<double>(take_pos) /
                     static_cast<double>(take_pos + take_neg);
  if (std::abs(got - pos_fraction) > 0.005)
    throw std::runtime_error("cannot hit the requested positive fraction within 0.5%");

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output: " + out_path);
  for (std::size_t i : chosen) write_row(out, rows[i], format);
  return {take_pos + take_neg, take_pos};
}

void regen_by_length(const std::string& in_path, InputFormat format,
                     std::vector<LengthBucket>& buckets,
                     const StopwordSet& stopwords) {
  if (buckets.empty()) throw std::invalid_argument("no length buckets configured");
  std::vector<std::ofstream> outs;
  outs.reserve(buckets.size());
  for (const LengthBucket& b : buckets) {
    outs.emplace_back(b.out_path, std::ios::binary);
    if (!outs.back()) throw std::runtime_error("cannot open output: " + b.out_path);
  }

  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset: " + in_path);
  DatasetReader reader(in, format);
  while (auto row = reader.next()) {
    Tuple t;
    t.text = row->text;
    const std::size_t len = tokenize_and_filter(t, stopwords).tokens.size();
    std::size_t slot = buckets.size() - 1;
    for (std::size_t i = 0; i < buckets.size(); ++i) {
      if (len <= buckets[i].max_tokens) {
        slot = i;
        break;
      }
    }
    write_row(outs[slot], *row, format);
    ++buckets[slot].count;
  }
}

} // namespace pls
