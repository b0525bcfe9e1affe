#include "phfeat/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "phfeat/error.hpp"

namespace phfeat {

FeatureGrids fit_grids(std::span<const SubjectBarcodes> subjects, int gamma) {
  std::optional<Range> r0;
  std::optional<Range> r1;
  for (const SubjectBarcodes& s : subjects) {
    for (const Diagram& d : s.per_slice) {
      if (!d.dim0.empty()) r0 = r0 ? merge(*r0, bounds(d.dim0)) : bounds(d.dim0);
      if (!d.dim1.empty()) r1 = r1 ? merge(*r1, bounds(d.dim1)) : bounds(d.dim1);
    }
  }
  return FeatureGrids{SamplingGrid(r0.value_or(Range{}), gamma), SamplingGrid(r1.value_or(Range{}), gamma)};
}

std::string_view to_string(CombineMode m) { return m == CombineMode::Aggregate ? "aggregate" : "concat"; }

std::optional<CombineMode> parse_combine(std::string_view text) {
  if (text == "aggregate") return CombineMode::Aggregate;
  if (text == "concat") return CombineMode::Concat;
  return std::nullopt;
}

namespace {

// Renumbers labels so indices run across the whole dimension block.
void append_block(FeatureVector& out, const FeatureVector& block, int dim, Vectorizer method, std::size_t& next) {
  for (double v : block.values) {
    out.values.push_back(v);
    out.labels.push_back(feature_label(dim, method, next++));
  }
}

}  // namespace

FeatureVector features_aggregate(const SubjectBarcodes& s, const VectorizerConfig& cfg, const FeatureGrids& grids) {
  if (s.per_slice.empty()) throw ShapeError("subject '" + s.id + "' has no barcodes");
  std::vector<Barcode> zero, one;
  for (const Diagram& d : s.per_slice) {
    zero.push_back(d.dim0);
    one.push_back(d.dim1);
  }
  FeatureVector out = vectorize(aggregate(zero), cfg, grids.dim0);
  out.append(vectorize(aggregate(one), cfg, grids.dim1));
  return out;
}

FeatureVector features_concat(const SubjectBarcodes& s, const VectorizerConfig& cfg, const FeatureGrids& grids) {
  if (s.per_slice.empty()) throw ShapeError("subject '" + s.id + "' has no barcodes");
  FeatureVector out;
  out.values.reserve(2 * s.per_slice.size() * cfg.length());
  for (int dim = 0; dim < 2; ++dim) {
    std::size_t next = 0;
    for (const Diagram& d : s.per_slice) {
      append_block(out, vectorize(dim == 0 ? d.dim0 : d.dim1, cfg, grids.for_dim(dim)), dim, cfg.method, next);
    }
  }
  return out;
}

FeatureVector features(const SubjectBarcodes& s, CombineMode mode, const VectorizerConfig& cfg,
                       const FeatureGrids& grids) {
  return mode == CombineMode::Aggregate ? features_aggregate(s, cfg, grids) : features_concat(s, cfg, grids);
}

void check_uniform_slices(std::span<const SubjectBarcodes> subjects) {
  if (subjects.empty()) return;
  const std::size_t n = subjects.front().per_slice.size();
  for (const SubjectBarcodes& s : subjects) {
    if (s.per_slice.size() != n) {
      throw ShapeError("subject '" + s.id + "' has " + std::to_string(s.per_slice.size()) +
                       " slice barcodes per dimension, expected " + std::to_string(n) +
                       " like '" + subjects.front().id + "'");
    }
  }
}

void write_feature_csv(std::ostream& out, const FeatureTable& table) {
  out << "id,label";
  for (const std::string& c : table.columns) out << ',' << c;
  out << '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << table.ids[r] << ',' << table.labels[r];
    for (double v : table.rows[r]) out << ',' << format_real(v);
    out << '\n';
  }
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

FeatureTable read_feature_csv(std::istream& in) {
  FeatureTable table;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("feature CSV: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_commas(line);
  if (header.size() < 2 || header[0] != "id" || header[1] != "label") {
    throw ParseError("feature CSV: header must start with `id,label`");
  }
  table.columns.assign(header.begin() + 2, header.end());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_commas(line);
    if (fields.size() != header.size()) {
      throw ParseError("feature CSV line " + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                       " fields, found " + std::to_string(fields.size()));
    }
    table.ids.push_back(fields[0]);
    table.labels.push_back(fields[1]);
    std::vector<double> row(fields.size() - 2);
    for (std::size_t k = 2; k < fields.size(); ++k) {
      const std::string& f = fields[k];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), row[k - 2]);
      if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(row[k - 2])) {
        throw ParseError("feature CSV line " + std::to_string(lineno) + ": bad value '" + f + "'");
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void seeded_shuffle(std::vector<std::size_t>& items, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t bound = i;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = engine();
    while (x >= limit) x = engine();
    std::swap(items[i - 1], items[static_cast<std::size_t>(x % bound)]);
  }
}

Split stratified_split(std::span<const std::string> labels, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw ParameterError("test fraction must lie in (0, 1)");
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  Split split;
  std::uint64_t stream = seed;
  for (auto& [label, members] : by_class) {
    if (members.size() < 2) {
      throw DataError("class '" + label + "' has " + std::to_string(members.size()) +
                      " subject(s); stratified split needs at least 2");
    }
    seeded_shuffle(members, stream++);
    const double want = std::round(test_fraction * static_cast<double>(members.size()));
    const std::size_t n_test = std::clamp<std::size_t>(static_cast<std::size_t>(want), 1, members.size() - 1);
    split.test.insert(split.test.end(), members.begin(), members.begin() + static_cast<long>(n_test));
    split.train.insert(split.train.end(), members.begin() + static_cast<long>(n_test), members.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

ZScore zscore_fit(const std::vector<std::vector<double>>& train_rows) {
  ZScore z;
  if (train_rows.empty()) return z;
  const std::size_t cols = train_rows.front().size();
  const double n = static_cast<double>(train_rows.size());
  z.means.assign(cols, 0.0);
  z.stds.assign(cols, 0.0);
  for (const auto& row : train_rows)
    for (std::size_t c = 0; c < cols; ++c) z.means[c] += row[c];
  for (double& m : z.means) m /= n;
  for (const auto& row : train_rows)
    for (std::size_t c = 0; c < cols; ++c) z.stds[c] += (row[c] - z.means[c]) * (row[c] - z.means[c]);
  for (std::size_t c = 0; c < cols; ++c) {
    z.stds[c] = std::sqrt(z.stds[c] / n);
    const bool constant = std::all_of(train_rows.begin(), train_rows.end(),
                                      [&](const auto& row) { return row[c] == train_rows.front()[c]; });
    if (constant || !(z.stds[c] > 0.0)) {
      z.means[c] = train_rows.front()[c];
      z.stds[c] = 1.0;
    }
  }
  return z;
}

std::vector<std::vector<double>> zscore_apply(const std::vector<std::vector<double>>& rows, const ZScore& params) {
  std::vector<std::vector<double>> out = rows;
  for (auto& row : out) {
    if (row.size() != params.means.size()) throw ShapeError("z-score: column count mismatch");
    for (std::size_t c = 0; c < row.size(); ++c) row[c] = (row[c] - params.means[c]) / params.stds[c];
  }
  return out;
}

}  // namespace phfeat
