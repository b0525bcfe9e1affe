#include "phfeat/barcode.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "phfeat/error.hpp"

namespace phfeat {

Bar finite_bar(double birth, double death) {
  if (!(birth <= death)) {
    throw ParameterError("bar with birth " + format_real(birth) + " after death " + format_real(death));
  }
  return Bar{birth, death, false};
}

Bar essential_bar(double birth, double cap) {
  if (!(birth <= cap)) {
    throw ParameterError("essential bar born at " + format_real(birth) + " after cap " + format_real(cap));
  }
  return Bar{birth, cap, true};
}

Range merge(const Range& a, const Range& b) {
  return Range{std::min(a.t_min, b.t_min), std::max(a.t_max, b.t_max)};
}

Barcode::Barcode(int dim, std::vector<Bar> bars) : dim_(dim), bars_(std::move(bars)) {
  for (const Bar& bar : bars_) {
    if (!(bar.birth <= bar.death)) {
      throw ParameterError("bar with birth after death in dim " + std::to_string(dim));
    }
  }
}

void Barcode::push_back(const Bar& bar) {
  if (!(bar.birth <= bar.death)) {
    throw ParameterError("bar with birth after death in dim " + std::to_string(dim_));
  }
  bars_.push_back(bar);
}

Barcode aggregate(std::span<const Barcode> barcodes) {
  if (barcodes.empty()) return Barcode{};
  const int dim = barcodes.front().dim();
  std::size_t total = 0;
  for (const Barcode& b : barcodes) {
    if (b.dim() != dim) {
      throw DimensionMismatch("cannot aggregate barcodes of dimension " + std::to_string(dim) +
                              " and " + std::to_string(b.dim()));
    }
    total += b.size();
  }
  std::vector<Bar> bars;
  bars.reserve(total);
  for (const Barcode& b : barcodes) bars.insert(bars.end(), b.bars().begin(), b.bars().end());
  return Barcode(dim, std::move(bars));
}

Range bounds(const Barcode& barcode) {
  if (barcode.empty()) return Range{0.0, 1.0};
  Range r{barcode.bars().front().birth, barcode.bars().front().death};
  for (const Bar& bar : barcode.bars()) {
    r.t_min = std::min(r.t_min, bar.birth);
    r.t_max = std::max(r.t_max, bar.death);
  }
  return r;
}

std::string format_real(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

void write_barcode_csv(std::ostream& out, std::span<const Barcode> barcodes) {
  out << "dim,birth,death,essential\n";
  for (const Barcode& b : barcodes) {
    for (const Bar& bar : b.bars()) {
      out << b.dim() << ',' << format_real(bar.birth) << ',' << format_real(bar.death) << ','
          << (bar.essential ? 1 : 0) << '\n';
    }
  }
}

namespace {

double parse_double(const std::string& field, std::size_t line) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("line " + std::to_string(line) + ": not a number: '" + field + "'");
  }
  return v;
}

}  // namespace

std::vector<Barcode> read_barcode_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "dim,birth,death,essential") {
    throw ParseError("line 1: expected header 'dim,birth,death,essential'");
  }
  std::vector<Barcode> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string f[4];
    for (int i = 0; i < 4; ++i) {
      if (!std::getline(ss, f[i], ',')) throw ParseError("line " + std::to_string(lineno) + ": expected 4 fields");
    }
    const int dim = static_cast<int>(parse_double(f[0], lineno));
    Bar bar{parse_double(f[1], lineno), parse_double(f[2], lineno), f[3] == "1"};
    if (out.empty() || out.back().dim() != dim) out.emplace_back(dim);
    out.back().push_back(bar);
  }
  return out;
}

}  // namespace phfeat
