#include "phfeat/image.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

#include <json.hpp>

#include "phfeat/error.hpp"

namespace phfeat {

GrayImage::GrayImage(int width, int height, std::vector<double> pixels, std::string id)
    : width_(width), height_(height), pixels_(std::move(pixels)), id_(std::move(id)) {
  if (width <= 0 || height <= 0) throw ParameterError("image dimensions must be positive");
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ShapeError("pixel count " + std::to_string(pixels_.size()) + " does not match " +
                     std::to_string(width) + "x" + std::to_string(height));
  }
  for (double v : pixels_) {
    if (!std::isfinite(v)) throw ParameterError("non-finite pixel intensity");
  }
}

GrayImage GrayImage::filled(int width, int height, double value, std::string id) {
  return GrayImage(width, height,
                   std::vector<double>(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), value),
                   std::move(id));
}

namespace {

class PgmReader {
 public:
  explicit PgmReader(std::string_view bytes) : bytes_(bytes) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("PGM byte offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view token() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])) && bytes_[pos_] != '#') ++pos_;
    if (start == pos_) fail("unexpected end of data");
    return bytes_.substr(start, pos_ - start);
  }

  long integer(const char* what) {
    const std::size_t start = (skip_space_and_comments(), pos_);
    const std::string_view tok = token();
    long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      pos_ = start;
      fail(std::string("expected integer ") + what);
    }
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  unsigned char byte_at(std::size_t i) const { return static_cast<unsigned char>(bytes_[i]); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage load_pgm(std::string_view bytes) {
  PgmReader r(bytes);
  const std::string_view magic = r.token();
  const bool ascii = magic == "P2";
  if (!ascii && magic != "P5") {
    throw ParseError("PGM byte offset 0: bad magic '" + std::string(magic) + "'");
  }
  const long width = r.integer("width");
  const long height = r.integer("height");
  const long maxval = r.integer("maxval");
  if (width <= 0 || height <= 0) r.fail("non-positive dimensions");
  if (maxval <= 0 || maxval > 65535) r.fail("maxval out of range 1..65535");

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> pixels(count);
  if (ascii) {
    for (std::size_t i = 0; i < count; ++i) {
      const long v = r.integer("pixel");
      if (v < 0 || v > maxval) r.fail("pixel exceeds maxval");
      pixels[i] = static_cast<double>(v);
    }
  } else {
    // Exactly one whitespace byte separates maxval from the raster.
    if (r.remaining() == 0) r.fail("missing raster");
    r.advance(1);
    const std::size_t bpp = maxval < 256 ? 1 : 2;
    if (r.remaining() < count * bpp) {
      r.advance(r.remaining());
      r.fail("truncated raster: need " + std::to_string(count * bpp) + " bytes");
    }
    const std::size_t base = r.pos();
    for (std::size_t i = 0; i < count; ++i) {
      long v = r.byte_at(base + i * bpp);
      if (bpp == 2) v = (v << 8) | r.byte_at(base + i * bpp + 1);
      if (v > maxval) {
        r.advance(i * bpp);
        r.fail("pixel exceeds maxval");
      }
      pixels[i] = static_cast<double>(v);
    }
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

namespace {

void check_pgm_representable(const GrayImage& img) {
  for (double v : img.pixels()) {
    if (v < 0 || v > 65535 || v != std::floor(v)) {
      throw ParameterError("PGM requires integer intensities in [0, 65535]");
    }
  }
}

long pgm_maxval(const GrayImage& img) {
  const double mx = *std::max_element(img.pixels().begin(), img.pixels().end());
  return mx < 256 ? 255 : 65535;
}

}  // namespace

std::string save_pgm(const GrayImage& img) {
  check_pgm_representable(img);
  const long maxval = pgm_maxval(img);
  std::string out = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n" +
                    std::to_string(maxval) + "\n";
  for (double v : img.pixels()) {
    const auto u = static_cast<unsigned>(v);
    if (maxval > 255) out.push_back(static_cast<char>(u >> 8));
    out.push_back(static_cast<char>(u & 0xff));
  }
  return out;
}

std::string save_pgm_ascii(const GrayImage& img) {
  check_pgm_representable(img);
  std::ostringstream out;
  out << "P2\n" << img.width() << ' ' << img.height() << '\n' << pgm_maxval(img) << '\n';
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) out << (x ? " " : "") << static_cast<long>(img.at(x, y));
    out << '\n';
  }
  return out.str();
}

GrayImage load_csv_matrix(std::string_view text) {
  std::vector<double> pixels;
  int width = -1;
  int height = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    ++height;
    int cols = 0;
    std::size_t fpos = 0;
    while (true) {
      std::size_t comma = line.find(',', fpos);
      std::string_view field = line.substr(fpos, comma == std::string_view::npos ? std::string_view::npos : comma - fpos);
      const auto b = field.find_first_not_of(" \t");
      const auto e = field.find_last_not_of(" \t");
      field = b == std::string_view::npos ? std::string_view{} : field.substr(b, e - b + 1);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError("CSV row " + std::to_string(height) + ": not a number: '" + std::string(field) + "'");
      }
      pixels.push_back(v);
      ++cols;
      if (comma == std::string_view::npos) break;
      fpos = comma + 1;
    }
    if (width < 0) {
      width = cols;
    } else if (cols != width) {
      throw ParseError("CSV row " + std::to_string(height) + ": expected " + std::to_string(width) +
                       " values, found " + std::to_string(cols));
    }
  }
  if (height == 0) throw ParseError("CSV row 1: empty matrix");
  return GrayImage(width, height, std::move(pixels));
}

std::string save_csv_matrix(const GrayImage& img) {
  std::string out;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (x) out.push_back(',');
      char buf[64];
      auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), img.at(x, y));
      out.append(buf, end);
    }
    out.push_back('\n');
  }
  return out;
}

GrayImage load_image_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open image '" + path + "'");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const bool pgm = path.size() >= 4 && (path.ends_with(".pgm") || path.ends_with(".PGM"));
  try {
    GrayImage img = pgm ? load_pgm(bytes) : load_csv_matrix(bytes);
    img.set_id(path);
    return img;
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

GrayImage zero_pad(const GrayImage& img, int margin) {
  if (margin <= 0) throw ParameterError("padding margin must be positive");
  const int w = img.width() + 2 * margin;
  const int h = img.height() + 2 * margin;
  GrayImage out = GrayImage::filled(w, h, 0.0, img.id());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) out.at(x + margin, y + margin) = img.at(x, y);
  return out;
}

GrayImage crop(const GrayImage& img, int x0, int y0, int width, int height) {
  if (x0 < 0 || y0 < 0 || width <= 0 || height <= 0 || x0 + width > img.width() || y0 + height > img.height()) {
    throw BoundsError("crop window outside image");
  }
  GrayImage out = GrayImage::filled(width, height, 0.0, img.id());
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) out.at(x, y) = img.at(x0 + x, y0 + y);
  return out;
}

std::string_view to_string(TextureClass c) { return c == TextureClass::Holes1 ? "holes1" : "holes2"; }

std::optional<TextureClass> parse_texture_class(std::string_view name) {
  if (name == "holes1") return TextureClass::Holes1;
  if (name == "holes2") return TextureClass::Holes2;
  return std::nullopt;
}

namespace {

constexpr double kBackground = 10.0;
constexpr double kInterior = 60.0;
constexpr double kRim = 200.0;
constexpr int kNoise = 21;  // integer noise in [0, 20]
constexpr double kRimWidth = 3.0;

struct Annulus {
  double cx, cy, radius;
};

// mt19937_64 output is fixed by the standard; the distributions are not, so
// draws are mapped by hand.
class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : engine_(seed) {}
  int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

GrayImage synth_texture(TextureClass cls, int size, std::uint64_t seed) {
  if (size < 32) throw ParameterError("synthetic texture size must be at least 32");
  SynthRng rng(seed * 2 + (cls == TextureClass::Holes2 ? 1 : 0));
  const double s = size;

  std::vector<Annulus> rings;
  if (cls == TextureClass::Holes1) {
    const double r = rng.uniform(0.18 * s, 0.28 * s);
    const double margin = r + 2.0;
    rings.push_back({rng.uniform(margin, s - 1 - margin), rng.uniform(margin, s - 1 - margin), r});
  } else {
    while (rings.size() < 2) {
      const double r = rng.uniform(0.10 * s, 0.15 * s);
      const double margin = r + 2.0;
      const Annulus a{rng.uniform(margin, s - 1 - margin), rng.uniform(margin, s - 1 - margin), r};
      bool clear = true;
      for (const Annulus& b : rings) {
        if (std::hypot(a.cx - b.cx, a.cy - b.cy) < a.radius + b.radius + 4.0) clear = false;
      }
      if (clear) rings.push_back(a);
    }
  }

  GrayImage img = GrayImage::filled(size, size, 0.0, std::string(to_string(cls)) + "_" + std::to_string(seed));
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      double base = kBackground;
      for (const Annulus& a : rings) {
        const double d = std::hypot(x - a.cx, y - a.cy);
        if (d <= a.radius - kRimWidth) {
          base = kInterior;
        } else if (d <= a.radius) {
          base = kRim;
        }
      }
      img.at(x, y) = base + rng.below(kNoise);
    }
  }
  return img;
}

std::vector<ManifestRecord> read_manifest(std::istream& in) {
  std::vector<ManifestRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "manifest line " + std::to_string(lineno) + ": ";
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(where + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("label") || !j.contains("images")) {
      throw ParseError(where + "record needs `id`, `label` and `images`");
    }
    for (const auto& [key, value] : j.items()) {
      if (key != "id" && key != "label" && key != "images" && key != "split") {
        throw ParseError(where + "unknown field `" + key + "`");
      }
    }
    ManifestRecord rec;
    try {
      rec.id = j.at("id").get<std::string>();
      rec.label = j.at("label").get<std::string>();
      rec.images = j.at("images").get<std::vector<std::string>>();
      if (j.contains("split")) rec.split = j.at("split").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where + e.what());
    }
    if (rec.images.empty()) throw ParseError(where + "record '" + rec.id + "' lists no images");
    if (rec.split && *rec.split != "train" && *rec.split != "test") {
      throw ParseError(where + "split must be `train` or `test`");
    }
    records.push_back(std::move(rec));
  }
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  for (const ManifestRecord& r : records) {
    ids.push_back(r.id);
    labels.push_back(r.label);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) throw ParseError("manifest: duplicate subject id");
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (labels.size() != 2) {
    throw DataError("manifest: expected exactly two labels, found " + std::to_string(labels.size()));
  }
  return records;
}

void write_manifest(std::ostream& out, const std::vector<ManifestRecord>& records) {
  for (const ManifestRecord& r : records) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["label"] = r.label;
    j["images"] = r.images;
    if (r.split) j["split"] = *r.split;
    out << j.dump() << '\n';
  }
}

}  // namespace phfeat
