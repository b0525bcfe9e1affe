#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phfeat {

// Rectangular scalar grid, row-major, top-left first. Intensities may be
// negative (CT-style signed values); they are never rescaled on load.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, std::vector<double> pixels, std::string id = {});
  static GrayImage filled(int width, int height, double value, std::string id = {});

  int width() const { return width_; }
  int height() const { return height_; }
  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }

  double at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
  double& at(int x, int y) { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
  const std::vector<double>& pixels() const { return pixels_; }

  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  friend bool operator==(const GrayImage& a, const GrayImage& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.pixels_ == b.pixels_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> pixels_;
  std::string id_;
};

GrayImage load_pgm(std::string_view bytes);
GrayImage load_csv_matrix(std::string_view text);

// Binary P5 output. Pixels must be integers in [0, 65535].
std::string save_pgm(const GrayImage& img);
std::string save_pgm_ascii(const GrayImage& img);
std::string save_csv_matrix(const GrayImage& img);

// Dispatches on extension: .pgm, otherwise CSV matrix.
GrayImage load_image_file(const std::string& path);

GrayImage zero_pad(const GrayImage& img, int margin);
GrayImage crop(const GrayImage& img, int x0, int y0, int width, int height);

enum class TextureClass { Holes1, Holes2 };

std::string_view to_string(TextureClass c);
std::optional<TextureClass> parse_texture_class(std::string_view name);

// Dark noisy background with one (Holes1) or two (Holes2) bright annuli whose
// interiors are darker than their rims. Deterministic in (cls, size, seed).
GrayImage synth_texture(TextureClass cls, int size, std::uint64_t seed);

struct ManifestRecord {
  std::string id;
  std::string label;
  std::vector<std::string> images;
  std::optional<std::string> split;
};

// JSON Lines, one record per line with fields `id`, `label`, `images`, optional `split`.
std::vector<ManifestRecord> read_manifest(std::istream& in);
void write_manifest(std::ostream& out, const std::vector<ManifestRecord>& records);

}  // namespace phfeat
