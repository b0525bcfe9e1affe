#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace phfeat {

// One persistence interval. Essential bars never died in the filtration;
// their death holds the cap value supplied when they were created.
struct Bar {
  double birth = 0.0;
  double death = 0.0;
  bool essential = false;

  double lifespan() const { return death - birth; }
  double midpoint() const { return 0.5 * (birth + death); }

  // Aliveness used by Betti counting: essential bars stay alive past the cap.
  bool alive_at(double t) const { return birth <= t && (essential || t < death); }

  friend bool operator==(const Bar&, const Bar&) = default;
};

Bar finite_bar(double birth, double death);
Bar essential_bar(double birth, double cap);

struct Range {
  double t_min = 0.0;
  double t_max = 1.0;

  friend bool operator==(const Range&, const Range&) = default;
};

Range merge(const Range& a, const Range& b);

// Multiset of bars in one homological dimension. Multiplicity is carried by
// repetition and insertion order is preserved.
class Barcode {
 public:
  Barcode() = default;
  explicit Barcode(int dim, std::vector<Bar> bars = {});

  int dim() const { return dim_; }
  const std::vector<Bar>& bars() const { return bars_; }
  std::size_t size() const { return bars_.size(); }
  bool empty() const { return bars_.empty(); }

  void push_back(const Bar& bar);

  friend bool operator==(const Barcode&, const Barcode&) = default;

 private:
  int dim_ = 0;
  std::vector<Bar> bars_;
};

// Concatenates bar lists in input order, keeping duplicates.
// Throws DimensionMismatch if the inputs disagree on dimension.
Barcode aggregate(std::span<const Barcode> barcodes);

// (min birth, max death); the empty barcode yields the sentinel (0, 1).
Range bounds(const Barcode& barcode);

// CSV with header `dim,birth,death,essential`, one bar per row.
void write_barcode_csv(std::ostream& out, std::span<const Barcode> barcodes);
std::vector<Barcode> read_barcode_csv(std::istream& in);

// Shortest decimal text that parses back to the same double.
std::string format_real(double value);

}  // namespace phfeat
