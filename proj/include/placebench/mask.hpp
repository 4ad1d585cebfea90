#pragma once

// Binary mask algebra: pixel grids, overlap measures, connected-component
// extraction, bounding-box rasterization and run-length encoding.

#include <compare>
#include <cstdint>
#include <vector>

namespace placebench {

struct Pixel {
  int row = 0;
  int col = 0;
  friend bool operator==(const Pixel&, const Pixel&) = default;
  friend auto operator<=>(const Pixel&, const Pixel&) = default;
};

// Row-major {0,1} grid.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty_dims() const { return width_ == 0 || height_ == 0; }

  bool at(int row, int col) const {
    return bits_[static_cast<size_t>(row) * width_ + col] != 0;
  }
  void set(int row, int col, bool v = true) {
    bits_[static_cast<size_t>(row) * width_ + col] = v ? 1 : 0;
  }

  int64_t area() const;
  const std::vector<uint8_t>& bits() const { return bits_; }
  std::vector<uint8_t>& bits() { return bits_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> bits_;
};

bool same_dims(const BinaryMask& a, const BinaryMask& b);

// Intersection over union, a.b / (a.a + b.b - a.b). Two empty masks give 0.
double iou(const BinaryMask& a, const BinaryMask& b);

// Intersection over prediction, gt.pred / (pred.pred). Normalizes by the
// predicted region only; 1.0 whenever the prediction lies inside the GT.
double iop(const BinaryMask& gt, const BinaryMask& pred);

BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_intersection(const BinaryMask& a, const BinaryMask& b);

enum class Connectivity { Four = 4, Eight = 8 };

// A maximal connected blob of set pixels.
struct Region {
  std::vector<Pixel> pixels;  // sorted by (row, col)
  int min_row = 0;
  int min_col = 0;

  int64_t area() const { return static_cast<int64_t>(pixels.size()); }
  BinaryMask to_mask(int width, int height) const;
};

struct RegionSet {
  int width = 0;
  int height = 0;
  std::vector<Region> regions;
};

// Partition of the set pixels into maximal connected regions, ordered by the
// region's (min row, min col).
RegionSet connected_components(const BinaryMask& mask,
                               Connectivity conn = Connectivity::Eight);

Region region_from_pixels(std::vector<Pixel> pixels);

// IoP over explicit regions: |gt ∩ pred| / |pred|.
double iop_regions(const Region& gt, const Region& pred);

struct BBox {
  enum class Units { Normalized, Pixel };
  double x_min = 0, y_min = 0, x_max = 0, y_max = 0;
  Units units = Units::Normalized;

  bool valid() const;
  double area() const { return (x_max - x_min) * (y_max - y_min); }
};

// Axis-aligned box IoU in the boxes' own units.
double bbox_iou(const BBox& a, const BBox& b);

struct RasterizedBox {
  BinaryMask mask;
  bool degenerate = false;  // box rounded to zero area
};

// Rasterize a normalized box onto a width x height grid. Pixel columns
// [floor(x_min*w), ceil(x_max*w)) and rows [floor(y_min*h), ceil(y_max*h)),
// clamped to the frame.
RasterizedBox bbox_to_mask(const BBox& box, int width, int height);

// Run-length encoding: alternating 0-run/1-run lengths starting with the
// 0-run, row-major. Sum of runs equals width*height.
std::vector<int64_t> mask_to_rle(const BinaryMask& mask);
BinaryMask mask_from_rle(int width, int height, const std::vector<int64_t>& runs);

}  // namespace placebench
