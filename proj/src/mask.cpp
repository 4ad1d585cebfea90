#include "placebench/mask.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace placebench {

BinaryMask::BinaryMask(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("BinaryMask: dimensions must be positive");
  bits_.assign(static_cast<size_t>(width) * height, 0);
}

int64_t BinaryMask::area() const {
  return std::accumulate(bits_.begin(), bits_.end(), int64_t{0});
}

bool same_dims(const BinaryMask& a, const BinaryMask& b) {
  return a.width() == b.width() && a.height() == b.height();
}

namespace {

struct OverlapCounts {
  int64_t a = 0;
  int64_t b = 0;
  int64_t inter = 0;
};

OverlapCounts count_overlap(const BinaryMask& a, const BinaryMask& b) {
  OverlapCounts c;
  const auto& ba = a.bits();
  const auto& bb = b.bits();
  for (size_t i = 0; i < ba.size(); ++i) {
    c.a += ba[i];
    c.b += bb[i];
    c.inter += ba[i] & bb[i];
  }
  return c;
}

}  // namespace

double iou(const BinaryMask& a, const BinaryMask& b) {
  if (!same_dims(a, b)) throw std::invalid_argument("iou: dimension mismatch");
  OverlapCounts c = count_overlap(a, b);
  int64_t uni = c.a + c.b - c.inter;
  if (uni == 0) return 0.0;  // empty vs empty counts as no overlap
  return static_cast<double>(c.inter) / static_cast<double>(uni);
}

double iop(const BinaryMask& gt, const BinaryMask& pred) {
  if (!same_dims(gt, pred)) throw std::invalid_argument("iop: dimension mismatch");
  OverlapCounts c = count_overlap(gt, pred);
  if (c.b == 0) throw std::invalid_argument("iop: empty prediction");
  return static_cast<double>(c.inter) / static_cast<double>(c.b);
}

BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b) {
  if (!same_dims(a, b)) throw std::invalid_argument("mask_union: dimension mismatch");
  BinaryMask out = a;
  for (size_t i = 0; i < out.bits().size(); ++i) out.bits()[i] |= b.bits()[i];
  return out;
}

BinaryMask mask_intersection(const BinaryMask& a, const BinaryMask& b) {
  if (!same_dims(a, b))
    throw std::invalid_argument("mask_intersection: dimension mismatch");
  BinaryMask out = a;
  for (size_t i = 0; i < out.bits().size(); ++i) out.bits()[i] &= b.bits()[i];
  return out;
}

BinaryMask Region::to_mask(int width, int height) const {
  BinaryMask m(width, height);
  for (const Pixel& p : pixels) m.set(p.row, p.col);
  return m;
}

Region region_from_pixels(std::vector<Pixel> pixels) {
  if (pixels.empty()) throw std::invalid_argument("region: empty pixel set");
  std::sort(pixels.begin(), pixels.end());
  Region r;
  r.min_row = pixels.front().row;
  r.min_col = pixels.front().col;
  for (const Pixel& p : pixels) r.min_col = std::min(r.min_col, p.col);
  r.pixels = std::move(pixels);
  return r;
}

RegionSet connected_components(const BinaryMask& mask, Connectivity conn) {
  const int w = mask.width();
  const int h = mask.height();
  RegionSet out;
  out.width = w;
  out.height = h;
  if (w == 0 || h == 0) return out;

  std::vector<int32_t> label(static_cast<size_t>(w) * h, -1);
  auto idx = [w](int r, int c) { return static_cast<size_t>(r) * w + c; };

  static const int dr8[] = {-1, -1, -1, 0, 0, 1, 1, 1};
  static const int dc8[] = {-1, 0, 1, -1, 1, -1, 0, 1};
  static const int dr4[] = {-1, 0, 0, 1};
  static const int dc4[] = {0, -1, 1, 0};
  const int n_nb = conn == Connectivity::Eight ? 8 : 4;
  const int* dr = conn == Connectivity::Eight ? dr8 : dr4;
  const int* dc = conn == Connectivity::Eight ? dc8 : dc4;

  std::vector<std::vector<Pixel>> groups;
  std::vector<Pixel> stack;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!mask.at(r, c) || label[idx(r, c)] >= 0) continue;
      int32_t id = static_cast<int32_t>(groups.size());
      groups.emplace_back();
      stack.clear();
      stack.push_back({r, c});
      label[idx(r, c)] = id;
      while (!stack.empty()) {
        Pixel p = stack.back();
        stack.pop_back();
        groups[id].push_back(p);
        for (int k = 0; k < n_nb; ++k) {
          int nr = p.row + dr[k], nc = p.col + dc[k];
          if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
          if (!mask.at(nr, nc) || label[idx(nr, nc)] >= 0) continue;
          label[idx(nr, nc)] = id;
          stack.push_back({nr, nc});
        }
      }
    }
  }

  out.regions.reserve(groups.size());
  for (auto& g : groups) out.regions.push_back(region_from_pixels(std::move(g)));
  std::stable_sort(out.regions.begin(), out.regions.end(),
                   [](const Region& a, const Region& b) {
                     if (a.min_row != b.min_row) return a.min_row < b.min_row;
                     return a.min_col < b.min_col;
                   });
  return out;
}

double iop_regions(const Region& gt, const Region& pred) {
  if (pred.pixels.empty()) throw std::invalid_argument("iop_regions: empty prediction");
  size_t i = 0, j = 0;
  int64_t inter = 0;
  while (i < gt.pixels.size() && j < pred.pixels.size()) {
    if (gt.pixels[i] == pred.pixels[j]) {
      ++inter;
      ++i;
      ++j;
    } else if (gt.pixels[i] < pred.pixels[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<double>(inter) / static_cast<double>(pred.pixels.size());
}

bool BBox::valid() const {
  if (!(x_min <= x_max && y_min <= y_max)) return false;
  if (units == Units::Normalized) {
    return x_min >= 0 && y_min >= 0 && x_max <= 1 && y_max <= 1;
  }
  return true;
}

double bbox_iou(const BBox& a, const BBox& b) {
  double ix = std::max(0.0, std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min));
  double iy = std::max(0.0, std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min));
  double inter = ix * iy;
  double uni = a.area() + b.area() - inter;
  if (uni <= 0) return 0.0;
  return inter / uni;
}

RasterizedBox bbox_to_mask(const BBox& box, int width, int height) {
  if (box.units != BBox::Units::Normalized || !box.valid())
    throw std::invalid_argument("bbox_to_mask: box must be valid and normalized");
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("bbox_to_mask: dimensions must be positive");

  auto clampi = [](int v, int lo, int hi) { return std::max(lo, std::min(v, hi)); };
  int x0 = clampi(static_cast<int>(std::floor(box.x_min * width)), 0, width);
  int x1 = clampi(static_cast<int>(std::ceil(box.x_max * width)), 0, width);
  int y0 = clampi(static_cast<int>(std::floor(box.y_min * height)), 0, height);
  int y1 = clampi(static_cast<int>(std::ceil(box.y_max * height)), 0, height);

  RasterizedBox out;
  out.mask = BinaryMask(width, height);
  out.degenerate = (x1 <= x0 || y1 <= y0);
  for (int r = y0; r < y1; ++r)
    for (int c = x0; c < x1; ++c) out.mask.set(r, c);
  return out;
}

std::vector<int64_t> mask_to_rle(const BinaryMask& mask) {
  std::vector<int64_t> runs;
  const auto& bits = mask.bits();
  uint8_t cur = 0;  // encoding starts with the 0-run
  int64_t run = 0;
  for (uint8_t b : bits) {
    if (b == cur) {
      ++run;
    } else {
      runs.push_back(run);
      cur = b;
      run = 1;
    }
  }
  runs.push_back(run);
  return runs;
}

BinaryMask mask_from_rle(int width, int height, const std::vector<int64_t>& runs) {
  BinaryMask m(width, height);
  int64_t total = static_cast<int64_t>(width) * height;
  int64_t pos = 0;
  uint8_t cur = 0;
  for (int64_t run : runs) {
    if (run < 0 || pos + run > total)
      throw std::invalid_argument("mask_from_rle: runs exceed frame");
    if (cur) {
      for (int64_t i = pos; i < pos + run; ++i) m.bits()[static_cast<size_t>(i)] = 1;
    }
    pos += run;
    cur ^= 1;
  }
  if (pos != total) throw std::invalid_argument("mask_from_rle: runs do not cover frame");
  return m;
}

}  // namespace placebench
