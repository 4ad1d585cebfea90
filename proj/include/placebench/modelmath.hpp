#pragma once

// Model-side numerics: embedding downsampling and tiling, element-wise
// feature conditioning, dice loss with its analytic gradient, and heatmap
// post-processing into discrete masks.

#include <vector>

#include "placebench/mask.hpp"

namespace placebench {

struct FeatureTensor {
  int height = 0, width = 0, channels = 0;
  std::vector<double> v;  // index (h, w, c)

  FeatureTensor() = default;
  FeatureTensor(int h, int w, int c)
      : height(h), width(w), channels(c),
        v(static_cast<size_t>(h) * w * c, 0.0) {}

  size_t idx(int h, int w_, int c) const {
    return (static_cast<size_t>(h) * width + w_) * channels + c;
  }
  double at(int h, int w_, int c) const { return v[idx(h, w_, c)]; }
  double& at(int h, int w_, int c) { return v[idx(h, w_, c)]; }
};

struct Embedding {
  std::vector<double> v;
  int dim() const { return static_cast<int>(v.size()); }
};

// Dense projection matrix, row-major (rows x cols).
struct Projection {
  int rows = 0, cols = 0;
  std::vector<double> m;

  static Projection identity(int n);
  double at(int r, int c) const { return m[static_cast<size_t>(r) * cols + c]; }
};

// Channel widths of the conditioned decoder layers plus the encoder layers
// feeding their skip connections. Widths must strictly decrease.
struct DecoderSchedule {
  std::vector<int> channel_widths;
  std::vector<int> skip_sources;

  void validate() const;
  static DecoderSchedule reference();  // {1024, 512, 256}
};

// Unit-interval prediction grid.
struct Heatmap {
  int width = 0, height = 0;
  std::vector<double> v;

  Heatmap() = default;
  Heatmap(int w, int h) : width(w), height(h), v(static_cast<size_t>(w) * h, 0.0) {}
  double at(int row, int col) const { return v[static_cast<size_t>(row) * width + col]; }
  void set(int row, int col, double x) { v[static_cast<size_t>(row) * width + col] = x; }
  void validate() const;  // all values finite and in [0, 1]
};

Embedding downsample_embedding(const Embedding& e, const Projection& projection);

// Spatially constant tensor: out[h][w][c] == e[c].
FeatureTensor tile_embedding(const Embedding& e, int height, int width);

// Hadamard product of identically shaped tensors.
FeatureTensor condition(const FeatureTensor& f, const FeatureTensor& tiled);

struct DiceResult {
  double loss = 0;
  std::vector<double> grad;  // d loss / d pred[i], row-major
};

// Smoothed dice: loss = 1 - (2*sum(p*t) + eps) / (sum(p) + sum(t) + eps).
DiceResult dice_loss(const Heatmap& pred, const BinaryMask& target, double eps = 1.0);

// Pixels with value >= tau, minus connected components smaller than min_area.
BinaryMask threshold_heatmap(const Heatmap& h, double tau, int64_t min_area = 0,
                             Connectivity conn = Connectivity::Eight);

}  // namespace placebench
