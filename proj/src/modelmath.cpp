#include "placebench/modelmath.hpp"

#include <cmath>
#include <stdexcept>

namespace placebench {

Projection Projection::identity(int n) {
  Projection p;
  p.rows = p.cols = n;
  p.m.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) p.m[static_cast<size_t>(i) * n + i] = 1.0;
  return p;
}

void DecoderSchedule::validate() const {
  if (channel_widths.empty())
    throw std::invalid_argument("decoder schedule: no conditioned layers");
  for (size_t i = 1; i < channel_widths.size(); ++i)
    if (channel_widths[i] >= channel_widths[i - 1])
      throw std::invalid_argument("decoder schedule: widths must strictly decrease");
  if (skip_sources.size() != channel_widths.size())
    throw std::invalid_argument("decoder schedule: one skip source per conditioned layer");
}

DecoderSchedule DecoderSchedule::reference() {
  return DecoderSchedule{{1024, 512, 256}, {1, 2, 3}};
}

void Heatmap::validate() const {
  for (double x : v)
    if (!std::isfinite(x) || x < 0.0 || x > 1.0)
      throw std::invalid_argument("heatmap: values must be in [0, 1]");
}

Embedding downsample_embedding(const Embedding& e, const Projection& projection) {
  if (projection.cols != e.dim())
    throw std::invalid_argument("downsample_embedding: projection shape mismatch");
  Embedding out;
  out.v.resize(projection.rows, 0.0);
  for (int r = 0; r < projection.rows; ++r) {
    double s = 0;
    for (int c = 0; c < projection.cols; ++c) s += projection.at(r, c) * e.v[c];
    out.v[r] = s;
  }
  return out;
}

FeatureTensor tile_embedding(const Embedding& e, int height, int width) {
  if (height <= 0 || width <= 0 || e.dim() <= 0)
    throw std::invalid_argument("tile_embedding: dimensions must be positive");
  FeatureTensor out(height, width, e.dim());
  for (int h = 0; h < height; ++h)
    for (int w = 0; w < width; ++w)
      for (int c = 0; c < e.dim(); ++c) out.at(h, w, c) = e.v[c];
  return out;
}

FeatureTensor condition(const FeatureTensor& f, const FeatureTensor& tiled) {
  if (f.height != tiled.height || f.width != tiled.width || f.channels != tiled.channels)
    throw std::invalid_argument("condition: shape mismatch");
  FeatureTensor out = f;
  for (size_t i = 0; i < out.v.size(); ++i) out.v[i] *= tiled.v[i];
  return out;
}

DiceResult dice_loss(const Heatmap& pred, const BinaryMask& target, double eps) {
  if (pred.width != target.width() || pred.height != target.height())
    throw std::invalid_argument("dice_loss: dimension mismatch");
  if (eps <= 0) throw std::invalid_argument("dice_loss: eps must be > 0");

  double sum_pt = 0, sum_p = 0, sum_t = 0;
  for (size_t i = 0; i < pred.v.size(); ++i) {
    double p = pred.v[i];
    double t = target.bits()[i];
    sum_pt += p * t;
    sum_p += p;
    sum_t += t;
  }
  double num = 2.0 * sum_pt + eps;
  double den = sum_p + sum_t + eps;

  DiceResult out;
  out.loss = 1.0 - num / den;
  out.grad.resize(pred.v.size());
  // d/dp_k [1 - num/den] = -(2*t_k*den - num) / den^2
  for (size_t i = 0; i < pred.v.size(); ++i) {
    double t = target.bits()[i];
    out.grad[i] = -(2.0 * t * den - num) / (den * den);
  }
  return out;
}

BinaryMask threshold_heatmap(const Heatmap& h, double tau, int64_t min_area,
                             Connectivity conn) {
  if (tau < 0.0 || tau > 1.0)
    throw std::invalid_argument("threshold_heatmap: tau must be in [0, 1]");
  BinaryMask mask(h.width, h.height);
  for (size_t i = 0; i < h.v.size(); ++i) mask.bits()[i] = h.v[i] >= tau;
  if (min_area <= 1) return mask;

  RegionSet comps = connected_components(mask, conn);
  BinaryMask out(h.width, h.height);
  for (const Region& r : comps.regions) {
    if (r.area() < min_area) continue;
    for (const Pixel& p : r.pixels) out.set(p.row, p.col);
  }
  return out;
}

}  // namespace placebench
