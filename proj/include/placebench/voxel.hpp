#pragma once

// Point-cloud binning into voxel count grids and height collapse to 2D.

#include <cstdint>
#include <vector>

#include "placebench/camera.hpp"

namespace placebench {

struct GridDims {
  int nx = 0, ny = 0, nz = 0;
};

struct VoxelCounts {
  int nx = 0, ny = 0, nz = 0;
  std::vector<uint32_t> counts;

  VoxelCounts() = default;
  VoxelCounts(int nx_, int ny_, int nz_)
      : nx(nx_), ny(ny_), nz(nz_),
        counts(static_cast<size_t>(nx_) * ny_ * nz_, 0) {}

  size_t idx(int x, int y, int z) const {
    return (static_cast<size_t>(z) * ny + y) * nx + x;
  }
  uint32_t at(int x, int y, int z) const { return counts[idx(x, y, z)]; }
  uint32_t& at(int x, int y, int z) { return counts[idx(x, y, z)]; }
  uint64_t total() const;
};

struct CountMap2D {
  int nx = 0, ny = 0;
  std::vector<uint64_t> counts;

  CountMap2D() = default;
  CountMap2D(int nx_, int ny_)
      : nx(nx_), ny(ny_), counts(static_cast<size_t>(nx_) * ny_, 0) {}

  uint64_t at(int x, int y) const { return counts[static_cast<size_t>(y) * nx + x]; }
  uint64_t& at(int x, int y) { return counts[static_cast<size_t>(y) * nx + x]; }
  uint64_t total() const;
};

struct BinResult {
  VoxelCounts grid;
  int64_t binned = 0;
  int64_t dropped = 0;
};

// Each point increments cell floor((p - origin)/resolution). Cells are
// half-open [lo, hi); out-of-bounds points are dropped and counted.
BinResult bin_to_voxels(const PointCloud& pc, const Vec3& origin,
                        double resolution, const GridDims& dims);

// out[x][y] = sum over z of in[x][y][z].
CountMap2D height_collapse(const VoxelCounts& voxels);

}  // namespace placebench
