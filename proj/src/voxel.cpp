#include "placebench/voxel.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace placebench {

uint64_t VoxelCounts::total() const {
  return std::accumulate(counts.begin(), counts.end(), uint64_t{0});
}

uint64_t CountMap2D::total() const {
  return std::accumulate(counts.begin(), counts.end(), uint64_t{0});
}

BinResult bin_to_voxels(const PointCloud& pc, const Vec3& origin,
                        double resolution, const GridDims& dims) {
  if (resolution <= 0) throw std::invalid_argument("bin_to_voxels: resolution must be > 0");
  if (dims.nx <= 0 || dims.ny <= 0 || dims.nz <= 0)
    throw std::invalid_argument("bin_to_voxels: dims must be positive");

  BinResult out;
  out.grid = VoxelCounts(dims.nx, dims.ny, dims.nz);
  for (const Vec3& p : pc.points) {
    int x = static_cast<int>(std::floor((p.x - origin.x) / resolution));
    int y = static_cast<int>(std::floor((p.y - origin.y) / resolution));
    int z = static_cast<int>(std::floor((p.z - origin.z) / resolution));
    if (x < 0 || x >= dims.nx || y < 0 || y >= dims.ny || z < 0 || z >= dims.nz) {
      ++out.dropped;
      continue;
    }
    ++out.grid.at(x, y, z);
    ++out.binned;
  }
  return out;
}

CountMap2D height_collapse(const VoxelCounts& voxels) {
  CountMap2D map(voxels.nx, voxels.ny);
  for (int z = 0; z < voxels.nz; ++z)
    for (int y = 0; y < voxels.ny; ++y)
      for (int x = 0; x < voxels.nx; ++x) map.at(x, y) += voxels.at(x, y, z);
  return map;
}

}  // namespace placebench
