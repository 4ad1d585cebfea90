#include <doctest.h>

#include "placebench/rng.hpp"
#include "placebench/voxel.hpp"

using namespace placebench;

TEST_CASE("single point at origin lands in cell (0,0,0)") {
  PointCloud pc;
  pc.points.push_back({0, 0, 0});
  BinResult r = bin_to_voxels(pc, {0, 0, 0}, 0.1, {4, 4, 4});
  CHECK(r.binned == 1);
  CHECK(r.dropped == 0);
  CHECK(r.grid.at(0, 0, 0) == 1);
}

TEST_CASE("identical points pile into one cell") {
  PointCloud pc;
  for (int i = 0; i < 100; ++i) pc.points.push_back({0.55, 0.31, 0.17});
  BinResult r = bin_to_voxels(pc, {0, 0, 0}, 0.1, {8, 8, 8});
  CHECK(r.binned == 100);
  CHECK(r.grid.at(5, 3, 1) == 100);
  CHECK(r.grid.total() == 100);
}

TEST_CASE("upper grid boundary is exclusive") {
  PointCloud pc;
  pc.points.push_back({0.4, 0.1, 0.1});  // exactly origin + dims*res on x
  BinResult r = bin_to_voxels(pc, {0, 0, 0}, 0.1, {4, 4, 4});
  CHECK(r.binned == 0);
  CHECK(r.dropped == 1);

  // lower boundary is inclusive
  PointCloud pc2;
  pc2.points.push_back({0.0, 0.0, 0.0});
  CHECK(bin_to_voxels(pc2, {0, 0, 0}, 0.1, {4, 4, 4}).binned == 1);
}

TEST_CASE("height collapse equals brute-force triple loop and conserves counts") {
  DetRng rng(42);
  VoxelCounts grid(7, 5, 9);
  for (auto& c : grid.counts) c = rng.uniform_u32(6);

  CountMap2D map = height_collapse(grid);
  REQUIRE(map.nx == 7);
  REQUIRE(map.ny == 5);
  for (int x = 0; x < 7; ++x) {
    for (int y = 0; y < 5; ++y) {
      uint64_t expect = 0;
      for (int z = 0; z < 9; ++z) expect += grid.at(x, y, z);
      CHECK(map.at(x, y) == expect);
    }
  }
  CHECK(map.total() == grid.total());
}

TEST_CASE("column example: counts (1,2,3) collapse to 6") {
  VoxelCounts grid(3, 3, 3);
  grid.at(1, 2, 0) = 1;
  grid.at(1, 2, 1) = 2;
  grid.at(1, 2, 2) = 3;
  CountMap2D map = height_collapse(grid);
  CHECK(map.at(1, 2) == 6);
  CHECK(map.total() == 6);
}

TEST_CASE("binning then collapsing conserves binned point count") {
  DetRng rng(1234);
  PointCloud pc;
  for (int i = 0; i < 5000; ++i)
    pc.points.push_back({rng.uniform(-1, 3), rng.uniform(-1, 3), rng.uniform(-1, 3)});
  BinResult r = bin_to_voxels(pc, {0, 0, 0}, 0.25, {8, 8, 8});
  CHECK(r.binned + r.dropped == 5000);
  CHECK(height_collapse(r.grid).total() == static_cast<uint64_t>(r.binned));
}
