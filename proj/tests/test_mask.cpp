#include <doctest.h>

#include <algorithm>
#include <set>

#include "placebench/mask.hpp"
#include "placebench/rng.hpp"

using namespace placebench;

namespace {

BinaryMask block(int w, int h, int r0, int c0, int bh, int bw) {
  BinaryMask m(w, h);
  for (int r = r0; r < r0 + bh; ++r)
    for (int c = c0; c < c0 + bw; ++c) m.set(r, c);
  return m;
}

BinaryMask random_mask(DetRng& rng, int w, int h, double density) {
  BinaryMask m(w, h);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      if (rng.bernoulli(density)) m.set(r, c);
  return m;
}

// Reference flood fill used as the oracle for connected_components.
std::vector<std::set<std::pair<int, int>>> flood_fill_oracle(const BinaryMask& m,
                                                             bool eight) {
  std::vector<std::set<std::pair<int, int>>> groups;
  std::vector<bool> seen(static_cast<size_t>(m.width()) * m.height(), false);
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) {
      if (!m.at(r, c) || seen[r * m.width() + c]) continue;
      std::set<std::pair<int, int>> g;
      std::vector<std::pair<int, int>> stack{{r, c}};
      seen[r * m.width() + c] = true;
      while (!stack.empty()) {
        auto [cr, cc] = stack.back();
        stack.pop_back();
        g.insert({cr, cc});
        for (int dr = -1; dr <= 1; ++dr)
          for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            if (!eight && dr != 0 && dc != 0) continue;
            int nr = cr + dr, nc = cc + dc;
            if (nr < 0 || nr >= m.height() || nc < 0 || nc >= m.width()) continue;
            if (!m.at(nr, nc) || seen[nr * m.width() + nc]) continue;
            seen[nr * m.width() + nc] = true;
            stack.push_back({nr, nc});
          }
      }
      groups.push_back(std::move(g));
    }
  }
  return groups;
}

}  // namespace

TEST_CASE("iou identities") {
  BinaryMask a = block(12, 12, 2, 2, 4, 4);
  CHECK(iou(a, a) == doctest::Approx(1.0));

  BinaryMask b = block(12, 12, 8, 8, 2, 2);
  CHECK(iou(a, b) == doctest::Approx(0.0));

  BinaryMask empty1(5, 5), empty2(5, 5);
  CHECK(iou(empty1, empty2) == 0.0);
}

TEST_CASE("iou of nested blocks") {
  // 4x4 block inside a 10x10 block: 16 / (16 + 100 - 16) = 0.16
  BinaryMask big = block(20, 20, 0, 0, 10, 10);
  BinaryMask small = block(20, 20, 3, 3, 4, 4);
  CHECK(iou(big, small) == doctest::Approx(16.0 / 100.0));
}

TEST_CASE("iou dimension mismatch throws") {
  CHECK_THROWS_AS(iou(BinaryMask(4, 4), BinaryMask(5, 4)), std::invalid_argument);
}

TEST_CASE("iop basics") {
  BinaryMask gt = block(20, 20, 0, 0, 10, 10);
  BinaryMask inside = block(20, 20, 2, 2, 3, 3);
  CHECK(iop(gt, inside) == doctest::Approx(1.0));
  CHECK(iop(gt, gt) == doctest::Approx(1.0));

  // 2x2 prediction with exactly 2 pixels in the GT block
  BinaryMask straddle = block(20, 20, 9, 0, 2, 1);
  straddle.set(9, 1);
  straddle.set(10, 1);
  CHECK(iop(gt, straddle) == doctest::Approx(0.5));

  BinaryMask empty(20, 20);
  CHECK_THROWS_AS(iop(gt, empty), std::invalid_argument);
}

TEST_CASE("iop >= iou and both in [0,1] on random masks") {
  DetRng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    BinaryMask a = random_mask(rng, 16, 16, 0.3);
    BinaryMask b = random_mask(rng, 16, 16, 0.3);
    if (b.area() == 0) continue;
    double u = iou(a, b);
    double p = iop(a, b);
    CHECK(u >= 0.0);
    CHECK(p <= 1.0);
    CHECK(p >= u);  // denominator of iop never exceeds the union
  }
}

TEST_CASE("iop == 1 iff prediction subset of gt") {
  DetRng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    BinaryMask gt = random_mask(rng, 12, 12, 0.4);
    BinaryMask pred = random_mask(rng, 12, 12, 0.2);
    if (pred.area() == 0) continue;
    bool subset = true;
    for (int r = 0; r < 12; ++r)
      for (int c = 0; c < 12; ++c)
        if (pred.at(r, c) && !gt.at(r, c)) subset = false;
    CHECK((iop(gt, pred) == 1.0) == subset);
  }
}

TEST_CASE("connected components on empty and simple masks") {
  BinaryMask empty(8, 8);
  CHECK(connected_components(empty).regions.empty());

  BinaryMask two = block(20, 10, 1, 1, 3, 3);
  for (int r = 5; r < 8; ++r)
    for (int c = 10; c < 13; ++c) two.set(r, c);
  RegionSet rs = connected_components(two);
  REQUIRE(rs.regions.size() == 2);
  CHECK(rs.regions[0].area() == 9);
  CHECK(rs.regions[1].area() == 9);
  CHECK(rs.regions[0].min_row == 1);
  CHECK(rs.regions[1].min_row == 5);
}

TEST_CASE("diagonal pixels: one region under 8-conn, two under 4-conn") {
  BinaryMask m(6, 6);
  m.set(2, 2);
  m.set(3, 3);
  CHECK(connected_components(m, Connectivity::Eight).regions.size() == 1);
  CHECK(connected_components(m, Connectivity::Four).regions.size() == 2);
}

TEST_CASE("connected components match flood-fill oracle on random masks") {
  DetRng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    BinaryMask m = random_mask(rng, 24, 18, 0.35);
    for (bool eight : {true, false}) {
      auto oracle = flood_fill_oracle(m, eight);
      RegionSet rs =
          connected_components(m, eight ? Connectivity::Eight : Connectivity::Four);
      REQUIRE(rs.regions.size() == oracle.size());

      // regions partition the mask: disjoint, union equals input
      BinaryMask rebuilt(m.width(), m.height());
      int64_t total = 0;
      for (const Region& r : rs.regions) {
        total += r.area();
        for (const Pixel& p : r.pixels) {
          CHECK(!rebuilt.at(p.row, p.col));
          rebuilt.set(p.row, p.col);
        }
      }
      CHECK(rebuilt == m);
      CHECK(total == m.area());

      // each extracted region appears verbatim in the oracle
      for (const Region& r : rs.regions) {
        std::set<std::pair<int, int>> as_set;
        for (const Pixel& p : r.pixels) as_set.insert({p.row, p.col});
        CHECK(std::find(oracle.begin(), oracle.end(), as_set) != oracle.end());
      }
    }
  }
}

TEST_CASE("region ordering is by (min row, min col)") {
  BinaryMask m(10, 10);
  // L-shaped region starting at (0,5) but reaching col 2 on row 1
  m.set(0, 5);
  m.set(1, 5);
  m.set(1, 2);
  m.set(1, 3);
  m.set(1, 4);
  // compact region at (0,7)
  m.set(0, 7);
  RegionSet rs = connected_components(m);
  REQUIRE(rs.regions.size() == 2);
  CHECK(rs.regions[0].min_col == 2);
  CHECK(rs.regions[1].min_col == 7);
}

TEST_CASE("bbox_to_mask rasterization") {
  BBox full{0, 0, 1, 1};
  auto r = bbox_to_mask(full, 10, 10);
  CHECK(!r.degenerate);
  CHECK(r.mask.area() == 100);

  BBox quarter{0.25, 0.25, 0.75, 0.75};
  auto q = bbox_to_mask(quarter, 100, 100);
  CHECK(!q.degenerate);
  CHECK(q.mask.area() == 2500);
  CHECK(q.mask.at(25, 25));
  CHECK(q.mask.at(74, 74));
  CHECK(!q.mask.at(75, 75));

  BBox point{0.5, 0.5, 0.5, 0.5};
  auto p = bbox_to_mask(point, 10, 10);
  CHECK(p.degenerate);
  CHECK(p.mask.area() == 0);
}

TEST_CASE("rle round trip on random masks") {
  DetRng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    BinaryMask m = random_mask(rng, 17, 9, rng.uniform(0.0, 1.0));
    auto runs = mask_to_rle(m);
    // starts with the 0-run and covers the frame
    int64_t sum = 0;
    for (auto v : runs) sum += v;
    CHECK(sum == 17 * 9);
    BinaryMask back = mask_from_rle(17, 9, runs);
    CHECK(back == m);
  }
  // all-set mask: leading zero-run is explicit and empty
  BinaryMask ones = block(4, 2, 0, 0, 2, 4);
  auto runs = mask_to_rle(ones);
  REQUIRE(runs.size() == 2);
  CHECK(runs[0] == 0);
  CHECK(runs[1] == 8);
}

TEST_CASE("mask_from_rle validates coverage") {
  CHECK_THROWS_AS(mask_from_rle(4, 4, {3, 2}), std::invalid_argument);
  CHECK_THROWS_AS(mask_from_rle(4, 4, {20}), std::invalid_argument);
}
