#include "placebench/surfaces.hpp"

#include <algorithm>
#include <cmath>

namespace placebench {

std::vector<PlaceableSurface> extract_placeable_surfaces(
    const SceneSpec& scene, const std::vector<int>& category_ids, int min_clearance) {
  std::vector<PlaceableSurface> out;
  for (const Instance& inst : scene.instances()) {
    if (!inst.receptacle) continue;
    if (!category_ids.empty() &&
        std::find(category_ids.begin(), category_ids.end(), inst.category) ==
            category_ids.end())
      continue;

    PlaceableSurface surf;
    surf.instance_id = inst.id;
    surf.category = inst.category;
    for (int64_t ci : inst.cells) {
      Cell c = scene.cell_from_idx(ci);
      bool clear = true;
      for (int dz = 1; dz <= min_clearance; ++dz) {
        Cell above{c.x, c.y, c.z + dz};
        if (above.z >= scene.nz()) break;  // open sky above the grid
        if (scene.occupied(above)) {
          clear = false;
          break;
        }
      }
      if (clear) surf.cells.push_back(ci);
    }
    if (!surf.cells.empty()) out.push_back(std::move(surf));
  }
  return out;
}

namespace {

BinaryMask cells_view_mask(const RenderView& view, const std::vector<int64_t>& cells) {
  BinaryMask m(view.width, view.height);
  for (size_t i = 0; i < view.hit_cells.size(); ++i) {
    int64_t hc = view.hit_cells[i];
    if (hc >= 0 && std::binary_search(cells.begin(), cells.end(), hc))
      m.bits()[i] = 1;
  }
  return m;
}

}  // namespace

BinaryMask surface_view_mask(const RenderView& view, const PlaceableSurface& surface) {
  return cells_view_mask(view, surface.cells);
}

RegionSet surfaces_as_regions(const RenderView& view,
                              const std::vector<PlaceableSurface>& surfaces) {
  RegionSet out;
  out.width = view.width;
  out.height = view.height;
  for (const PlaceableSurface& s : surfaces) {
    BinaryMask m = surface_view_mask(view, s);
    if (m.area() == 0) continue;
    RegionSet comps = connected_components(m);
    for (Region& r : comps.regions) out.regions.push_back(std::move(r));
  }
  return out;
}

std::vector<int64_t> placement_cells(const SceneSpec& scene,
                                     const std::string& category,
                                     const PlacementConfig& cfg) {
  const std::vector<std::string>& receptacles = cfg.priors.at(category);
  std::vector<int> ids;
  for (const std::string& name : receptacles) {
    if (auto id = scene.categories().find(name)) ids.push_back(*id);
  }
  std::vector<int64_t> out;
  if (ids.empty()) return out;

  std::vector<PlaceableSurface> surfaces =
      extract_placeable_surfaces(scene, ids, cfg.min_clearance);
  double side = cfg.footprints.side_for(category);
  int fr = static_cast<int>(std::floor(side / (2.0 * scene.resolution()) + 1e-9));

  for (const PlaceableSurface& surf : surfaces) {
    for (int64_t ci : surf.cells) {
      Cell c = scene.cell_from_idx(ci);
      bool fits = true;
      for (int dy = -fr; fits && dy <= fr; ++dy) {
        for (int dx = -fr; fits && dx <= fr; ++dx) {
          Cell qc{c.x + dx, c.y + dy, c.z};
          if (!scene.in_bounds(qc) ||
              !std::binary_search(surf.cells.begin(), surf.cells.end(),
                                  scene.idx(qc.x, qc.y, qc.z)))
            fits = false;
        }
      }
      if (fits) out.push_back(ci);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

RegionSet gt_placements(const SceneSpec& scene, const std::string& category,
                        const RenderView& view, const PlacementConfig& cfg) {
  std::vector<int64_t> cells = placement_cells(scene, category, cfg);
  BinaryMask m = cells_view_mask(view, cells);
  RegionSet out = connected_components(m);
  out.width = view.width;
  out.height = view.height;
  return out;
}

}  // namespace placebench
