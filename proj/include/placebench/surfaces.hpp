#pragma once

// Placeable receptacle surfaces (upward-facing cells with free clearance) and
// the scene-derived ground-truth placement regions.

#include <vector>

#include "placebench/priors.hpp"
#include "placebench/render.hpp"
#include "placebench/scene.hpp"

namespace placebench {

struct PlaceableSurface {
  int instance_id = -1;
  int category = 0;
  std::vector<int64_t> cells;  // sorted; occupied cells with free cells above
};

// Cells of each receptacle whose column above is free for at least
// min_clearance voxels. An empty category filter selects every receptacle.
std::vector<PlaceableSurface> extract_placeable_surfaces(
    const SceneSpec& scene, const std::vector<int>& category_ids = {},
    int min_clearance = 4);

// Pixels of the view whose first-hit voxel belongs to the surface.
BinaryMask surface_view_mask(const RenderView& view, const PlaceableSurface& surface);

// Visible surface masks split into connected regions, for metric matching.
RegionSet surfaces_as_regions(const RenderView& view,
                              const std::vector<PlaceableSurface>& surfaces);

struct PlacementConfig {
  ReceptaclePriorTable priors = ReceptaclePriorTable::eval_builtin();
  FootprintTable footprints = FootprintTable::builtin();
  int min_clearance = 4;  // voxels of free space above a placeable cell
};

// Surface cells of prior receptacles for the category where the category's
// square footprint fits entirely on the same instance's surface.
std::vector<int64_t> placement_cells(const SceneSpec& scene,
                                     const std::string& category,
                                     const PlacementConfig& cfg);

// Rendered ground-truth placement regions for the category in the given view.
RegionSet gt_placements(const SceneSpec& scene, const std::string& category,
                        const RenderView& view, const PlacementConfig& cfg);

}  // namespace placebench
