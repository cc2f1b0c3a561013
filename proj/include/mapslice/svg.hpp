#pragma once

#include <filesystem>
#include <vector>

#include "mapslice/sweep.hpp"

namespace mapslice {

enum class SvgColorMode { traversal_order, map_id };

struct SvgOptions {
    SvgColorMode color = SvgColorMode::traversal_order;
    bool draw_micro = true;
    double micro_stroke_width = 0.0;  // 0: derived from the tile sizes
};

// One polygon per activation, filled dark-to-light by traversal order within
// its map (or by map id); microstructure segments as thin strokes. The
// viewBox is the bounding rectangle of all tiles. Zero activations produce a
// valid empty document.
void write_svg(const std::filesystem::path& path, const std::vector<SliceActivation>& activations,
               const SvgOptions& options = {});

}  // namespace mapslice
