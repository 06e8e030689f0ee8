#pragma once

#include <cstdint>
#include <vector>

#include "cracksim/raster.hpp"

namespace cracksim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Vec2&) const = default;
};

// Random-walk crack generator parameters. All lengths in meters.
struct CrackParams {
    double step_length_m = 0.25;
    double heading_jitter_rad = 0.35;
    double width_min_m = 0.03;
    double width_max_m = 0.10;
    double width_jitter = 0.25;   // relative per-vertex width noise
    double branch_prob = 0.08;    // per-vertex probability of spawning a branch
    int max_branch_depth = 2;
    double target_length_m = 7.0;

    // Throws std::invalid_argument naming the violated bound.
    void validate() const;
};

struct CrackBranch;

// Crack skeleton in a local metric frame: polyline with per-vertex widths
// and recursively attached branches. Paths may exceed one tile extent.
struct CrackPath {
    std::vector<Vec2> vertices;   // ordered, >= 2
    std::vector<double> widths;   // per vertex, > 0
    std::vector<CrackBranch> branches;

    double polyline_length() const;  // this path plus all branches
};

struct CrackBranch {
    size_t attach_index = 0;  // vertex on the parent where the branch forks
    CrackPath path;
};

bool operator==(const CrackPath& a, const CrackPath& b);
bool operator==(const CrackBranch& a, const CrackBranch& b);

// Deterministic in (seed, params). Total skeleton length lands within
// [0.9, 1.1] * target_length_m provided step_length_m <= 0.1 * target.
CrackPath generate_crack(uint64_t seed, const CrackParams& params);

// Shifts every vertex (branches included) by (dx, dy) meters.
CrackPath translate(const CrackPath& path, double dx, double dy);

// Uniformly scales all coordinates and widths by k.
CrackPath scale(const CrackPath& path, double k);

struct RasterizedCrack {
    Mask mask;
    bool empty = false;  // set when the path missed the canvas entirely
};

// Pixel (x, y) is set iff the distance from its center ((x+0.5)*gsd,
// (y+0.5)*gsd) to some skeleton segment is within the linearly interpolated
// half-width at the closest point. Strictly binary, no anti-aliasing.
RasterizedCrack rasterize_crack(const CrackPath& path, double gsd,
                                int canvas_width, int canvas_height);

}  // namespace cracksim
