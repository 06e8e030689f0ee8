#pragma once

#include <cstdint>

#include "cracksim/raster.hpp"

namespace cracksim {

// Concrete tile appearance. size_m matches real airport tile dimensions.
struct TileSpec {
    double size_m = 5.0;
    int resolution_px = 500;
    double base_gray = 0.55;
    double noise_amplitude = 0.08;  // relative albedo noise
    double joint_width_m = 0.02;    // darkened seam at tile borders
    uint64_t seed = 0;

    void validate() const;
};

// Per-defect texture triplet. The three rasters always share dimensions;
// opacity is strictly binary and doubles as the ground-truth annotation.
struct DefectTexture {
    Image rgb;      // 3 channels, [0,1]; only meaningful where opacity=1
    Image normal;   // 3 channels, tangent-space normals encoded (n+1)/2
    Mask opacity;
};

// Value-noise concrete albedo: 3 octaves, persistence 0.5, standardized so
// the interior std-dev equals noise_amplitude * base_gray, plus seam
// darkening within joint_width_m of the tile border. Deterministic in seed.
Image synthesize_tile(const TileSpec& spec);

// Noise field sampled at arbitrary tile-local coordinates; lets a scene
// evaluate one continuous concrete texture in its own pixel grid. u, v in
// [0, size_m). Returned values are standardized noise (mean ~0, std ~1).
class ConcreteNoise {
public:
    ConcreteNoise(uint64_t seed, double feature_scale_m = 0.5);
    double operator()(double u_m, double v_m) const;

private:
    uint64_t seed_;
    double feature_scale_m_;
};

// n = normalize(-strength*gx, -strength*gy, 1) from central-difference
// gradients (one-sided at borders), encoded rgb = (n+1)/2.
Image normal_from_gradient(const Image& height_proxy, double strength);

// Builds the crack interior: darkened, noise-modulated RGB plus a normal map
// from a depth proxy (distance into the crack, clamped at 3 px). base_gray
// is the albedo of the surrounding concrete the defect is judged against.
DefectTexture assemble_defect(const Mask& opacity, uint64_t seed,
                              double darkening = 0.45,
                              double noise_amplitude = 0.15,
                              double base_gray = 0.55);

// Chebyshev-metric distance (in px) from each inside pixel to the nearest
// outside pixel, clamped at clamp_px; 0 outside the mask.
std::vector<float> distance_into_mask(const Mask& mask, int clamp_px);

}  // namespace cracksim
