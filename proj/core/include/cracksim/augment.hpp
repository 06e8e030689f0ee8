#pragma once

#include <cstdint>

#include "cracksim/sample.hpp"

namespace cracksim {

// Stochastic augmentation pipeline applied jointly to image and mask.
// Probabilities gate each stage; ranges bound the sampled parameters.
struct AugmentConfig {
    double p_flip_h = 0.5;
    double p_flip_v = 0.5;
    double p_rotate = 0.5;
    double p_scale = 0.5;
    double rotation_range_deg = 30.0;   // +/-
    double scale_min = 0.8;
    double scale_max = 1.2;

    double p_elastic = 0.3;
    double elastic_alpha = 30.0;  // px
    double elastic_sigma = 6.0;   // px

    double p_photometric = 0.5;
    double brightness_range = 0.1;   // additive, +/-
    double contrast_min = 0.8;
    double contrast_max = 1.2;
    double gamma_min = 0.8;
    double gamma_max = 1.25;
    double hue_range_deg = 18.0;     // +/-; concrete is near-achromatic
    double p_sharpen = 0.25;
    double sharpen_amount_max = 0.8;
    double p_blur = 0.25;
    double blur_sigma_max = 1.5;

    double p_motion_blur = 0.3;
    int motion_blur_len_min = 3;
    int motion_blur_len_max = 15;

    void validate() const;
};

enum class GeometricOp { flip_h, flip_v, rotate, scale };

// Image resampled bilinearly, mask nearest-neighbor (re-binarized by
// construction); dimensions preserved, rotate/scale crop-or-pad about the
// center with edge replication. angle in degrees; factor is the scale.
Sample geometric(const Sample& sample, GeometricOp op, double angle_deg = 0.0,
                 double factor = 1.0);

// Smooth random displacement-field warp: per-pixel uniform(-1,1) fields,
// Gaussian-smoothed with std sigma (kernel radius 3*sigma, renormalized),
// scaled by alpha. Image bilinear, mask nearest, border replication.
Sample elastic(const Sample& sample, double alpha, double sigma, uint64_t seed);

struct PhotometricParams {
    double brightness = 0.0;   // additive
    double contrast = 1.0;     // scale about the image mean
    double gamma = 1.0;        // power law
    double hue_deg = 0.0;      // hue rotation with wraparound
    double sharpen_amount = 0.0;
    double sharpen_sigma = 1.0;
    double blur_sigma = 0.0;
};

// Brightness add -> contrast about mean -> gamma -> hue rotation ->
// unsharp mask -> Gaussian blur; clamped to [0,1]. Masks are never touched.
Image photometric(const Image& image, const PhotometricParams& params);

// Normalized 1-px-thick line kernel of the given length/angle, border
// replication. length=1 is the identity.
Image motion_blur(const Image& image, int length, double angle_rad);

// geometric -> elastic -> photometric -> motion blur, each gated by its
// probability; all randomness derived from seed.
Sample augment_pipeline(const Sample& sample, const AugmentConfig& config,
                        uint64_t seed);

}  // namespace cracksim
