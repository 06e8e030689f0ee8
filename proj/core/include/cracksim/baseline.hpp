#pragma once

#include "cracksim/raster.hpp"

namespace cracksim {

// Classical local-darkness crack detector: cracks are pixels noticeably
// darker than their neighborhood. window_px is the box window edge (odd),
// k the logistic contrast gain.
struct BaselineParams {
    int window_px = 31;
    double k = 4.0;
};

// Grayscale conversion, then d = max(0, local_mean - pixel) / max(local_std,
// 1e-3) over the window, probability = logistic(k * (d - 1)). Deterministic;
// output single-channel in [0,1].
Image baseline_segment(const Image& image, const BaselineParams& params = {});

}  // namespace cracksim
