#pragma once

#include "cracksim/raster.hpp"

namespace cracksim {

// Scalar loss plus its analytic gradient with respect to the probability map.
struct LossValue {
    double value = 0.0;
    Image gradient;  // single channel, same dims as the input
};

// Mean binary cross-entropy with probabilities clamped to [eps, 1-eps];
// the gradient is zero wherever the clamp is active.
LossValue bce(const Image& prob, const Mask& ref, double eps = 1e-7);

// Two-class Generalised Dice loss: classes {defect, background} with
// background r0 = 1-r, p0 = 1-p; class weight w_l = 1/(sum r_l)^2 capped at
// 1/eps^2; loss = 1 - 2*(sum_l w_l sum_n r_ln p_ln + eps) /
//                     (sum_l w_l sum_n (r_ln + p_ln) + eps).
LossValue generalized_dice(const Image& prob, const Mask& ref, double eps = 1e-7);

// dice_weight * generalized_dice + bce_weight * bce (defaults 1:1).
LossValue combined_loss(const Image& prob, const Mask& ref,
                        double dice_weight = 1.0, double bce_weight = 1.0,
                        double eps = 1e-7);

}  // namespace cracksim
