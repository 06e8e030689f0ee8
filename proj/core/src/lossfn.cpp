#include "cracksim/lossfn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cracksim {

namespace {

void check_inputs(const Image& prob, const Mask& ref, const char* what) {
    if (prob.channels != 1)
        throw std::invalid_argument(std::string(what) + ": probability map must be single-channel");
    require_same_dims(prob, ref, what);
}

}  // namespace

LossValue bce(const Image& prob, const Mask& ref, double eps) {
    check_inputs(prob, ref, "bce");
    if (eps <= 0.0 || eps >= 0.5)
        throw std::invalid_argument("bce: eps must be in (0, 0.5)");

    const double n = static_cast<double>(prob.pixel_count());
    LossValue out;
    out.gradient = Image(prob.width, prob.height, 1);

    double sum = 0.0;
    for (size_t i = 0; i < prob.data.size(); ++i) {
        const double p = prob.data[i];
        const double r = ref.data[i];
        const bool clamped = p < eps || p > 1.0 - eps;
        const double pc = std::clamp(p, eps, 1.0 - eps);
        sum += -(r * std::log(pc) + (1.0 - r) * std::log(1.0 - pc));
        out.gradient.data[i] =
            clamped ? 0.0f
                    : static_cast<float>((-r / pc + (1.0 - r) / (1.0 - pc)) / n);
    }
    out.value = sum / n;
    return out;
}

LossValue generalized_dice(const Image& prob, const Mask& ref, double eps) {
    check_inputs(prob, ref, "generalized_dice");
    if (eps <= 0.0) throw std::invalid_argument("generalized_dice: eps must be > 0");

    // Class 1 = defect (r, p), class 0 = background (1-r, 1-p).
    double n1 = 0.0, overlap1 = 0.0, overlap0 = 0.0, psum = 0.0;
    for (size_t i = 0; i < prob.data.size(); ++i) {
        const double p = prob.data[i];
        const double r = ref.data[i];
        n1 += r;
        overlap1 += r * p;
        overlap0 += (1.0 - r) * (1.0 - p);
        psum += p;
    }
    const double total = static_cast<double>(prob.pixel_count());
    const double n0 = total - n1;
    const double wcap = 1.0 / (eps * eps);
    const double w1 = std::min(n1 > 0.0 ? 1.0 / (n1 * n1) : wcap, wcap);
    const double w0 = std::min(n0 > 0.0 ? 1.0 / (n0 * n0) : wcap, wcap);

    const double numer = w1 * overlap1 + w0 * overlap0 + eps;
    const double denom = w1 * (n1 + psum) + w0 * (n0 + total - psum) + eps;

    LossValue out;
    out.value = 1.0 - 2.0 * numer / denom;
    out.gradient = Image(prob.width, prob.height, 1);
    // d(numer)/dp_i = w1*r_i - w0*(1-r_i); d(denom)/dp_i = w1 - w0.
    const double ddenom = w1 - w0;
    for (size_t i = 0; i < prob.data.size(); ++i) {
        const double r = ref.data[i];
        const double dnumer = w1 * r - w0 * (1.0 - r);
        out.gradient.data[i] = static_cast<float>(
            -2.0 * (dnumer * denom - numer * ddenom) / (denom * denom));
    }
    return out;
}

LossValue combined_loss(const Image& prob, const Mask& ref, double dice_weight,
                        double bce_weight, double eps) {
    if (dice_weight < 0.0 || bce_weight < 0.0 || (dice_weight == 0.0 && bce_weight == 0.0))
        throw std::invalid_argument("combined_loss: weights must be >= 0 and not both zero");

    LossValue out;
    out.gradient = Image(prob.width, prob.height, 1);
    if (dice_weight > 0.0) {
        const LossValue d = generalized_dice(prob, ref, eps);
        out.value += dice_weight * d.value;
        for (size_t i = 0; i < out.gradient.data.size(); ++i)
            out.gradient.data[i] += static_cast<float>(dice_weight) * d.gradient.data[i];
    }
    if (bce_weight > 0.0) {
        const LossValue b = bce(prob, ref, eps);
        out.value += bce_weight * b.value;
        for (size_t i = 0; i < out.gradient.data.size(); ++i)
            out.gradient.data[i] += static_cast<float>(bce_weight) * b.gradient.data[i];
    }
    return out;
}

}  // namespace cracksim
