#include "cracksim/augment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "cracksim/rng.hpp"

namespace cracksim {

void AugmentConfig::validate() const {
    auto prob = [](double p, const char* name) {
        if (p < 0.0 || p > 1.0)
            throw std::invalid_argument(std::string("AugmentConfig: ") + name +
                                        " must be in [0, 1]");
    };
    prob(p_flip_h, "p_flip_h");
    prob(p_flip_v, "p_flip_v");
    prob(p_rotate, "p_rotate");
    prob(p_scale, "p_scale");
    prob(p_elastic, "p_elastic");
    prob(p_photometric, "p_photometric");
    prob(p_sharpen, "p_sharpen");
    prob(p_blur, "p_blur");
    prob(p_motion_blur, "p_motion_blur");
    if (elastic_sigma <= 0.0)
        throw std::invalid_argument("AugmentConfig: elastic_sigma must be > 0");
    if (elastic_alpha < 0.0)
        throw std::invalid_argument("AugmentConfig: elastic_alpha must be >= 0");
    if (scale_min <= 0.0 || scale_max < scale_min)
        throw std::invalid_argument("AugmentConfig: scale range must be positive");
    if (motion_blur_len_min < 1 || motion_blur_len_max < motion_blur_len_min)
        throw std::invalid_argument("AugmentConfig: invalid motion blur length range");
}

namespace {

Sample flip(const Sample& sample, bool horizontal) {
    Sample out = sample;
    const int w = sample.image.width, h = sample.image.height;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int sx = horizontal ? w - 1 - x : x;
            const int sy = horizontal ? y : h - 1 - y;
            for (int c = 0; c < sample.image.channels; ++c)
                out.image.at(x, y, c) = sample.image.at(sx, sy, c);
            out.mask.at(x, y) = sample.mask.at(sx, sy);
        }
    }
    return out;
}

// Inverse-mapped affine resample about the image center: image bilinear,
// mask nearest, both with edge replication.
Sample affine(const Sample& sample, double angle_rad, double factor) {
    Sample out = sample;
    const int w = sample.image.width, h = sample.image.height;
    const double cx = (w - 1) * 0.5, cy = (h - 1) * 0.5;
    const double cosA = std::cos(-angle_rad), sinA = std::sin(-angle_rad);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double dx = (x - cx) / factor, dy = (y - cy) / factor;
            const float sx = static_cast<float>(cosA * dx - sinA * dy + cx);
            const float sy = static_cast<float>(sinA * dx + cosA * dy + cy);
            for (int c = 0; c < sample.image.channels; ++c)
                out.image.at(x, y, c) = sample_bilinear(sample.image, sx, sy, c);
            out.mask.at(x, y) = sample_nearest(sample.mask, sx, sy);
        }
    }
    return out;
}

void rgb_to_hsv(double r, double g, double b, double& h, double& s, double& v) {
    const double mx = std::max({r, g, b}), mn = std::min({r, g, b});
    const double d = mx - mn;
    v = mx;
    s = mx > 0.0 ? d / mx : 0.0;
    if (d <= 0.0) {
        h = 0.0;
    } else if (mx == r) {
        h = 60.0 * std::fmod((g - b) / d, 6.0);
    } else if (mx == g) {
        h = 60.0 * ((b - r) / d + 2.0);
    } else {
        h = 60.0 * ((r - g) / d + 4.0);
    }
    if (h < 0.0) h += 360.0;
}

void hsv_to_rgb(double h, double s, double v, double& r, double& g, double& b) {
    const double c = v * s;
    const double hp = h / 60.0;
    const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
    double r1 = 0, g1 = 0, b1 = 0;
    if (hp < 1) { r1 = c; g1 = x; }
    else if (hp < 2) { r1 = x; g1 = c; }
    else if (hp < 3) { g1 = c; b1 = x; }
    else if (hp < 4) { g1 = x; b1 = c; }
    else if (hp < 5) { r1 = x; b1 = c; }
    else { r1 = c; b1 = x; }
    const double m = v - c;
    r = r1 + m;
    g = g1 + m;
    b = b1 + m;
}

}  // namespace

Sample geometric(const Sample& sample, GeometricOp op, double angle_deg,
                 double factor) {
    require_same_dims(sample.image, sample.mask, "geometric");
    switch (op) {
        case GeometricOp::flip_h: return flip(sample, true);
        case GeometricOp::flip_v: return flip(sample, false);
        case GeometricOp::rotate:
            if (angle_deg == 0.0) return sample;
            return affine(sample, angle_deg * M_PI / 180.0, 1.0);
        case GeometricOp::scale:
            if (factor <= 0.0)
                throw std::invalid_argument("geometric: scale factor must be > 0");
            if (factor == 1.0) return sample;
            return affine(sample, 0.0, factor);
    }
    throw std::invalid_argument("geometric: unknown op");
}

Sample elastic(const Sample& sample, double alpha, double sigma, uint64_t seed) {
    require_same_dims(sample.image, sample.mask, "elastic");
    if (alpha < 0.0) throw std::invalid_argument("elastic: alpha must be >= 0");
    if (sigma <= 0.0) throw std::invalid_argument("elastic: sigma must be > 0");
    if (alpha == 0.0) return sample;

    const int w = sample.image.width, h = sample.image.height;
    const size_t n = static_cast<size_t>(w) * h;
    std::vector<float> dx(n), dy(n);
    Rng rng(seed);
    for (auto& v : dx) v = static_cast<float>(rng.uniform(-1.0, 1.0));
    for (auto& v : dy) v = static_cast<float>(rng.uniform(-1.0, 1.0));
    dx = gaussian_blur_plane(dx, w, h, sigma);
    dy = gaussian_blur_plane(dy, w, h, sigma);

    Sample out = sample;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const size_t i = static_cast<size_t>(y) * w + x;
            const float sx = x + static_cast<float>(alpha) * dx[i];
            const float sy = y + static_cast<float>(alpha) * dy[i];
            for (int c = 0; c < sample.image.channels; ++c)
                out.image.at(x, y, c) = sample_bilinear(sample.image, sx, sy, c);
            out.mask.at(x, y) = sample_nearest(sample.mask, sx, sy);
        }
    }
    return out;
}

Image photometric(const Image& image, const PhotometricParams& p) {
    Image out = image;

    if (p.brightness != 0.0)
        for (auto& v : out.data) v = clamp01(v + static_cast<float>(p.brightness));

    if (p.contrast != 1.0) {
        const float mean = static_cast<float>(mean_value(out));
        for (auto& v : out.data)
            v = clamp01(mean + static_cast<float>(p.contrast) * (v - mean));
    }

    if (p.gamma != 1.0)
        for (auto& v : out.data)
            v = clamp01(std::pow(std::max(v, 0.0f), static_cast<float>(p.gamma)));

    if (p.hue_deg != 0.0 && out.channels == 3) {
        for (int y = 0; y < out.height; ++y) {
            for (int x = 0; x < out.width; ++x) {
                double hh, ss, vv;
                rgb_to_hsv(out.at(x, y, 0), out.at(x, y, 1), out.at(x, y, 2), hh, ss, vv);
                hh = std::fmod(hh + p.hue_deg + 360.0, 360.0);
                double r, g, b;
                hsv_to_rgb(hh, ss, vv, r, g, b);
                out.at(x, y, 0) = clamp01(static_cast<float>(r));
                out.at(x, y, 1) = clamp01(static_cast<float>(g));
                out.at(x, y, 2) = clamp01(static_cast<float>(b));
            }
        }
    }

    if (p.sharpen_amount > 0.0) {
        const Image blurred = gaussian_blur(out, p.sharpen_sigma);
        for (size_t i = 0; i < out.data.size(); ++i)
            out.data[i] = clamp01(out.data[i] +
                                  static_cast<float>(p.sharpen_amount) *
                                      (out.data[i] - blurred.data[i]));
    }

    if (p.blur_sigma > 0.0) {
        out = gaussian_blur(out, p.blur_sigma);
        for (auto& v : out.data) v = clamp01(v);
    }

    return out;
}

Image motion_blur(const Image& image, int length, double angle_rad) {
    if (length < 1) throw std::invalid_argument("motion_blur: length must be >= 1");
    if (length == 1) return image;

    // Accumulate the line taps into unique integer offsets so the kernel
    // stays normalized when rounding collapses neighbors.
    std::map<std::pair<int, int>, float> kernel;
    const double c = std::cos(angle_rad), s = std::sin(angle_rad);
    for (int i = 0; i < length; ++i) {
        const double t = i - (length - 1) * 0.5;
        const int ox = static_cast<int>(std::lround(t * c));
        const int oy = static_cast<int>(std::lround(t * s));
        kernel[{ox, oy}] += 1.0f / static_cast<float>(length);
    }

    Image out(image.width, image.height, image.channels);
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            for (int ch = 0; ch < image.channels; ++ch) {
                float acc = 0.0f;
                for (const auto& [off, wgt] : kernel) {
                    const int sx = std::clamp(x + off.first, 0, image.width - 1);
                    const int sy = std::clamp(y + off.second, 0, image.height - 1);
                    acc += wgt * image.at(sx, sy, ch);
                }
                out.at(x, y, ch) = acc;
            }
        }
    }
    return out;
}

Sample augment_pipeline(const Sample& sample, const AugmentConfig& config,
                        uint64_t seed) {
    config.validate();
    Rng rng(seed);
    Sample out = sample;

    if (rng.bernoulli(config.p_flip_h)) out = geometric(out, GeometricOp::flip_h);
    if (rng.bernoulli(config.p_flip_v)) out = geometric(out, GeometricOp::flip_v);
    if (rng.bernoulli(config.p_rotate)) {
        const double angle =
            rng.uniform(-config.rotation_range_deg, config.rotation_range_deg);
        out = geometric(out, GeometricOp::rotate, angle);
    }
    if (rng.bernoulli(config.p_scale)) {
        const double factor = rng.uniform(config.scale_min, config.scale_max);
        out = geometric(out, GeometricOp::scale, 0.0, factor);
    }

    if (rng.bernoulli(config.p_elastic))
        out = elastic(out, config.elastic_alpha, config.elastic_sigma, rng.next_u64());

    if (rng.bernoulli(config.p_photometric)) {
        PhotometricParams p;
        p.brightness = rng.uniform(-config.brightness_range, config.brightness_range);
        p.contrast = rng.uniform(config.contrast_min, config.contrast_max);
        p.gamma = rng.uniform(config.gamma_min, config.gamma_max);
        p.hue_deg = rng.uniform(-config.hue_range_deg, config.hue_range_deg);
        if (rng.bernoulli(config.p_sharpen))
            p.sharpen_amount = rng.uniform(0.0, config.sharpen_amount_max);
        if (rng.bernoulli(config.p_blur))
            p.blur_sigma = rng.uniform(0.0, config.blur_sigma_max);
        out.image = photometric(out.image, p);
    }

    if (rng.bernoulli(config.p_motion_blur)) {
        const int len =
            rng.uniform_int(config.motion_blur_len_min, config.motion_blur_len_max);
        const double angle = rng.uniform(0.0, M_PI);
        out.image = motion_blur(out.image, len, angle);
    }

    return out;
}

}  // namespace cracksim
