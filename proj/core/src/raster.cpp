#include "cracksim/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cracksim {

size_t Mask::count_ones() const {
    return static_cast<size_t>(std::count(data.begin(), data.end(), uint8_t{1}));
}

double mean_value(const Image& img) {
    if (img.data.empty()) return 0.0;
    double s = std::accumulate(img.data.begin(), img.data.end(), 0.0);
    return s / static_cast<double>(img.data.size());
}

double luminance(const Image& img, int x, int y) {
    if (img.channels == 1) return img.at(x, y, 0);
    return 0.2126 * img.at(x, y, 0) + 0.7152 * img.at(x, y, 1) + 0.0722 * img.at(x, y, 2);
}

double mean_luminance(const Image& img) {
    double s = 0.0;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) s += luminance(img, x, y);
    return img.pixel_count() ? s / static_cast<double>(img.pixel_count()) : 0.0;
}

float sample_bilinear(const Image& img, float x, float y, int c) {
    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    const float fx = x - static_cast<float>(x0);
    const float fy = y - static_cast<float>(y0);
    auto cx = [&](int v) { return std::clamp(v, 0, img.width - 1); };
    auto cy = [&](int v) { return std::clamp(v, 0, img.height - 1); };
    const float v00 = img.at(cx(x0), cy(y0), c);
    const float v10 = img.at(cx(x0 + 1), cy(y0), c);
    const float v01 = img.at(cx(x0), cy(y0 + 1), c);
    const float v11 = img.at(cx(x0 + 1), cy(y0 + 1), c);
    return v00 * (1 - fx) * (1 - fy) + v10 * fx * (1 - fy) + v01 * (1 - fx) * fy +
           v11 * fx * fy;
}

uint8_t sample_nearest(const Mask& m, float x, float y) {
    const int xi = std::clamp(static_cast<int>(std::lround(x)), 0, m.width - 1);
    const int yi = std::clamp(static_cast<int>(std::lround(y)), 0, m.height - 1);
    return m.at(xi, yi);
}

static std::vector<float> gaussian_kernel(double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<float> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double v = std::exp(-0.5 * (i * i) / (sigma * sigma));
        k[i + radius] = static_cast<float>(v);
        sum += v;
    }
    for (auto& v : k) v = static_cast<float>(v / sum);
    return k;
}

std::vector<float> gaussian_blur_plane(const std::vector<float>& plane,
                                       int width, int height, double sigma) {
    if (sigma <= 0.0) return plane;
    const auto k = gaussian_kernel(sigma);
    const int radius = static_cast<int>(k.size() / 2);

    std::vector<float> tmp(plane.size()), out(plane.size());
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            float acc = 0.0f;
            for (int i = -radius; i <= radius; ++i) {
                const int xi = std::clamp(x + i, 0, width - 1);
                acc += k[i + radius] * plane[static_cast<size_t>(y) * width + xi];
            }
            tmp[static_cast<size_t>(y) * width + x] = acc;
        }
    }
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            float acc = 0.0f;
            for (int i = -radius; i <= radius; ++i) {
                const int yi = std::clamp(y + i, 0, height - 1);
                acc += k[i + radius] * tmp[static_cast<size_t>(yi) * width + x];
            }
            out[static_cast<size_t>(y) * width + x] = acc;
        }
    }
    return out;
}

Image gaussian_blur(const Image& img, double sigma) {
    if (sigma <= 0.0) return img;
    Image out(img.width, img.height, img.channels);
    std::vector<float> plane(img.pixel_count());
    for (int c = 0; c < img.channels; ++c) {
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x)
                plane[static_cast<size_t>(y) * img.width + x] = img.at(x, y, c);
        const auto blurred = gaussian_blur_plane(plane, img.width, img.height, sigma);
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x)
                out.at(x, y, c) = blurred[static_cast<size_t>(y) * img.width + x];
    }
    return out;
}

}  // namespace cracksim
