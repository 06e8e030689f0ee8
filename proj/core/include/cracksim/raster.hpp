#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cracksim {

// Interleaved float raster, values nominally in [0,1]. 1 or 3 channels.
struct Image {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<float> data;

    Image() = default;
    Image(int w, int h, int c, float fill = 0.0f)
        : width(w), height(h), channels(c),
          data(static_cast<size_t>(w) * h * c, fill) {}

    float& at(int x, int y, int c = 0) {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    float at(int x, int y, int c = 0) const {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }

    bool empty() const { return data.empty(); }
    size_t pixel_count() const { return static_cast<size_t>(width) * height; }
    bool same_dims(const Image& o) const { return width == o.width && height == o.height; }
};

// Strictly binary raster: every element is 0 or 1.
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> data;

    Mask() = default;
    Mask(int w, int h, uint8_t fill = 0)
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

    uint8_t& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    uint8_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }

    size_t pixel_count() const { return static_cast<size_t>(width) * height; }
    size_t count_ones() const;
    bool operator==(const Mask&) const = default;
};

inline void require_same_dims(const Image& a, const Mask& b, const char* what) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

// Mean over all channels and pixels.
double mean_value(const Image& img);

// Rec.709 luma; for single-channel images returns the value itself.
double luminance(const Image& img, int x, int y);
double mean_luminance(const Image& img);

inline float clamp01(float v) { return v < 0.0f ? 0.0f : (v > 1.0f ? 1.0f : v); }

// Bilinear sample with edge replication; per channel.
float sample_bilinear(const Image& img, float x, float y, int c);

// Nearest-neighbor sample with edge replication.
uint8_t sample_nearest(const Mask& m, float x, float y);

// Separable Gaussian convolution, kernel radius ceil(3*sigma), kernel
// renormalized to sum 1, border replication. sigma <= 0 returns the input.
Image gaussian_blur(const Image& img, double sigma);

// Single-channel variant used for displacement fields.
std::vector<float> gaussian_blur_plane(const std::vector<float>& plane,
                                       int width, int height, double sigma);

}  // namespace cracksim
