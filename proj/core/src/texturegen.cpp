#include "cracksim/texturegen.hpp"

#include <algorithm>
#include <cmath>

#include "cracksim/rng.hpp"

namespace cracksim {

void TileSpec::validate() const {
    if (size_m <= 0.0) throw std::invalid_argument("TileSpec: size_m must be > 0");
    if (resolution_px < 16)
        throw std::invalid_argument("TileSpec: resolution_px must be >= 16");
    if (base_gray <= 0.0 || base_gray >= 1.0)
        throw std::invalid_argument("TileSpec: base_gray must be in (0, 1)");
    if (noise_amplitude < 0.0)
        throw std::invalid_argument("TileSpec: noise_amplitude must be >= 0");
    if (joint_width_m < 0.0)
        throw std::invalid_argument("TileSpec: joint_width_m must be >= 0");
}

namespace {

double lattice_value(uint64_t seed, int octave, int64_t ix, int64_t iy) {
    uint64_t h = Rng::mix(seed, static_cast<uint64_t>(octave) + 0x51ED270B);
    h = Rng::mix(h, static_cast<uint64_t>(ix));
    h = Rng::mix(h, static_cast<uint64_t>(iy));
    return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;  // [-1, 1)
}

double fade(double t) { return t * t * (3.0 - 2.0 * t); }

double value_noise(uint64_t seed, int octave, double x, double y) {
    const double fx = std::floor(x), fy = std::floor(y);
    const int64_t ix = static_cast<int64_t>(fx), iy = static_cast<int64_t>(fy);
    const double tx = fade(x - fx), ty = fade(y - fy);
    const double v00 = lattice_value(seed, octave, ix, iy);
    const double v10 = lattice_value(seed, octave, ix + 1, iy);
    const double v01 = lattice_value(seed, octave, ix, iy + 1);
    const double v11 = lattice_value(seed, octave, ix + 1, iy + 1);
    const double a = v00 + (v10 - v00) * tx;
    const double b = v01 + (v11 - v01) * tx;
    return a + (b - a) * ty;
}

// 3 octaves, persistence 0.5. Raw (unstandardized) field.
double octave_noise(uint64_t seed, double x, double y) {
    double amp = 1.0, sum = 0.0;
    for (int o = 0; o < 3; ++o) {
        sum += amp * value_noise(seed, o, x, y);
        x *= 2.0;
        y *= 2.0;
        amp *= 0.5;
    }
    return sum;
}

// Empirical std of the raw 3-octave field (lattice values uniform in [-1,1]).
constexpr double kOctaveNoiseStd = 0.44;

}  // namespace

ConcreteNoise::ConcreteNoise(uint64_t seed, double feature_scale_m)
    : seed_(seed), feature_scale_m_(feature_scale_m) {}

double ConcreteNoise::operator()(double u_m, double v_m) const {
    return octave_noise(seed_, u_m / feature_scale_m_, v_m / feature_scale_m_) /
           kOctaveNoiseStd;
}

Image synthesize_tile(const TileSpec& spec) {
    spec.validate();
    const int n = spec.resolution_px;
    const double px_m = spec.size_m / n;  // meters per pixel

    std::vector<double> noise(static_cast<size_t>(n) * n, 0.0);
    if (spec.noise_amplitude > 0.0) {
        const double feature_scale_m = 0.5;
        double sum = 0.0, sum2 = 0.0;
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                const double v = octave_noise(spec.seed, (x + 0.5) * px_m / feature_scale_m,
                                              (y + 0.5) * px_m / feature_scale_m);
                noise[static_cast<size_t>(y) * n + x] = v;
                sum += v;
                sum2 += v * v;
            }
        }
        // Standardize so interior std-dev lands on noise_amplitude * base_gray.
        const double count = static_cast<double>(n) * n;
        const double mean = sum / count;
        const double stddev = std::sqrt(std::max(sum2 / count - mean * mean, 1e-12));
        for (auto& v : noise) v = (v - mean) / stddev;
    }

    Image out(n, n, 3);
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            double v = spec.base_gray *
                       (1.0 + spec.noise_amplitude * noise[static_cast<size_t>(y) * n + x]);
            if (spec.joint_width_m > 0.0) {
                const double du = std::min((x + 0.5) * px_m, (n - x - 0.5) * px_m);
                const double dv = std::min((y + 0.5) * px_m, (n - y - 0.5) * px_m);
                const double d = std::min(du, dv);
                if (d < spec.joint_width_m) {
                    const double t = d / spec.joint_width_m;  // 0 at border
                    v *= 0.6 + 0.4 * t;
                }
            }
            const float c = clamp01(static_cast<float>(v));
            out.at(x, y, 0) = c;
            out.at(x, y, 1) = c;
            out.at(x, y, 2) = c;
        }
    }
    return out;
}

Image normal_from_gradient(const Image& height_proxy, double strength) {
    if (height_proxy.empty())
        throw std::invalid_argument("normal_from_gradient: empty raster");
    if (strength <= 0.0)
        throw std::invalid_argument("normal_from_gradient: strength must be > 0");
    const int w = height_proxy.width, h = height_proxy.height;
    Image out(w, h, 3);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int xm = std::max(x - 1, 0), xp = std::min(x + 1, w - 1);
            const int ym = std::max(y - 1, 0), yp = std::min(y + 1, h - 1);
            const double gx =
                (height_proxy.at(xp, y) - height_proxy.at(xm, y)) / (xp - xm);
            const double gy =
                (height_proxy.at(x, yp) - height_proxy.at(x, ym)) / (yp - ym);
            const double nx = -strength * gx, ny = -strength * gy, nz = 1.0;
            const double inv = 1.0 / std::sqrt(nx * nx + ny * ny + nz * nz);
            out.at(x, y, 0) = static_cast<float>((nx * inv + 1.0) * 0.5);
            out.at(x, y, 1) = static_cast<float>((ny * inv + 1.0) * 0.5);
            out.at(x, y, 2) = static_cast<float>((nz * inv + 1.0) * 0.5);
        }
    }
    return out;
}

std::vector<float> distance_into_mask(const Mask& mask, int clamp_px) {
    const int w = mask.width, h = mask.height;
    const float big = static_cast<float>(clamp_px);
    std::vector<float> dist(mask.pixel_count());
    for (size_t i = 0; i < dist.size(); ++i) dist[i] = mask.data[i] ? big : 0.0f;

    auto at = [&](int x, int y) -> float& { return dist[static_cast<size_t>(y) * w + x]; };
    // Two-pass chamfer with unit costs over the 8-neighborhood (chessboard metric).
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y)) continue;
            float d = at(x, y);
            if (x > 0) d = std::min(d, at(x - 1, y) + 1);
            if (y > 0) {
                d = std::min(d, at(x, y - 1) + 1);
                if (x > 0) d = std::min(d, at(x - 1, y - 1) + 1);
                if (x < w - 1) d = std::min(d, at(x + 1, y - 1) + 1);
            }
            at(x, y) = std::min(d, big);
        }
    }
    for (int y = h - 1; y >= 0; --y) {
        for (int x = w - 1; x >= 0; --x) {
            if (!mask.at(x, y)) continue;
            float d = at(x, y);
            if (x < w - 1) d = std::min(d, at(x + 1, y) + 1);
            if (y < h - 1) {
                d = std::min(d, at(x, y + 1) + 1);
                if (x < w - 1) d = std::min(d, at(x + 1, y + 1) + 1);
                if (x > 0) d = std::min(d, at(x - 1, y + 1) + 1);
            }
            at(x, y) = std::min(d, big);
        }
    }
    return dist;
}

DefectTexture assemble_defect(const Mask& opacity, uint64_t seed, double darkening,
                              double noise_amplitude, double base_gray) {
    if (darkening <= 0.0 || darkening > 1.0)
        throw std::invalid_argument("assemble_defect: darkening must be in (0, 1]");
    if (opacity.count_ones() == 0)
        throw std::invalid_argument("assemble_defect: opacity mask is empty");

    const int w = opacity.width, h = opacity.height;
    const auto depth = distance_into_mask(opacity, 3);
    const ConcreteNoise noise(Rng::mix(seed, 0xD3F3C7), 0.05);

    // Height proxy: surface at 0, depressed inside the crack proportionally
    // to distance from the rim, scaled by darkening.
    Image height(w, h, 1, 0.0f);
    Image rgb(w, h, 3, 0.0f);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const float d = depth[static_cast<size_t>(y) * w + x] / 3.0f;
            height.at(x, y) = static_cast<float>(-darkening) * d;
            if (opacity.at(x, y)) {
                const double n = noise(x * 0.01, y * 0.01);
                double v = darkening * base_gray * (1.0 + noise_amplitude * 0.5 * n);
                v *= 1.0 - 0.3 * d;  // deeper pixels read darker
                const float c = clamp01(static_cast<float>(v));
                rgb.at(x, y, 0) = c;
                rgb.at(x, y, 1) = c;
                rgb.at(x, y, 2) = c;
            }
        }
    }

    DefectTexture out;
    out.rgb = std::move(rgb);
    out.normal = normal_from_gradient(height, 2.0);
    out.opacity = opacity;
    return out;
}

}  // namespace cracksim
