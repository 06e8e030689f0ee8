#include "cracksim/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cracksim {

Image baseline_segment(const Image& image, const BaselineParams& params) {
    if (params.window_px < 3 || params.window_px % 2 == 0)
        throw std::invalid_argument("baseline_segment: window_px must be odd and >= 3");
    const int w = image.width, h = image.height;
    const int r = params.window_px / 2;

    std::vector<double> gray(static_cast<size_t>(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            gray[static_cast<size_t>(y) * w + x] = luminance(image, x, y);

    // Summed-area tables over value and value^2; windows clamp at borders.
    std::vector<double> sat(static_cast<size_t>(w + 1) * (h + 1), 0.0);
    std::vector<double> sat2(sat.size(), 0.0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double v = gray[static_cast<size_t>(y) * w + x];
            const size_t i = static_cast<size_t>(y + 1) * (w + 1) + (x + 1);
            sat[i] = v + sat[i - 1] + sat[i - (w + 1)] - sat[i - (w + 1) - 1];
            sat2[i] = v * v + sat2[i - 1] + sat2[i - (w + 1)] - sat2[i - (w + 1) - 1];
        }
    }
    auto window_sum = [&](const std::vector<double>& s, int x0, int y0, int x1, int y1) {
        return s[static_cast<size_t>(y1 + 1) * (w + 1) + (x1 + 1)] -
               s[static_cast<size_t>(y0) * (w + 1) + (x1 + 1)] -
               s[static_cast<size_t>(y1 + 1) * (w + 1) + x0] +
               s[static_cast<size_t>(y0) * (w + 1) + x0];
    };

    Image out(w, h, 1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - r), x1 = std::min(w - 1, x + r);
            const int y0 = std::max(0, y - r), y1 = std::min(h - 1, y + r);
            const double count = static_cast<double>(x1 - x0 + 1) * (y1 - y0 + 1);
            const double mean = window_sum(sat, x0, y0, x1, y1) / count;
            const double var =
                std::max(window_sum(sat2, x0, y0, x1, y1) / count - mean * mean, 0.0);
            const double stddev = std::max(std::sqrt(var), 1e-3);
            const double d =
                std::max(0.0, mean - gray[static_cast<size_t>(y) * w + x]) / stddev;
            const double z = params.k * (d - 1.0);
            out.at(x, y) = static_cast<float>(1.0 / (1.0 + std::exp(-z)));
        }
    }
    return out;
}

}  // namespace cracksim
