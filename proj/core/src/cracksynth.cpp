#include "cracksim/cracksynth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cracksim/rng.hpp"

namespace cracksim {

void CrackParams::validate() const {
    if (step_length_m <= 0.0)
        throw std::invalid_argument("CrackParams: step_length_m must be > 0");
    if (width_min_m <= 0.0)
        throw std::invalid_argument("CrackParams: width_min_m must be > 0");
    if (width_max_m < width_min_m)
        throw std::invalid_argument("CrackParams: width_max_m must be >= width_min_m");
    if (width_jitter < 0.0)
        throw std::invalid_argument("CrackParams: width_jitter must be >= 0");
    if (branch_prob < 0.0 || branch_prob >= 1.0)
        throw std::invalid_argument("CrackParams: branch_prob must be in [0, 1)");
    if (max_branch_depth < 0)
        throw std::invalid_argument("CrackParams: max_branch_depth must be >= 0");
    if (target_length_m <= 0.0)
        throw std::invalid_argument("CrackParams: target_length_m must be > 0");
}

bool operator==(const CrackPath& a, const CrackPath& b) {
    return a.vertices == b.vertices && a.widths == b.widths && a.branches == b.branches;
}

bool operator==(const CrackBranch& a, const CrackBranch& b) {
    return a.attach_index == b.attach_index && a.path == b.path;
}

double CrackPath::polyline_length() const {
    double len = 0.0;
    for (size_t i = 1; i < vertices.size(); ++i)
        len += std::hypot(vertices[i].x - vertices[i - 1].x,
                          vertices[i].y - vertices[i - 1].y);
    for (const auto& b : branches) len += b.path.polyline_length();
    return len;
}

namespace {

constexpr double kBranchAngleMin = 20.0 * M_PI / 180.0;
constexpr double kBranchAngleMax = 70.0 * M_PI / 180.0;

// Grows one polyline, drawing steps against the shared length budget.
// allotment caps how much of the budget this particular path may consume.
CrackPath grow_path(Rng& rng, Vec2 start, double heading, const CrackParams& p,
                    double& budget, double allotment, int depth) {
    CrackPath path;
    path.vertices.push_back(start);

    const double base_width = rng.uniform(p.width_min_m, p.width_max_m);
    auto draw_width = [&] {
        const double w = base_width * (1.0 + p.width_jitter * rng.normal());
        return std::clamp(w, p.width_min_m, p.width_max_m);
    };
    path.widths.push_back(draw_width());

    double consumed = 0.0;
    while (budget > 0.0 && consumed < allotment) {
        heading += rng.normal(0.0, p.heading_jitter_rad);
        const Vec2 prev = path.vertices.back();
        path.vertices.push_back({prev.x + p.step_length_m * std::cos(heading),
                                 prev.y + p.step_length_m * std::sin(heading)});
        path.widths.push_back(draw_width());
        budget -= p.step_length_m;
        consumed += p.step_length_m;

        if (depth < p.max_branch_depth && budget >= 2.0 * p.step_length_m &&
            rng.bernoulli(p.branch_prob)) {
            const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
            const double branch_heading =
                heading + sign * rng.uniform(kBranchAngleMin, kBranchAngleMax);
            const double branch_allot =
                std::min(budget, rng.uniform(0.15, 0.35) * p.target_length_m);
            CrackBranch b;
            b.attach_index = path.vertices.size() - 1;
            b.path = grow_path(rng, path.vertices.back(), branch_heading, p,
                               budget, branch_allot, depth + 1);
            path.branches.push_back(std::move(b));
        }
    }

    // Tips taper to the minimum width.
    path.widths.front() = p.width_min_m;
    path.widths.back() = p.width_min_m;
    return path;
}

bool in_capsule(double qx, double qy, Vec2 a, Vec2 b, double wa, double wb) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0)
        t = std::clamp(((qx - a.x) * dx + (qy - a.y) * dy) / len2, 0.0, 1.0);
    const double px = a.x + t * dx, py = a.y + t * dy;
    const double dist = std::hypot(qx - px, qy - py);
    return dist <= 0.5 * (wa + t * (wb - wa));
}

void rasterize_path(const CrackPath& path, double gsd, Mask& mask) {
    for (size_t i = 1; i < path.vertices.size(); ++i) {
        const Vec2 a = path.vertices[i - 1], b = path.vertices[i];
        const double wmax = 0.5 * std::max(path.widths[i - 1], path.widths[i]);
        const int x0 = std::max(
            0, static_cast<int>(std::floor((std::min(a.x, b.x) - wmax) / gsd - 0.5)));
        const int x1 = std::min(
            mask.width - 1,
            static_cast<int>(std::ceil((std::max(a.x, b.x) + wmax) / gsd + 0.5)));
        const int y0 = std::max(
            0, static_cast<int>(std::floor((std::min(a.y, b.y) - wmax) / gsd - 0.5)));
        const int y1 = std::min(
            mask.height - 1,
            static_cast<int>(std::ceil((std::max(a.y, b.y) + wmax) / gsd + 0.5)));
        for (int y = y0; y <= y1; ++y) {
            const double qy = (y + 0.5) * gsd;
            for (int x = x0; x <= x1; ++x) {
                if (mask.at(x, y)) continue;
                const double qx = (x + 0.5) * gsd;
                if (in_capsule(qx, qy, a, b, path.widths[i - 1], path.widths[i]))
                    mask.at(x, y) = 1;
            }
        }
    }
    for (const auto& br : path.branches) rasterize_path(br.path, gsd, mask);
}

}  // namespace

CrackPath generate_crack(uint64_t seed, const CrackParams& params) {
    params.validate();
    Rng rng(seed);
    const double heading = rng.uniform(0.0, 2.0 * M_PI);
    double budget = params.target_length_m;
    return grow_path(rng, {0.0, 0.0}, heading, params, budget,
                     std::numeric_limits<double>::infinity(), 0);
}

CrackPath translate(const CrackPath& path, double dx, double dy) {
    CrackPath out = path;
    for (auto& v : out.vertices) {
        v.x += dx;
        v.y += dy;
    }
    for (auto& b : out.branches) b.path = translate(b.path, dx, dy);
    return out;
}

CrackPath scale(const CrackPath& path, double k) {
    CrackPath out = path;
    for (auto& v : out.vertices) {
        v.x *= k;
        v.y *= k;
    }
    for (auto& w : out.widths) w *= k;
    for (auto& b : out.branches) b.path = scale(b.path, k);
    return out;
}

RasterizedCrack rasterize_crack(const CrackPath& path, double gsd,
                                int canvas_width, int canvas_height) {
    if (gsd <= 0.0) throw std::invalid_argument("rasterize_crack: gsd must be > 0");
    if (canvas_width <= 0 || canvas_height <= 0)
        throw std::invalid_argument("rasterize_crack: canvas must be nonempty");
    RasterizedCrack out;
    out.mask = Mask(canvas_width, canvas_height, 0);
    rasterize_path(path, gsd, out.mask);
    out.empty = out.mask.count_ones() == 0;
    return out;
}

}  // namespace cracksim
