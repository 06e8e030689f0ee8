#include "doctest.h"

#include <cmath>

#include "cracksim/cracksynth.hpp"
#include "cracksim/rng.hpp"

using namespace cracksim;

namespace {

// Independent per-pixel oracle: distance from the pixel center to every
// segment against the linearly interpolated half-width at the projection.
bool oracle_pixel(const CrackPath& path, double qx, double qy) {
    for (size_t i = 1; i < path.vertices.size(); ++i) {
        const Vec2 a = path.vertices[i - 1], b = path.vertices[i];
        const double dx = b.x - a.x, dy = b.y - a.y;
        const double len2 = dx * dx + dy * dy;
        double t = 0.0;
        if (len2 > 0.0)
            t = std::clamp(((qx - a.x) * dx + (qy - a.y) * dy) / len2, 0.0, 1.0);
        const double px = a.x + t * dx, py = a.y + t * dy;
        const double hw = 0.5 * (path.widths[i - 1] +
                                 t * (path.widths[i] - path.widths[i - 1]));
        if (std::hypot(qx - px, qy - py) <= hw) return true;
    }
    for (const auto& br : path.branches)
        if (oracle_pixel(br.path, qx, qy)) return true;
    return false;
}

Mask oracle_raster(const CrackPath& path, double gsd, int w, int h) {
    Mask out(w, h, 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.at(x, y) = oracle_pixel(path, (x + 0.5) * gsd, (y + 0.5) * gsd) ? 1 : 0;
    return out;
}

int max_depth(const CrackPath& path) {
    int d = 0;
    for (const auto& b : path.branches) d = std::max(d, 1 + max_depth(b.path));
    return d;
}

}  // namespace

TEST_CASE("invalid params name the violated bound") {
    CrackParams p;
    p.step_length_m = 0.0;
    CHECK_THROWS_WITH_AS(generate_crack(1, p), doctest::Contains("step_length_m"),
                         std::invalid_argument);
    p = CrackParams{};
    p.branch_prob = 1.0;
    CHECK_THROWS_WITH_AS(generate_crack(1, p), doctest::Contains("branch_prob"),
                         std::invalid_argument);
    p = CrackParams{};
    p.width_max_m = p.width_min_m / 2;
    CHECK_THROWS_AS(generate_crack(1, p), std::invalid_argument);
}

TEST_CASE("branching disabled yields a single constant-width polyline") {
    CrackParams p;
    p.branch_prob = 0.0;
    p.width_jitter = 0.0;
    p.width_min_m = p.width_max_m = 0.05;
    const CrackPath path = generate_crack(3, p);
    CHECK(path.branches.empty());
    CHECK(path.vertices.size() >= 2);
    for (const double w : path.widths) CHECK(w == doctest::Approx(0.05));
}

TEST_CASE("zero heading jitter forces a straight line") {
    CrackParams p;
    p.heading_jitter_rad = 0.0;
    p.branch_prob = 0.0;
    const CrackPath path = generate_crack(11, p);
    REQUIRE(path.vertices.size() >= 3);
    const Vec2 a = path.vertices.front();
    const Vec2 b = path.vertices.back();
    for (const Vec2& v : path.vertices) {
        const double cross = (b.x - a.x) * (v.y - a.y) - (b.y - a.y) * (v.x - a.x);
        CHECK(std::abs(cross) < 1e-9);
    }
}

TEST_CASE("generation is deterministic in (seed, params)") {
    const CrackParams p;
    CHECK(generate_crack(7, p) == generate_crack(7, p));
    CHECK_FALSE(generate_crack(7, p) == generate_crack(8, p));
}

TEST_CASE("total skeleton length lands within 10% of target") {
    CrackParams p;
    p.branch_prob = 0.2;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        const CrackPath path = generate_crack(seed, p);
        const double len = path.polyline_length();
        CHECK(len >= 0.9 * p.target_length_m);
        CHECK(len <= 1.1 * p.target_length_m);
        CHECK(max_depth(path) <= p.max_branch_depth);
    }
}

TEST_CASE("branch attachment indices stay within the parent") {
    CrackParams p;
    p.branch_prob = 0.4;
    p.target_length_m = 12.0;
    for (uint64_t seed = 0; seed < 10; ++seed) {
        const CrackPath path = generate_crack(seed, p);
        for (const auto& b : path.branches) CHECK(b.attach_index < path.vertices.size());
    }
}

TEST_CASE("horizontal capsule matches the brute-force count exactly") {
    CrackPath path;
    path.vertices = {{0.5, 1.0}, {2.5, 1.0}};  // 2 m segment
    path.widths = {0.1, 0.1};
    const double gsd = 0.01;
    const auto result = rasterize_crack(path, gsd, 300, 200);
    const Mask expected = oracle_raster(path, gsd, 300, 200);
    CHECK(result.mask == expected);
    CHECK(result.mask.count_ones() == expected.count_ones());
    CHECK_FALSE(result.empty);
}

TEST_CASE("path outside the canvas flags an empty mask") {
    CrackPath path;
    path.vertices = {{-10.0, -10.0}, {-8.0, -10.0}};
    path.widths = {0.1, 0.1};
    const auto result = rasterize_crack(path, 0.01, 64, 64);
    CHECK(result.empty);
    CHECK(result.mask.count_ones() == 0);
}

TEST_CASE("thin strokes still rasterize") {
    CrackPath path;
    path.vertices = {{0.1, 0.3}, {0.5, 0.35}};
    path.widths = {0.02, 0.02};
    const auto result = rasterize_crack(path, 0.01, 64, 64);
    CHECK(result.mask.count_ones() >= 1);
    const Mask expected = oracle_raster(path, 0.01, 64, 64);
    CHECK(result.mask == expected);
}

TEST_CASE("random generated paths match the capsule oracle") {
    CrackParams p;
    p.target_length_m = 2.0;
    p.step_length_m = 0.15;
    p.branch_prob = 0.3;
    for (uint64_t seed = 0; seed < 10; ++seed) {
        const CrackPath path = translate(generate_crack(seed, p), 0.4, 0.4);
        const auto result = rasterize_crack(path, 0.02, 48, 48);
        CHECK(result.mask == oracle_raster(path, 0.02, 48, 48));
    }
}

TEST_CASE("scaling path and gsd together leaves the raster unchanged") {
    CrackParams p;
    p.target_length_m = 3.0;
    for (uint64_t seed = 0; seed < 5; ++seed) {
        const CrackPath path = translate(generate_crack(seed, p), 1.0, 1.0);
        const auto base = rasterize_crack(path, 0.02, 96, 96);
        const auto scaled = rasterize_crack(scale(path, 2.0), 0.04, 96, 96);
        CHECK(base.mask == scaled.mask);
    }
}

TEST_CASE("scaling generator params by a power of two scales the path exactly") {
    CrackParams p;
    CrackParams p2 = p;
    p2.step_length_m *= 2.0;
    p2.width_min_m *= 2.0;
    p2.width_max_m *= 2.0;
    p2.target_length_m *= 2.0;
    const CrackPath a = generate_crack(5, p);
    const CrackPath b = generate_crack(5, p2);
    CHECK(scale(a, 2.0) == b);
}
