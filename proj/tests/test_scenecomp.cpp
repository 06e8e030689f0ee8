#include "doctest.h"

#include <cmath>

#include "cracksim/scenecomp.hpp"
#include "helpers.hpp"

using namespace cracksim;

namespace {

// Small, fast scene covering the same 19.2 x 10.8 m extent as the default.
SceneConfig small_config(uint64_t seed = 0) {
    SceneConfig c;
    c.image_width = 480;
    c.image_height = 270;
    c.gsd = 0.04;
    c.seed = seed;
    return c;
}

}  // namespace

TEST_CASE("no defects means an all-zero mask") {
    SceneConfig c = small_config();
    c.defects_min = c.defects_max = 0;
    const Sample s = compose_scene(c);
    CHECK(s.mask.count_ones() == 0);
    CHECK(s.meta.defect_count == 0);
    CHECK(s.meta.crack_pixel_fraction == 0.0);
}

TEST_CASE("default config renders at 1920x1080") {
    SceneConfig c;
    c.defects_min = c.defects_max = 1;  // keep the render quick
    const Sample s = compose_scene(c);
    CHECK(s.image.width == 1920);
    CHECK(s.image.height == 1080);
    CHECK(s.mask.width == 1920);
    CHECK(s.mask.height == 1080);
}

TEST_CASE("mask equals the union of re-rasterized defect opacities") {
    for (uint64_t seed = 0; seed < 3; ++seed) {
        SceneConfig c = small_config(seed);
        ComposeDetail detail;
        const Sample s = compose_scene(c, &detail);
        CHECK(static_cast<int>(detail.placed_paths.size()) == s.meta.defect_count);

        Mask expected(c.image_width, c.image_height, 0);
        for (const auto& path : detail.placed_paths) {
            const auto r = rasterize_crack(path, c.gsd, c.image_width, c.image_height);
            for (size_t i = 0; i < expected.data.size(); ++i)
                expected.data[i] = expected.data[i] | r.mask.data[i];
        }
        CHECK(s.mask == expected);
        CHECK(s.meta.crack_pixel_fraction ==
              doctest::Approx(static_cast<double>(expected.count_ones()) /
                              expected.pixel_count()));
    }
}

TEST_CASE("identity lighting returns the albedo unchanged") {
    SceneConfig c = small_config();
    c.ambient = 1.0;
    c.light_intensity = 0.0;
    c.condition = Condition::noon;
    c.spotlights.clear();

    const Image albedo = testutil::random_prob(32, 20, 4);
    Image rgb(32, 20, 3);
    for (int y = 0; y < 20; ++y)
        for (int x = 0; x < 32; ++x)
            for (int ch = 0; ch < 3; ++ch) rgb.at(x, y, ch) = albedo.at(x, y);
    Image normals(32, 20, 3);
    for (int y = 0; y < 20; ++y)
        for (int x = 0; x < 32; ++x) {
            normals.at(x, y, 0) = 0.5f;
            normals.at(x, y, 1) = 0.5f;
            normals.at(x, y, 2) = 1.0f;
        }
    const Image lit = apply_lighting(rgb, normals, c);
    for (size_t i = 0; i < lit.data.size(); ++i)
        CHECK(lit.data[i] == doctest::Approx(rgb.data[i]).epsilon(1e-6));
}

TEST_CASE("night is dark outside the spotlight") {
    SceneConfig c = small_config();
    c.condition = Condition::night;
    c.spotlights = {{50.0, 50.0, 30.0, 0.9}};

    Image rgb(128, 128, 3, 0.8f);
    Image normals(128, 128, 3);
    for (int y = 0; y < 128; ++y)
        for (int x = 0; x < 128; ++x) {
            normals.at(x, y, 0) = 0.5f;
            normals.at(x, y, 1) = 0.5f;
            normals.at(x, y, 2) = 1.0f;
        }
    const Image lit = apply_lighting(rgb, normals, c);
    for (int y = 0; y < 128; ++y)
        for (int x = 0; x < 128; ++x) {
            const double d = std::hypot(x - 50.0, y - 50.0);
            if (d >= 30.0) CHECK(luminance(lit, x, y) < 0.15);
        }
    // The spotlight center is visibly lit.
    CHECK(luminance(lit, 50, 50) > 0.5);
}

TEST_CASE("vertical light over flat normals scales albedo uniformly") {
    SceneConfig c = small_config();
    c.light_dir = {0.0, 0.0, 1.0};
    c.ambient = 0.2;
    c.light_intensity = 0.5;
    c.spotlights.clear();

    Image rgb(16, 16, 3);
    for (size_t i = 0; i < rgb.data.size(); ++i)
        rgb.data[i] = static_cast<float>(i % 7) / 10.0f;
    Image normals(16, 16, 3);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) {
            normals.at(x, y, 0) = 0.5f;
            normals.at(x, y, 1) = 0.5f;
            normals.at(x, y, 2) = 1.0f;
        }
    const Image lit = apply_lighting(rgb, normals, c);
    for (size_t i = 0; i < lit.data.size(); ++i)
        CHECK(lit.data[i] == doctest::Approx(0.7f * rgb.data[i]).epsilon(1e-5));
}

TEST_CASE("mean luminance orders night < dusk < noon on matched seeds") {
    for (uint64_t seed = 0; seed < 3; ++seed) {
        auto lum_for = [&](Condition cond) {
            SceneConfig c = small_config(seed);
            c.condition = cond;
            return mean_luminance(compose_scene(c).image);
        };
        const double noon = lum_for(Condition::noon);
        const double dusk = lum_for(Condition::dusk);
        const double night = lum_for(Condition::night);
        CHECK(night < dusk);
        CHECK(dusk < noon);
    }
}

TEST_CASE("every condition renders with sane statistics") {
    for (const Condition cond :
         {Condition::noon, Condition::dusk, Condition::night, Condition::noon_rain,
          Condition::fog, Condition::cloudy}) {
        SceneConfig c = small_config(1);
        c.condition = cond;
        if (cond == Condition::night)
            c.spotlights = {{240.0, 135.0, 120.0, 0.9}};
        const Sample s = compose_scene(c);
        for (const float v : s.image.data) {
            CHECK(v >= 0.0f);
            CHECK(v <= 1.0f);
        }
        CHECK(s.meta.condition == cond);
    }
}

TEST_CASE("generate_dataset is byte-deterministic and worker-invariant") {
    SceneConfig c = small_config();
    c.image_width = 160;
    c.image_height = 90;
    c.gsd = 0.12;

    testutil::TempDir a("gen_a"), b("gen_b"), d("gen_d");
    generate_dataset(c, 4, 99, a.path(), 1);
    generate_dataset(c, 4, 99, b.path(), 1);
    generate_dataset(c, 4, 99, d.path(), 4);

    for (const char* rel : {"manifest.jsonl", "header.json", "images/000000.png",
                            "images/000003.png", "masks/000001.png"}) {
        const auto fa = testutil::read_file(a.path() / rel);
        CHECK(fa == testutil::read_file(b.path() / rel));
        CHECK(fa == testutil::read_file(d.path() / rel));
        CHECK_FALSE(fa.empty());
    }
}

TEST_CASE("per-sample seeds differ across indices") {
    SceneConfig c = small_config();
    c.image_width = 120;
    c.image_height = 80;
    c.gsd = 0.15;
    testutil::TempDir dir("gen_seeds");
    const GenerateResult r = generate_dataset(c, 3, 5, dir.path(), 1);
    CHECK(r.failed_indices.empty());
    CHECK(r.entries[0].meta.seed != r.entries[1].meta.seed);
    CHECK(testutil::read_file(dir.path() / "images/000000.png") !=
          testutil::read_file(dir.path() / "images/000001.png"));
}
