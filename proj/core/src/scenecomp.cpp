#include "cracksim/scenecomp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "cracksim/datasetio.hpp"
#include "cracksim/rng.hpp"

namespace cracksim {

Condition condition_from_string(const std::string& name) {
    if (name == "noon") return Condition::noon;
    if (name == "dusk") return Condition::dusk;
    if (name == "night") return Condition::night;
    if (name == "noon_rain") return Condition::noon_rain;
    if (name == "fog") return Condition::fog;
    if (name == "cloudy") return Condition::cloudy;
    throw std::invalid_argument("unknown condition: " + name);
}

std::string to_string(Condition c) {
    switch (c) {
        case Condition::noon: return "noon";
        case Condition::dusk: return "dusk";
        case Condition::night: return "night";
        case Condition::noon_rain: return "noon_rain";
        case Condition::fog: return "fog";
        case Condition::cloudy: return "cloudy";
    }
    return "noon";
}

void SceneConfig::validate() const {
    if (image_width <= 0 || image_height <= 0)
        throw std::invalid_argument("SceneConfig: image dimensions must be positive");
    if (gsd <= 0.0) throw std::invalid_argument("SceneConfig: gsd must be > 0");
    if (defects_min < 0 || defects_max < defects_min)
        throw std::invalid_argument("SceneConfig: invalid defects_per_scene range");
    if (long_crack_prob < 0.0 || long_crack_prob > 1.0)
        throw std::invalid_argument("SceneConfig: long_crack_prob must be in [0, 1]");
    if (light_intensity < 0.0)
        throw std::invalid_argument("SceneConfig: light_intensity must be >= 0");
    if (ambient < 0.0 || ambient > 1.0)
        throw std::invalid_argument("SceneConfig: ambient must be in [0, 1]");
    if (sensor_noise_std < 0.0)
        throw std::invalid_argument("SceneConfig: sensor_noise_std must be >= 0");
    tile_spec.validate();
    crack.validate();
}

namespace {

struct Shading {
    double ambient;
    double intensity;
};

Shading condition_shading(const SceneConfig& c) {
    switch (c.condition) {
        case Condition::dusk: return {c.ambient, 0.5 * c.light_intensity};
        case Condition::night: return {0.05, 0.0};
        case Condition::cloudy: return {c.ambient + 0.5 * c.light_intensity, 0.0};
        default: return {c.ambient, c.light_intensity};
    }
}

}  // namespace

Image apply_lighting(const Image& albedo, const Image& normals,
                     const SceneConfig& config) {
    if (!albedo.same_dims(normals))
        throw std::invalid_argument("apply_lighting: dimension mismatch");

    double lx = config.light_dir[0], ly = config.light_dir[1], lz = config.light_dir[2];
    const double ll = std::sqrt(lx * lx + ly * ly + lz * lz);
    if (ll > 0.0) {
        lx /= ll;
        ly /= ll;
        lz /= ll;
    }
    const auto [amb, intensity] = condition_shading(config);
    const bool rain = config.condition == Condition::noon_rain;
    const ConcreteNoise streaks(Rng::mix(config.seed, 0x5A17), 1.0);

    Image out(albedo.width, albedo.height, 3);
    for (int y = 0; y < albedo.height; ++y) {
        for (int x = 0; x < albedo.width; ++x) {
            const double nx = normals.at(x, y, 0) * 2.0 - 1.0;
            const double ny = normals.at(x, y, 1) * 2.0 - 1.0;
            const double nz = normals.at(x, y, 2) * 2.0 - 1.0;
            const double ndl = std::max(0.0, nx * lx + ny * ly + nz * lz);
            double shade = amb + intensity * ndl;

            double spot = 0.0;
            for (const auto& s : config.spotlights) {
                const double dx = x - s.x_px, dy = y - s.y_px;
                const double d2 = (dx * dx + dy * dy) / (s.radius_px * s.radius_px);
                if (d2 < 1.0) spot += s.intensity * (1.0 - d2);
            }

            for (int c = 0; c < 3; ++c) {
                double a = albedo.at(x, y, c);
                if (rain) a *= 0.7;  // wet pavement reads darker
                double v = std::clamp(a * shade + spot, 0.0, 1.0);

                switch (config.condition) {
                    case Condition::dusk: {
                        constexpr double tint[3] = {1.08, 0.95, 0.82};
                        v = std::clamp(v * tint[c], 0.0, 1.0);
                        break;
                    }
                    case Condition::noon_rain: {
                        const double streak =
                            std::max(0.0, streaks(x * 0.002, y * 0.08));
                        v = 0.5 + 0.8 * (v - 0.5);  // 20% contrast drop
                        v = std::clamp(v + 0.10 * streak, 0.0, 1.0);
                        break;
                    }
                    case Condition::fog:
                        v = 0.5 * v + 0.5 * 0.7;
                        break;
                    default:
                        break;
                }
                out.at(x, y, c) = static_cast<float>(v);
            }
        }
    }
    return out;
}

namespace {

// Bounding box of a crack skeleton including widths, branches included.
struct Bbox {
    double x0 = 1e30, y0 = 1e30, x1 = -1e30, y1 = -1e30;
};

void path_bbox(const CrackPath& path, Bbox& bb) {
    for (size_t i = 0; i < path.vertices.size(); ++i) {
        const double hw = 0.5 * path.widths[i];
        bb.x0 = std::min(bb.x0, path.vertices[i].x - hw);
        bb.y0 = std::min(bb.y0, path.vertices[i].y - hw);
        bb.x1 = std::max(bb.x1, path.vertices[i].x + hw);
        bb.y1 = std::max(bb.y1, path.vertices[i].y + hw);
    }
    for (const auto& b : path.branches) path_bbox(b.path, bb);
}

}  // namespace

Sample compose_scene(const SceneConfig& config, ComposeDetail* detail) {
    config.validate();
    const int w = config.image_width, h = config.image_height;
    const double tile = config.tile_spec.size_m;

    // Continuous concrete albedo over the whole scene, plus darkened joints
    // at tile borders.
    const ConcreteNoise noise(Rng::mix(config.seed, 1), 0.5);
    Image albedo(w, h, 3);
    const double base = config.tile_spec.base_gray;
    const double amp = config.tile_spec.noise_amplitude;
    const double joint = config.tile_spec.joint_width_m;
    for (int y = 0; y < h; ++y) {
        const double vm = (y + 0.5) * config.gsd;
        for (int x = 0; x < w; ++x) {
            const double um = (x + 0.5) * config.gsd;
            double v = base * (1.0 + amp * noise(um, vm));
            if (joint > 0.0) {
                const double du = std::min(std::fmod(um, tile), tile - std::fmod(um, tile));
                const double dv = std::min(std::fmod(vm, tile), tile - std::fmod(vm, tile));
                const double d = std::min(du, dv);
                if (d < joint) v *= 0.6 + 0.4 * (d / joint);
            }
            const float c = clamp01(static_cast<float>(v));
            albedo.at(x, y, 0) = c;
            albedo.at(x, y, 1) = c;
            albedo.at(x, y, 2) = c;
        }
    }
    Image normals(w, h, 3);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            normals.at(x, y, 0) = 0.5f;
            normals.at(x, y, 1) = 0.5f;
            normals.at(x, y, 2) = 1.0f;
        }

    Mask mask(w, h, 0);
    Rng scene_rng(Rng::mix(config.seed, 2));
    const int target_defects = scene_rng.uniform_int(config.defects_min, config.defects_max);
    int placed = 0;
    bool warning = false;

    for (int j = 0; j < target_defects; ++j) {
        CrackParams params = config.crack;
        Rng defect_rng(Rng::mix(config.seed, 100 + static_cast<uint64_t>(j)));
        if (defect_rng.bernoulli(config.long_crack_prob))
            params.target_length_m =
                std::max(params.target_length_m, defect_rng.uniform(1.5, 2.5) * tile);

        const CrackPath path =
            generate_crack(Rng::mix(config.seed, 200 + static_cast<uint64_t>(j)), params);
        Bbox bb;
        path_bbox(path, bb);

        bool ok = false;
        for (int attempt = 0; attempt < 10 && !ok; ++attempt) {
            // Center the skeleton bbox at a uniform scene position.
            const double cx = defect_rng.uniform(0.0, w * config.gsd);
            const double cy = defect_rng.uniform(0.0, h * config.gsd);
            const CrackPath placed_path = translate(
                path, cx - 0.5 * (bb.x0 + bb.x1), cy - 0.5 * (bb.y0 + bb.y1));
            auto raster = rasterize_crack(placed_path, config.gsd, w, h);
            if (raster.empty) continue;

            // Composite the defect triplet over its bounding box.
            Bbox pb;
            path_bbox(placed_path, pb);
            const int x0 = std::max(0, static_cast<int>(pb.x0 / config.gsd) - 4);
            const int y0 = std::max(0, static_cast<int>(pb.y0 / config.gsd) - 4);
            const int x1 = std::min(w - 1, static_cast<int>(pb.x1 / config.gsd) + 4);
            const int y1 = std::min(h - 1, static_cast<int>(pb.y1 / config.gsd) + 4);
            Mask local(x1 - x0 + 1, y1 - y0 + 1, 0);
            for (int yy = y0; yy <= y1; ++yy)
                for (int xx = x0; xx <= x1; ++xx)
                    local.at(xx - x0, yy - y0) = raster.mask.at(xx, yy);
            const DefectTexture tex = assemble_defect(
                local, Rng::mix(config.seed, 300 + static_cast<uint64_t>(j)),
                config.defect_darkening, 0.15, base);

            for (int yy = y0; yy <= y1; ++yy) {
                for (int xx = x0; xx <= x1; ++xx) {
                    if (!local.at(xx - x0, yy - y0)) continue;
                    mask.at(xx, yy) = 1;
                    for (int c = 0; c < 3; ++c) {
                        albedo.at(xx, yy, c) = tex.rgb.at(xx - x0, yy - y0, c);
                        normals.at(xx, yy, c) = tex.normal.at(xx - x0, yy - y0, c);
                    }
                }
            }
            if (detail) detail->placed_paths.push_back(placed_path);
            ok = true;
        }
        if (ok)
            ++placed;
        else
            warning = true;
    }

    Image image = apply_lighting(albedo, normals, config);
    if (config.sensor_noise_std > 0.0) {
        Rng noise_rng(Rng::mix(config.seed, 3));
        for (auto& v : image.data)
            v = clamp01(v + static_cast<float>(
                                noise_rng.normal(0.0, config.sensor_noise_std)));
    }

    Sample sample;
    sample.image = std::move(image);
    sample.mask = std::move(mask);
    sample.meta.seed = config.seed;
    sample.meta.condition = config.condition;
    sample.meta.defect_count = placed;
    sample.meta.crack_pixel_fraction =
        static_cast<double>(sample.mask.count_ones()) /
        static_cast<double>(sample.mask.pixel_count());
    sample.meta.placement_warning = warning;
    return sample;
}

GenerateResult generate_dataset(const SceneConfig& config, int count,
                                uint64_t master_seed,
                                const std::filesystem::path& out_dir, int workers) {
    if (count < 1) throw std::invalid_argument("generate_dataset: count must be >= 1");
    config.validate();
    namespace fs = std::filesystem;
    fs::create_directories(out_dir / "images");
    fs::create_directories(out_dir / "masks");

    GenerateResult result;
    result.entries.resize(static_cast<size_t>(count));
    std::vector<char> ok(static_cast<size_t>(count), 0);

    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            SceneConfig sc = config;
            sc.seed = Rng::mix(master_seed, static_cast<uint64_t>(i));
            const Sample sample = compose_scene(sc);

            char name[16];
            std::snprintf(name, sizeof(name), "%06d", i);
            const std::string id = name;
            try {
                write_rgb_png(out_dir / "images" / (id + ".png"), sample.image);
                write_mask_png(out_dir / "masks" / (id + ".png"), sample.mask);
            } catch (const std::exception&) {
                continue;  // recorded as failed below
            }

            DatasetManifestEntry e;
            e.id = id;
            e.image_path = "images/" + id + ".png";
            e.mask_path = "masks/" + id + ".png";
            e.meta = sample.meta;
            result.entries[static_cast<size_t>(i)] = std::move(e);
            ok[static_cast<size_t>(i)] = 1;
        }
    };

    const int nthreads = std::max(1, workers);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    for (int i = 0; i < count; ++i)
        if (!ok[static_cast<size_t>(i)]) result.failed_indices.push_back(i);

    if (result.failed_indices.empty()) {
        Manifest m;
        m.header.master_seed = master_seed;
        m.header.config_hash = fnv1a_hex(to_key_values(config));
        m.entries.reserve(result.entries.size());
        for (const auto& e : result.entries) {
            ManifestEntry me;
            me.id = e.id;
            me.image_path = e.image_path;
            me.mask_path = e.mask_path;
            me.source = "synthetic";
            me.meta["seed"] = std::to_string(e.meta.seed);
            me.meta["condition"] = to_string(e.meta.condition);
            me.meta["defect_count"] = std::to_string(e.meta.defect_count);
            me.meta["crack_pixel_fraction"] = std::to_string(e.meta.crack_pixel_fraction);
            m.entries.push_back(std::move(me));
        }
        write_manifest(out_dir, m);
    }
    return result;
}

std::string to_key_values(const SceneConfig& c) {
    std::ostringstream os;
    os << "image_width=" << c.image_width << "\n"
       << "image_height=" << c.image_height << "\n"
       << "gsd=" << c.gsd << "\n"
       << "tile_size_m=" << c.tile_spec.size_m << "\n"
       << "tile_resolution_px=" << c.tile_spec.resolution_px << "\n"
       << "base_gray=" << c.tile_spec.base_gray << "\n"
       << "noise_amplitude=" << c.tile_spec.noise_amplitude << "\n"
       << "joint_width_m=" << c.tile_spec.joint_width_m << "\n"
       << "defects_min=" << c.defects_min << "\n"
       << "defects_max=" << c.defects_max << "\n"
       << "long_crack_prob=" << c.long_crack_prob << "\n"
       << "condition=" << to_string(c.condition) << "\n"
       << "light_dir=" << c.light_dir[0] << "," << c.light_dir[1] << ","
       << c.light_dir[2] << "\n"
       << "light_intensity=" << c.light_intensity << "\n"
       << "ambient=" << c.ambient << "\n"
       << "sensor_noise_std=" << c.sensor_noise_std << "\n"
       << "step_length_m=" << c.crack.step_length_m << "\n"
       << "heading_jitter_rad=" << c.crack.heading_jitter_rad << "\n"
       << "width_min_m=" << c.crack.width_min_m << "\n"
       << "width_max_m=" << c.crack.width_max_m << "\n"
       << "width_jitter=" << c.crack.width_jitter << "\n"
       << "branch_prob=" << c.crack.branch_prob << "\n"
       << "max_branch_depth=" << c.crack.max_branch_depth << "\n"
       << "target_length_m=" << c.crack.target_length_m << "\n"
       << "defect_darkening=" << c.defect_darkening << "\n";
    for (const auto& s : c.spotlights)
        os << "spotlight=" << s.x_px << "," << s.y_px << "," << s.radius_px << ","
           << s.intensity << "\n";
    return os.str();
}

}  // namespace cracksim
