#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cracksim/cracksynth.hpp"
#include "cracksim/sample.hpp"
#include "cracksim/texturegen.hpp"

namespace cracksim {

struct Spotlight {
    double x_px = 0.0;
    double y_px = 0.0;
    double radius_px = 200.0;
    double intensity = 0.8;
};

// Top-down orthographic scene: concrete tile grid with composited crack
// defects, shaded under one of six lighting/weather conditions.
struct SceneConfig {
    int image_width = 1920;
    int image_height = 1080;
    double gsd = 0.01;  // meters per pixel
    TileSpec tile_spec;
    int defects_min = 3;
    int defects_max = 6;
    double long_crack_prob = 0.3;  // crack target length >= 1.5 * tile size
    Condition condition = Condition::noon;
    std::array<double, 3> light_dir = {0.3, 0.2, 0.93};  // normalized on use
    double light_intensity = 0.65;
    double ambient = 0.35;
    std::vector<Spotlight> spotlights;
    double sensor_noise_std = 0.01;
    uint64_t seed = 0;

    CrackParams crack;
    double defect_darkening = 0.45;

    void validate() const;
};

// Shades albedo with the configured directional light, spotlights and
// condition post-effect: out = clamp(albedo * (ambient + I * max(0, n.l))
// + sum of spotlight falloffs, 0, 1), then the condition's tint/fog/rain
// adjustment. Condition presets may override ambient/intensity (night, dusk).
Image apply_lighting(const Image& albedo, const Image& normals,
                     const SceneConfig& config);

// Scene-frame crack skeletons actually composited, one per placed defect.
struct ComposeDetail {
    std::vector<CrackPath> placed_paths;
};

// Renders the tiled pavement, composites defect triplets where their opacity
// is set, lights the result and adds sensor noise. The mask is the exact
// union of the placed defect opacities.
Sample compose_scene(const SceneConfig& config, ComposeDetail* detail = nullptr);

struct DatasetManifestEntry {
    std::string id;
    std::string image_path;
    std::string mask_path;
    SampleMeta meta;
};

struct GenerateResult {
    std::vector<DatasetManifestEntry> entries;
    std::vector<int> failed_indices;  // nonempty only on I/O failure
};

// Writes count samples under out_dir (images/NNNNNN.png, masks/NNNNNN.png,
// manifest.jsonl, header.json). Sample i uses seed mix(master_seed, i), so
// output bytes are invariant under the worker count.
GenerateResult generate_dataset(const SceneConfig& config, int count,
                                uint64_t master_seed,
                                const std::filesystem::path& out_dir,
                                int workers = 1);

// Canonical key=value serialization of a SceneConfig; the CLI config-file
// format and the manifest header hash both use it.
std::string to_key_values(const SceneConfig& config);

}  // namespace cracksim
