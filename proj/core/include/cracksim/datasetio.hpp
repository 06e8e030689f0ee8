#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cracksim/raster.hpp"
#include "cracksim/sample.hpp"

namespace cracksim {

// One manifest line. Paths are relative to the dataset root.
struct ManifestEntry {
    std::string id;
    std::string image_path;
    std::string mask_path;
    std::string split = "train";  // "train" or "val"
    std::string source = "synthetic";
    std::map<std::string, std::string> meta;
};

struct ManifestHeader {
    int format_version = 1;
    uint64_t master_seed = 0;
    std::string config_hash;  // hex FNV-1a of the generator config
};

struct Manifest {
    ManifestHeader header;
    std::vector<ManifestEntry> entries;
};

// Layout under root: images/*.png, masks/*.png, manifest.jsonl, header.json.
void write_manifest(const std::filesystem::path& root, const Manifest& manifest);
Manifest read_manifest(const std::filesystem::path& root);
Manifest read_manifest_file(const std::filesystem::path& manifest_jsonl);

// Deterministic 80/20-style partition: exactly round(N * train_fraction)
// entries become "train". The assignment depends only on (ids, seed).
Manifest split(const Manifest& manifest, double train_fraction, uint64_t seed);

// Uniformly placed axis-aligned crop; image and mask share the window.
// Requires both dimensions >= size (pad first otherwise).
Sample crop_sample(const Sample& sample, int size, uint64_t seed);

struct PaddedSample {
    Sample sample;
    int original_width = 0;
    int original_height = 0;
};

// Right/bottom padding to the next multiple: image replicates its edge,
// mask pads with 0. original dims are kept for un-padding predictions.
PaddedSample pad_to_multiple(const Sample& sample, int multiple);

// Crops a prediction (or any raster) back to pre-padding dimensions.
Image unpad(const Image& raster, int original_width, int original_height);

struct ImportResult {
    Manifest manifest;
    std::vector<std::string> unmatched;  // files without a partner, by stem
};

// Pairs images and masks by filename stem; masks are binarized at 128 on
// load when materialized. Entry order is lexicographic by id; entry paths
// are absolute (callers rebase them when writing a manifest).
ImportResult import_external(const std::filesystem::path& images_dir,
                             const std::filesystem::path& masks_dir);

// --- PNG codecs ---------------------------------------------------------
// Images: 8-bit RGB. Masks: 8-bit grayscale, 0 = background, 255 = defect.
// Probability maps: 16-bit grayscale, value / 65535.

void write_rgb_png(const std::filesystem::path& path, const Image& image);
Image read_rgb_png(const std::filesystem::path& path);

void write_mask_png(const std::filesystem::path& path, const Mask& mask);
Mask read_mask_png(const std::filesystem::path& path, int threshold = 128);

void write_prob_png(const std::filesystem::path& path, const Image& prob);
Image read_prob_png(const std::filesystem::path& path);

// FNV-1a over a string, hex-encoded; used for config hashes in headers.
std::string fnv1a_hex(const std::string& text);

}  // namespace cracksim
