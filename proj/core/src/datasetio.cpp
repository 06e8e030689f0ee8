#include "cracksim/datasetio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "json.hpp"

#include "cracksim/rng.hpp"

namespace cracksim {

namespace fs = std::filesystem;
using nlohmann::json;

static uint64_t fnv1a(const std::string& text) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (const unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string fnv1a_hex(const std::string& text) {
    const uint64_t h = fnv1a(text);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// --- manifest -------------------------------------------------------------

namespace {

json entry_to_json(const ManifestEntry& e) {
    json j;
    j["id"] = e.id;
    j["image_path"] = e.image_path;
    j["mask_path"] = e.mask_path;
    j["split"] = e.split;
    j["source"] = e.source;
    j["meta"] = e.meta;
    return j;
}

ManifestEntry entry_from_json(const json& j) {
    ManifestEntry e;
    e.id = j.at("id").get<std::string>();
    e.image_path = j.at("image_path").get<std::string>();
    e.mask_path = j.at("mask_path").get<std::string>();
    e.split = j.value("split", "train");
    e.source = j.value("source", "");
    if (j.contains("meta"))
        e.meta = j.at("meta").get<std::map<std::string, std::string>>();
    return e;
}

}  // namespace

void write_manifest(const fs::path& root, const Manifest& manifest) {
    fs::create_directories(root);
    {
        std::ofstream out(root / "manifest.jsonl");
        if (!out) throw std::runtime_error("cannot write " + (root / "manifest.jsonl").string());
        for (const auto& e : manifest.entries) out << entry_to_json(e).dump() << "\n";
    }
    {
        json h;
        h["format_version"] = manifest.header.format_version;
        h["master_seed"] = manifest.header.master_seed;
        h["config_hash"] = manifest.header.config_hash;
        std::ofstream out(root / "header.json");
        if (!out) throw std::runtime_error("cannot write " + (root / "header.json").string());
        out << h.dump(2) << "\n";
    }
}

Manifest read_manifest_file(const fs::path& manifest_jsonl) {
    std::ifstream in(manifest_jsonl);
    if (!in) throw std::runtime_error("cannot read " + manifest_jsonl.string());
    Manifest m;
    std::string line;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ManifestEntry e = entry_from_json(json::parse(line));
        if (!seen.insert(e.id).second)
            throw std::runtime_error("duplicate manifest id: " + e.id);
        m.entries.push_back(std::move(e));
    }
    const fs::path header_path = manifest_jsonl.parent_path() / "header.json";
    if (fs::exists(header_path)) {
        std::ifstream hin(header_path);
        const json h = json::parse(hin);
        m.header.format_version = h.value("format_version", 1);
        m.header.master_seed = h.value("master_seed", uint64_t{0});
        m.header.config_hash = h.value("config_hash", "");
    }
    return m;
}

Manifest read_manifest(const fs::path& root) {
    return read_manifest_file(root / "manifest.jsonl");
}

Manifest split(const Manifest& manifest, double train_fraction, uint64_t seed) {
    if (train_fraction <= 0.0 || train_fraction >= 1.0)
        throw std::invalid_argument("split: train_fraction must be in (0, 1)");
    const size_t n = manifest.entries.size();
    if (n < 2) throw std::invalid_argument("split: need at least 2 entries");

    // Rank entries by a seeded hash of their id; prefix becomes train. The
    // partition therefore depends only on the id set and the seed.
    std::vector<size_t> order(n);
    std::vector<uint64_t> keys(n);
    for (size_t i = 0; i < n; ++i) {
        order[i] = i;
        keys[i] = Rng::mix(seed, fnv1a(manifest.entries[i].id));
    }
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (keys[a] != keys[b]) return keys[a] < keys[b];
        return manifest.entries[a].id < manifest.entries[b].id;
    });

    const size_t n_train = static_cast<size_t>(
        std::llround(train_fraction * static_cast<double>(n)));
    Manifest out = manifest;
    for (size_t rank = 0; rank < n; ++rank)
        out.entries[order[rank]].split = rank < n_train ? "train" : "val";
    return out;
}

// --- crop / pad -----------------------------------------------------------

Sample crop_sample(const Sample& sample, int size, uint64_t seed) {
    if (size < 1) throw std::invalid_argument("crop_sample: size must be >= 1");
    if (sample.image.width < size || sample.image.height < size)
        throw std::invalid_argument("crop_sample: image smaller than crop; pad first");
    require_same_dims(sample.image, sample.mask, "crop_sample");

    Rng rng(seed);
    const int x0 = rng.uniform_int(0, sample.image.width - size);
    const int y0 = rng.uniform_int(0, sample.image.height - size);

    Sample out;
    out.meta = sample.meta;
    out.image = Image(size, size, sample.image.channels);
    out.mask = Mask(size, size);
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            for (int c = 0; c < sample.image.channels; ++c)
                out.image.at(x, y, c) = sample.image.at(x0 + x, y0 + y, c);
            out.mask.at(x, y) = sample.mask.at(x0 + x, y0 + y);
        }
    }
    out.meta.crack_pixel_fraction =
        static_cast<double>(out.mask.count_ones()) / out.mask.pixel_count();
    return out;
}

PaddedSample pad_to_multiple(const Sample& sample, int multiple) {
    if (multiple < 1) throw std::invalid_argument("pad_to_multiple: multiple must be >= 1");
    require_same_dims(sample.image, sample.mask, "pad_to_multiple");
    const int w = sample.image.width, h = sample.image.height;
    const int pw = ((w + multiple - 1) / multiple) * multiple;
    const int ph = ((h + multiple - 1) / multiple) * multiple;

    PaddedSample out;
    out.original_width = w;
    out.original_height = h;
    if (pw == w && ph == h) {
        out.sample = sample;
        return out;
    }
    out.sample.meta = sample.meta;
    out.sample.image = Image(pw, ph, sample.image.channels);
    out.sample.mask = Mask(pw, ph, 0);
    for (int y = 0; y < ph; ++y) {
        const int sy = std::min(y, h - 1);
        for (int x = 0; x < pw; ++x) {
            const int sx = std::min(x, w - 1);
            for (int c = 0; c < sample.image.channels; ++c)
                out.sample.image.at(x, y, c) = sample.image.at(sx, sy, c);
            if (x < w && y < h) out.sample.mask.at(x, y) = sample.mask.at(x, y);
        }
    }
    return out;
}

Image unpad(const Image& raster, int original_width, int original_height) {
    if (original_width > raster.width || original_height > raster.height)
        throw std::invalid_argument("unpad: original dims exceed raster");
    Image out(original_width, original_height, raster.channels);
    for (int y = 0; y < original_height; ++y)
        for (int x = 0; x < original_width; ++x)
            for (int c = 0; c < raster.channels; ++c)
                out.at(x, y, c) = raster.at(x, y, c);
    return out;
}

// --- import ---------------------------------------------------------------

ImportResult import_external(const fs::path& images_dir, const fs::path& masks_dir) {
    if (!fs::is_directory(images_dir))
        throw std::invalid_argument("import: not a directory: " + images_dir.string());
    if (!fs::is_directory(masks_dir))
        throw std::invalid_argument("import: not a directory: " + masks_dir.string());

    std::map<std::string, fs::path> images, masks;
    for (const auto& entry : fs::directory_iterator(images_dir))
        if (entry.is_regular_file()) images[entry.path().stem().string()] = entry.path();
    for (const auto& entry : fs::directory_iterator(masks_dir))
        if (entry.is_regular_file()) masks[entry.path().stem().string()] = entry.path();

    ImportResult result;
    for (const auto& [stem, path] : images) {
        auto it = masks.find(stem);
        if (it == masks.end()) {
            result.unmatched.push_back(stem);
            continue;
        }
        ManifestEntry e;
        e.id = stem;
        e.image_path = fs::absolute(path).string();
        e.mask_path = fs::absolute(it->second).string();
        e.source = "external";
        result.manifest.entries.push_back(std::move(e));
    }
    for (const auto& [stem, path] : masks)
        if (!images.count(stem)) result.unmatched.push_back(stem);

    if (result.manifest.entries.empty())
        throw std::runtime_error("import: zero matched image/mask pairs");
    // std::map iteration already yields lexicographic id order.
    std::sort(result.unmatched.begin(), result.unmatched.end());
    return result;
}

// --- PNG codecs -----------------------------------------------------------

namespace {

void write_png(const fs::path& path, const cv::Mat& mat) {
    fs::create_directories(path.parent_path());
    if (!cv::imwrite(path.string(), mat, {cv::IMWRITE_PNG_COMPRESSION, 6}))
        throw std::runtime_error("failed to write " + path.string());
}

}  // namespace

void write_rgb_png(const fs::path& path, const Image& image) {
    if (image.channels != 3)
        throw std::invalid_argument("write_rgb_png: 3-channel image expected");
    cv::Mat mat(image.height, image.width, CV_8UC3);
    for (int y = 0; y < image.height; ++y) {
        auto* row = mat.ptr<cv::Vec3b>(y);
        for (int x = 0; x < image.width; ++x) {
            // OpenCV stores BGR.
            row[x][2] = static_cast<uint8_t>(std::lround(clamp01(image.at(x, y, 0)) * 255.0f));
            row[x][1] = static_cast<uint8_t>(std::lround(clamp01(image.at(x, y, 1)) * 255.0f));
            row[x][0] = static_cast<uint8_t>(std::lround(clamp01(image.at(x, y, 2)) * 255.0f));
        }
    }
    write_png(path, mat);
}

Image read_rgb_png(const fs::path& path) {
    cv::Mat mat = cv::imread(path.string(), cv::IMREAD_COLOR);
    if (mat.empty()) throw std::runtime_error("failed to read " + path.string());
    Image image(mat.cols, mat.rows, 3);
    for (int y = 0; y < mat.rows; ++y) {
        const auto* row = mat.ptr<cv::Vec3b>(y);
        for (int x = 0; x < mat.cols; ++x) {
            image.at(x, y, 0) = row[x][2] / 255.0f;
            image.at(x, y, 1) = row[x][1] / 255.0f;
            image.at(x, y, 2) = row[x][0] / 255.0f;
        }
    }
    return image;
}

void write_mask_png(const fs::path& path, const Mask& mask) {
    cv::Mat mat(mask.height, mask.width, CV_8UC1);
    for (int y = 0; y < mask.height; ++y) {
        auto* row = mat.ptr<uint8_t>(y);
        for (int x = 0; x < mask.width; ++x) row[x] = mask.at(x, y) ? 255 : 0;
    }
    write_png(path, mat);
}

Mask read_mask_png(const fs::path& path, int threshold) {
    cv::Mat mat = cv::imread(path.string(), cv::IMREAD_GRAYSCALE);
    if (mat.empty()) throw std::runtime_error("failed to read " + path.string());
    Mask mask(mat.cols, mat.rows);
    for (int y = 0; y < mat.rows; ++y) {
        const auto* row = mat.ptr<uint8_t>(y);
        for (int x = 0; x < mat.cols; ++x)
            mask.at(x, y) = row[x] >= threshold ? 1 : 0;
    }
    return mask;
}

void write_prob_png(const fs::path& path, const Image& prob) {
    if (prob.channels != 1)
        throw std::invalid_argument("write_prob_png: single-channel image expected");
    cv::Mat mat(prob.height, prob.width, CV_16UC1);
    for (int y = 0; y < prob.height; ++y) {
        auto* row = mat.ptr<uint16_t>(y);
        for (int x = 0; x < prob.width; ++x)
            row[x] = static_cast<uint16_t>(std::lround(clamp01(prob.at(x, y)) * 65535.0f));
    }
    write_png(path, mat);
}

Image read_prob_png(const fs::path& path) {
    cv::Mat mat = cv::imread(path.string(), cv::IMREAD_ANYDEPTH | cv::IMREAD_GRAYSCALE);
    if (mat.empty()) throw std::runtime_error("failed to read " + path.string());
    Image prob(mat.cols, mat.rows, 1);
    if (mat.depth() == CV_16U) {
        for (int y = 0; y < mat.rows; ++y) {
            const auto* row = mat.ptr<uint16_t>(y);
            for (int x = 0; x < mat.cols; ++x) prob.at(x, y) = row[x] / 65535.0f;
        }
    } else {
        for (int y = 0; y < mat.rows; ++y) {
            const auto* row = mat.ptr<uint8_t>(y);
            for (int x = 0; x < mat.cols; ++x) prob.at(x, y) = row[x] / 255.0f;
        }
    }
    return prob;
}

}  // namespace cracksim
