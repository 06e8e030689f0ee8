#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "cracksim/raster.hpp"
#include "cracksim/rng.hpp"

namespace testutil {

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("cracksim_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline cracksim::Image random_prob(int w, int h, uint64_t seed) {
    cracksim::Image img(w, h, 1);
    cracksim::Rng rng(seed);
    for (auto& v : img.data) v = static_cast<float>(rng.uniform());
    return img;
}

inline cracksim::Mask random_mask(int w, int h, uint64_t seed, double density = 0.3) {
    cracksim::Mask mask(w, h);
    cracksim::Rng rng(seed);
    for (auto& v : mask.data) v = rng.bernoulli(density) ? 1 : 0;
    return mask;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

}  // namespace testutil
