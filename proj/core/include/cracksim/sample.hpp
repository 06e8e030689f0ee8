#pragma once

#include <cstdint>
#include <string>

#include "cracksim/raster.hpp"

namespace cracksim {

enum class Condition { noon, dusk, night, noon_rain, fog, cloudy };

Condition condition_from_string(const std::string& name);
std::string to_string(Condition c);

struct SampleMeta {
    uint64_t seed = 0;
    Condition condition = Condition::noon;
    int defect_count = 0;
    double crack_pixel_fraction = 0.0;
    bool placement_warning = false;  // some defects dropped after retries
};

// One dataset item: RGB image + binary ground truth + provenance.
struct Sample {
    Image image;  // 3 channels, [0,1]
    Mask mask;
    SampleMeta meta;
};

}  // namespace cracksim
