#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "cracksim/augment.hpp"
#include "cracksim/scenecomp.hpp"

namespace cracksim::cli {

// key=value lines, '#' comments; unknown keys are an error.
std::map<std::string, std::string> parse_key_values(const std::filesystem::path& path);

// Applies the file on top of the given defaults.
SceneConfig scene_config_from_file(const std::filesystem::path& path,
                                   SceneConfig base = {});
AugmentConfig augment_config_from_file(const std::filesystem::path& path,
                                       AugmentConfig base = {});

}  // namespace cracksim::cli
