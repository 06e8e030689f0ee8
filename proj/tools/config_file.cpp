#include "config_file.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cracksim::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_doubles(const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(trim(tok)));
    return out;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file " + path.string());
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                        ": expected key=value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

SceneConfig scene_config_from_file(const std::filesystem::path& path, SceneConfig c) {
    for (const auto& [key, value] : parse_key_values(path)) {
        if (key == "image_width") c.image_width = std::stoi(value);
        else if (key == "image_height") c.image_height = std::stoi(value);
        else if (key == "gsd") c.gsd = std::stod(value);
        else if (key == "tile_size_m") c.tile_spec.size_m = std::stod(value);
        else if (key == "tile_resolution_px") c.tile_spec.resolution_px = std::stoi(value);
        else if (key == "base_gray") c.tile_spec.base_gray = std::stod(value);
        else if (key == "noise_amplitude") c.tile_spec.noise_amplitude = std::stod(value);
        else if (key == "joint_width_m") c.tile_spec.joint_width_m = std::stod(value);
        else if (key == "defects_min") c.defects_min = std::stoi(value);
        else if (key == "defects_max") c.defects_max = std::stoi(value);
        else if (key == "long_crack_prob") c.long_crack_prob = std::stod(value);
        else if (key == "condition") c.condition = condition_from_string(value);
        else if (key == "light_dir") {
            const auto v = parse_doubles(value);
            if (v.size() != 3)
                throw std::invalid_argument("light_dir needs 3 comma-separated values");
            c.light_dir = {v[0], v[1], v[2]};
        } else if (key == "light_intensity") c.light_intensity = std::stod(value);
        else if (key == "ambient") c.ambient = std::stod(value);
        else if (key == "sensor_noise_std") c.sensor_noise_std = std::stod(value);
        else if (key == "spotlight") {
            const auto v = parse_doubles(value);
            if (v.size() != 4)
                throw std::invalid_argument("spotlight needs x,y,radius,intensity");
            c.spotlights.push_back({v[0], v[1], v[2], v[3]});
        } else if (key == "step_length_m") c.crack.step_length_m = std::stod(value);
        else if (key == "heading_jitter_rad") c.crack.heading_jitter_rad = std::stod(value);
        else if (key == "width_min_m") c.crack.width_min_m = std::stod(value);
        else if (key == "width_max_m") c.crack.width_max_m = std::stod(value);
        else if (key == "width_jitter") c.crack.width_jitter = std::stod(value);
        else if (key == "branch_prob") c.crack.branch_prob = std::stod(value);
        else if (key == "max_branch_depth") c.crack.max_branch_depth = std::stoi(value);
        else if (key == "target_length_m") c.crack.target_length_m = std::stod(value);
        else if (key == "defect_darkening") c.defect_darkening = std::stod(value);
        else if (key == "seed") c.seed = std::stoull(value);
        else throw std::invalid_argument("unknown scene config key: " + key);
    }
    return c;
}

AugmentConfig augment_config_from_file(const std::filesystem::path& path,
                                       AugmentConfig c) {
    for (const auto& [key, value] : parse_key_values(path)) {
        if (key == "p_flip_h") c.p_flip_h = std::stod(value);
        else if (key == "p_flip_v") c.p_flip_v = std::stod(value);
        else if (key == "p_rotate") c.p_rotate = std::stod(value);
        else if (key == "p_scale") c.p_scale = std::stod(value);
        else if (key == "rotation_range_deg") c.rotation_range_deg = std::stod(value);
        else if (key == "scale_min") c.scale_min = std::stod(value);
        else if (key == "scale_max") c.scale_max = std::stod(value);
        else if (key == "p_elastic") c.p_elastic = std::stod(value);
        else if (key == "elastic_alpha") c.elastic_alpha = std::stod(value);
        else if (key == "elastic_sigma") c.elastic_sigma = std::stod(value);
        else if (key == "p_photometric") c.p_photometric = std::stod(value);
        else if (key == "brightness_range") c.brightness_range = std::stod(value);
        else if (key == "contrast_min") c.contrast_min = std::stod(value);
        else if (key == "contrast_max") c.contrast_max = std::stod(value);
        else if (key == "gamma_min") c.gamma_min = std::stod(value);
        else if (key == "gamma_max") c.gamma_max = std::stod(value);
        else if (key == "hue_range_deg") c.hue_range_deg = std::stod(value);
        else if (key == "p_sharpen") c.p_sharpen = std::stod(value);
        else if (key == "sharpen_amount_max") c.sharpen_amount_max = std::stod(value);
        else if (key == "p_blur") c.p_blur = std::stod(value);
        else if (key == "blur_sigma_max") c.blur_sigma_max = std::stod(value);
        else if (key == "p_motion_blur") c.p_motion_blur = std::stod(value);
        else if (key == "motion_blur_len_min") c.motion_blur_len_min = std::stoi(value);
        else if (key == "motion_blur_len_max") c.motion_blur_len_max = std::stoi(value);
        else throw std::invalid_argument("unknown augment config key: " + key);
    }
    return c;
}

}  // namespace cracksim::cli
