#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cracksim/augment.hpp"
#include "cracksim/baseline.hpp"
#include "cracksim/datasetio.hpp"
#include "cracksim/lossfn.hpp"
#include "cracksim/rng.hpp"
#include "cracksim/scenecomp.hpp"
#include "cracksim/segmetrics.hpp"
#include "config_file.hpp"

namespace fs = std::filesystem;
using namespace cracksim;

namespace {

void require_writable_root(const fs::path& out, bool force) {
    if (fs::exists(out / "manifest.jsonl") && !force)
        throw std::invalid_argument("output " + out.string() +
                                    " already holds a dataset; pass --force to overwrite");
}

int cmd_generate(int count, uint64_t seed, const std::string& condition,
                 const std::string& config_path, const fs::path& out, int workers,
                 bool force) {
    SceneConfig config;
    if (!config_path.empty()) config = cli::scene_config_from_file(config_path);
    if (!condition.empty()) config.condition = condition_from_string(condition);
    require_writable_root(out, force);

    const GenerateResult result = generate_dataset(config, count, seed, out, workers);
    if (!result.failed_indices.empty()) {
        std::cerr << "generate: I/O failure; completed indices:";
        for (int i = 0; i < count; ++i) {
            const bool failed = std::find(result.failed_indices.begin(),
                                          result.failed_indices.end(),
                                          i) != result.failed_indices.end();
            if (!failed) std::cerr << " " << i;
        }
        std::cerr << "\n";
        return 2;
    }
    std::cerr << "generate: wrote " << count << " samples to " << out << "\n";
    return 0;
}

int cmd_augment(const fs::path& in, const fs::path& out, uint64_t seed,
                const std::string& config_path, bool force) {
    AugmentConfig config;
    if (!config_path.empty()) config = cli::augment_config_from_file(config_path);
    config.validate();
    require_writable_root(out, force);

    Manifest manifest = read_manifest(in);
    fs::create_directories(out / "images");
    fs::create_directories(out / "masks");
    uint64_t index = 0;
    for (auto& e : manifest.entries) {
        Sample sample;
        sample.image = read_rgb_png(in / e.image_path);
        sample.mask = read_mask_png(in / e.mask_path);
        const Sample augmented = augment_pipeline(sample, config, Rng::mix(seed, index++));

        e.image_path = "images/" + e.id + ".png";
        e.mask_path = "masks/" + e.id + ".png";
        e.meta["crack_pixel_fraction"] = std::to_string(
            static_cast<double>(augmented.mask.count_ones()) /
            static_cast<double>(augmented.mask.pixel_count()));
        write_rgb_png(out / e.image_path, augmented.image);
        write_mask_png(out / e.mask_path, augmented.mask);
    }
    write_manifest(out, manifest);
    std::cerr << "augment: wrote " << manifest.entries.size() << " samples to " << out
              << "\n";
    return 0;
}

int cmd_split(const fs::path& root, double fraction, uint64_t seed) {
    const Manifest result = split(read_manifest(root), fraction, seed);
    write_manifest(root, result);
    size_t train = 0;
    for (const auto& e : result.entries) train += e.split == "train";
    std::cerr << "split: " << train << " train / " << result.entries.size() - train
              << " val\n";
    return 0;
}

int cmd_import(const fs::path& images, const fs::path& masks, const fs::path& out) {
    const ImportResult result = import_external(images, masks);
    for (const auto& stem : result.unmatched)
        std::cerr << "import: unmatched file stem: " << stem << "\n";
    Manifest manifest = result.manifest;
    fs::create_directories(out);
    // Rebase the absolute import paths onto the output root.
    for (auto& e : manifest.entries) {
        e.image_path = fs::relative(e.image_path, fs::absolute(out)).string();
        e.mask_path = fs::relative(e.mask_path, fs::absolute(out)).string();
    }
    write_manifest(out, manifest);
    std::cerr << "import: " << manifest.entries.size() << " pairs\n";
    return 0;
}

int cmd_baseline(const fs::path& root, const fs::path& out, int window, double k) {
    const Manifest manifest = read_manifest(root);
    const BaselineParams params{window, k};
    fs::create_directories(out);
    std::ofstream listing(out / "predictions.jsonl");
    for (const auto& e : manifest.entries) {
        const Image image = read_rgb_png(root / e.image_path);
        const Image prob = baseline_segment(image, params);
        write_prob_png(out / (e.id + ".png"), prob);
        listing << nlohmann::json{{"id", e.id}, {"path", e.id + ".png"}}.dump() << "\n";
    }
    std::cerr << "baseline: wrote " << manifest.entries.size() << " probability maps\n";
    return 0;
}

int cmd_evaluate(const fs::path& pred_dir, const fs::path& manifest, double threshold,
                 int grid_steps, const std::string& report_path) {
    const MetricsReport report =
        evaluate(pred_dir, manifest, threshold, default_threshold_grid(grid_steps));

    std::cerr << "  Metric      Value\n"
              << "  ---------   -----\n";
    auto row = [](const char* name, double v) {
        std::fprintf(stderr, "  %-9s   %.4f\n", name, v);
    };
    row("Precision", report.precision);
    row("Recall", report.recall);
    row("F1-score", report.f1);
    row("IoU", report.iou);
    row("ODS", report.ods_f1);
    row("OIS", report.ois);
    std::fprintf(stderr, "  (fixed threshold %.2f, ODS threshold %.2f)\n",
                 report.threshold, report.ods_threshold);

    const std::string json = report_to_json(report);
    if (report_path.empty()) {
        std::cout << json << "\n";
    } else {
        std::ofstream out(report_path);
        if (!out) throw std::runtime_error("cannot write report " + report_path);
        out << json << "\n";
    }
    return 0;
}

int cmd_loss(const fs::path& pred, const fs::path& mask_path, double dice_weight,
             double bce_weight, double eps) {
    const Image prob = read_prob_png(pred);
    const Mask mask = read_mask_png(mask_path);
    nlohmann::json j;
    j["bce"] = bce(prob, mask, eps).value;
    j["generalized_dice"] = generalized_dice(prob, mask, eps).value;
    j["combined"] = combined_loss(prob, mask, dice_weight, bce_weight, eps).value;
    j["dice_weight"] = dice_weight;
    j["bce_weight"] = bce_weight;
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synthetic pavement-defect dataset toolkit"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Render a synthetic dataset");
    int count = 1, workers = 1;
    uint64_t seed = 0;
    std::string condition, config_path, out_dir;
    bool force = false;
    gen->add_option("--count", count, "Number of samples")->check(CLI::PositiveNumber);
    gen->add_option("--seed", seed, "Master seed");
    gen->add_option("--condition", condition,
                    "noon|dusk|night|noon_rain|fog|cloudy (overrides config)");
    gen->add_option("--config", config_path, "Scene config file (key=value)");
    gen->add_option("--out", out_dir, "Output dataset root")->required();
    gen->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    gen->add_flag("--force", force, "Overwrite an existing dataset");

    // augment
    auto* aug = app.add_subcommand("augment", "Materialize an augmented dataset copy");
    std::string aug_in, aug_out, aug_config;
    uint64_t aug_seed = 0;
    bool aug_force = false;
    aug->add_option("--in", aug_in, "Input dataset root")->required();
    aug->add_option("--out", aug_out, "Output dataset root")->required();
    aug->add_option("--seed", aug_seed, "Master seed");
    aug->add_option("--config", aug_config, "Augment config file (key=value)");
    aug->add_flag("--force", aug_force, "Overwrite an existing dataset");

    // split
    auto* spl = app.add_subcommand("split", "Assign train/val splits in a manifest");
    std::string split_root;
    double fraction = 0.8;
    uint64_t split_seed = 0;
    spl->add_option("--root", split_root, "Dataset root")->required();
    spl->add_option("--fraction", fraction, "Train fraction (default 0.8)");
    spl->add_option("--seed", split_seed, "Split seed");

    // import
    auto* imp = app.add_subcommand("import", "Import an external image/mask dataset");
    std::string imp_images, imp_masks, imp_out;
    imp->add_option("--images", imp_images, "Images directory")->required();
    imp->add_option("--masks", imp_masks, "Masks directory")->required();
    imp->add_option("--out", imp_out, "Manifest output root")->required();

    // baseline
    auto* base = app.add_subcommand("baseline", "Run the local-darkness segmenter");
    std::string base_root, base_out;
    int window = 31;
    double gain = 4.0;
    base->add_option("--root", base_root, "Dataset root")->required();
    base->add_option("--out", base_out, "Prediction output directory")->required();
    base->add_option("--window", window, "Window size in px (odd)");
    base->add_option("--k", gain, "Logistic contrast gain");

    // evaluate
    auto* eval = app.add_subcommand("evaluate", "Score probability maps against a manifest");
    std::string pred_dir, eval_manifest, report_path;
    double threshold = 0.5;
    int grid_steps = 99;
    eval->add_option("--pred-dir", pred_dir, "Directory of 16-bit prediction PNGs")
        ->required();
    eval->add_option("--manifest", eval_manifest, "Dataset root or manifest.jsonl")
        ->required();
    eval->add_option("--threshold", threshold, "Fixed threshold (default 0.5)");
    eval->add_option("--grid-steps", grid_steps, "ODS/OIS grid size (default 99)")
        ->check(CLI::PositiveNumber);
    eval->add_option("--report", report_path, "Write report JSON here instead of stdout");

    // loss
    auto* loss = app.add_subcommand("loss", "Compute losses for one prediction/mask pair");
    std::string loss_pred, loss_mask;
    double dice_weight = 1.0, bce_weight = 1.0, eps = 1e-7;
    loss->add_option("--pred", loss_pred, "Prediction PNG (16-bit grayscale)")->required();
    loss->add_option("--mask", loss_mask, "Ground-truth mask PNG")->required();
    loss->add_option("--dice-weight", dice_weight, "Generalised Dice weight");
    loss->add_option("--bce-weight", bce_weight, "BCE weight");
    loss->add_option("--eps", eps, "Numerical smoothing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed())
            return cmd_generate(count, seed, condition, config_path, out_dir, workers,
                                force);
        if (aug->parsed())
            return cmd_augment(aug_in, aug_out, aug_seed, aug_config, aug_force);
        if (spl->parsed()) return cmd_split(split_root, fraction, split_seed);
        if (imp->parsed()) return cmd_import(imp_images, imp_masks, imp_out);
        if (base->parsed()) return cmd_baseline(base_root, base_out, window, gain);
        if (eval->parsed())
            return cmd_evaluate(pred_dir, eval_manifest, threshold, grid_steps,
                                report_path);
        if (loss->parsed())
            return cmd_loss(loss_pred, loss_mask, dice_weight, bce_weight, eps);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
