#include "doctest.h"

#include <cstdlib>
#include <fstream>

#include "cracksim/datasetio.hpp"
#include "helpers.hpp"

using namespace cracksim;
namespace fs = std::filesystem;

namespace {

const char* kCli = CRACKSIM_CLI_PATH;

int run(const std::string& args) {
    const std::string cmd = std::string(kCli) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_small_config(const fs::path& dir) {
    const fs::path cfg = dir / "scene.cfg";
    std::ofstream out(cfg);
    out << "image_width = 160\n"
           "image_height = 96\n"
           "gsd = 0.12\n"
           "defects_min = 1\n"
           "defects_max = 2\n";
    return cfg;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("bad invocations exit with code 1") {
    CHECK(run("") == 1);                       // missing subcommand
    CHECK(run("generate") == 1);               // missing --out
    CHECK(run("frobnicate --out /tmp/x") == 1);
    CHECK(run("generate --count 0 --out /tmp/x") == 1);
}

TEST_CASE("generate produces a loadable dataset and refuses to clobber") {
    testutil::TempDir dir("cli_gen");
    const fs::path cfg = write_small_config(dir.path());
    const fs::path out = dir.path() / "ds";

    CHECK(run("generate --count 3 --seed 5 --config " + q(cfg) + " --out " + q(out)) == 0);
    const Manifest m = read_manifest(out);
    REQUIRE(m.entries.size() == 3);
    CHECK(m.header.master_seed == 5);
    for (const auto& e : m.entries) {
        CHECK(fs::exists(out / e.image_path));
        CHECK(fs::exists(out / e.mask_path));
        const Image img = read_rgb_png(out / e.image_path);
        CHECK(img.width == 160);
        CHECK(img.height == 96);
    }

    // Existing dataset: blocked without --force, allowed with it.
    CHECK(run("generate --count 1 --config " + q(cfg) + " --out " + q(out)) == 1);
    CHECK(run("generate --count 1 --config " + q(cfg) + " --out " + q(out) +
              " --force") == 0);
}

TEST_CASE("generate is reproducible across runs and worker counts") {
    testutil::TempDir dir("cli_repro");
    const fs::path cfg = write_small_config(dir.path());
    const fs::path a = dir.path() / "a", b = dir.path() / "b", c = dir.path() / "c";
    CHECK(run("generate --count 3 --seed 9 --config " + q(cfg) + " --out " + q(a)) == 0);
    CHECK(run("generate --count 3 --seed 9 --config " + q(cfg) + " --out " + q(b)) == 0);
    CHECK(run("generate --count 3 --seed 9 --workers 4 --config " + q(cfg) + " --out " +
              q(c)) == 0);
    for (const char* rel : {"manifest.jsonl", "images/000000.png", "masks/000002.png"}) {
        const auto fa = testutil::read_file(a / rel);
        CHECK(fa == testutil::read_file(b / rel));
        CHECK(fa == testutil::read_file(c / rel));
    }
}

TEST_CASE("augment, split, baseline and evaluate chain end to end") {
    testutil::TempDir dir("cli_chain");
    const fs::path cfg = write_small_config(dir.path());
    const fs::path ds = dir.path() / "ds";
    REQUIRE(run("generate --count 5 --seed 2 --config " + q(cfg) + " --out " + q(ds)) == 0);

    // augment: same ids, same dimensions, deterministic in the seed.
    const fs::path aug1 = dir.path() / "aug1", aug2 = dir.path() / "aug2";
    CHECK(run("augment --in " + q(ds) + " --out " + q(aug1) + " --seed 3") == 0);
    CHECK(run("augment --in " + q(ds) + " --out " + q(aug2) + " --seed 3") == 0);
    const Manifest am = read_manifest(aug1);
    REQUIRE(am.entries.size() == 5);
    CHECK(testutil::read_file(aug1 / "images/000001.png") ==
          testutil::read_file(aug2 / "images/000001.png"));
    const Image augmented = read_rgb_png(aug1 / am.entries[0].image_path);
    CHECK(augmented.width == 160);
    CHECK(augmented.height == 96);

    // split: exact train count.
    CHECK(run("split --root " + q(ds) + " --fraction 0.8 --seed 1") == 0);
    const Manifest sm = read_manifest(ds);
    int train = 0;
    for (const auto& e : sm.entries) train += e.split == "train";
    CHECK(train == 4);

    // baseline: one 16-bit map per entry.
    const fs::path pred = dir.path() / "pred";
    CHECK(run("baseline --root " + q(ds) + " --out " + q(pred)) == 0);
    for (const auto& e : sm.entries) CHECK(fs::exists(pred / (e.id + ".png")));
    const Image prob = read_prob_png(pred / (sm.entries[0].id + ".png"));
    CHECK(prob.width == 160);

    // evaluate: writes a JSON report with the expected fields.
    const fs::path report = dir.path() / "report.json";
    CHECK(run("evaluate --pred-dir " + q(pred) + " --manifest " + q(ds) +
              " --report " + q(report)) == 0);
    const std::string json = testutil::read_file(report);
    for (const char* field : {"\"precision\"", "\"recall\"", "\"f1\"", "\"iou\"",
                              "\"ods\"", "\"ois\"", "\"per_image\""})
        CHECK(json.find(field) != std::string::npos);

    // loss: JSON with all three values on stdout.
    const fs::path loss_out = dir.path() / "loss.json";
    const std::string cmd = std::string(kCli) + " loss --pred " +
                            q(pred / (sm.entries[0].id + ".png")) + " --mask " +
                            q(ds / sm.entries[0].mask_path) + " > " + q(loss_out) +
                            " 2>/dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const std::string loss_json = testutil::read_file(loss_out);
    for (const char* field : {"\"bce\"", "\"generalized_dice\"", "\"combined\""})
        CHECK(loss_json.find(field) != std::string::npos);
}

TEST_CASE("import builds a manifest from paired directories") {
    testutil::TempDir dir("cli_import");
    const fs::path images = dir.path() / "images", masks = dir.path() / "masks";
    fs::create_directories(images);
    fs::create_directories(masks);
    write_rgb_png(images / "x1.png", Image(12, 10, 3, 0.5f));
    write_rgb_png(images / "x2.png", Image(12, 10, 3, 0.4f));
    write_mask_png(masks / "x1.png", Mask(12, 10, 1));
    write_mask_png(masks / "x2.png", Mask(12, 10, 0));

    const fs::path out = dir.path() / "imported";
    CHECK(run("import --images " + q(images) + " --masks " + q(masks) + " --out " +
              q(out)) == 0);
    const Manifest m = read_manifest(out);
    REQUIRE(m.entries.size() == 2);
    CHECK(m.entries[0].source == "external");
    // Rebased paths resolve from the manifest root.
    CHECK(fs::exists(out / m.entries[0].image_path));
    CHECK(fs::exists(out / m.entries[0].mask_path));
}

TEST_CASE("unknown config keys fail with exit code 1") {
    testutil::TempDir dir("cli_badcfg");
    const fs::path cfg = dir.path() / "bad.cfg";
    std::ofstream(cfg) << "not_a_real_key = 3\n";
    CHECK(run("generate --count 1 --config " + q(cfg) + " --out " +
              q(dir.path() / "ds")) == 1);
}
