#include <benchmark/benchmark.h>

#include "cracksim/augment.hpp"
#include "cracksim/baseline.hpp"
#include "cracksim/cracksynth.hpp"
#include "cracksim/lossfn.hpp"
#include "cracksim/rng.hpp"
#include "cracksim/scenecomp.hpp"
#include "cracksim/segmetrics.hpp"
#include "cracksim/texturegen.hpp"

using namespace cracksim;

namespace {

Image random_prob(int w, int h, uint64_t seed) {
    Image img(w, h, 1);
    Rng rng(seed);
    for (auto& v : img.data) v = static_cast<float>(rng.uniform());
    return img;
}

Mask random_mask(int w, int h, uint64_t seed, double density = 0.2) {
    Mask m(w, h);
    Rng rng(seed);
    for (auto& v : m.data) v = rng.bernoulli(density) ? 1 : 0;
    return m;
}

void BM_generate_crack(benchmark::State& state) {
    const CrackParams params;
    uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(generate_crack(seed++, params));
}
BENCHMARK(BM_generate_crack);

void BM_rasterize_crack(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    CrackParams params;
    params.target_length_m = 7.0;
    const CrackPath path = translate(generate_crack(1, params), 2.0, 2.0);
    const double gsd = 10.0 / side;  // fixed physical extent
    for (auto _ : state)
        benchmark::DoNotOptimize(rasterize_crack(path, gsd, side, side));
    state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_rasterize_crack)->Arg(256)->Arg(512)->Arg(1024);

void BM_synthesize_tile(benchmark::State& state) {
    TileSpec spec;
    spec.resolution_px = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(synthesize_tile(spec));
}
BENCHMARK(BM_synthesize_tile)->Arg(128)->Arg(500);

void BM_compose_scene(benchmark::State& state) {
    SceneConfig config;
    config.image_width = static_cast<int>(state.range(0));
    config.image_height = static_cast<int>(state.range(0)) * 9 / 16;
    config.gsd = 19.2 / config.image_width;
    for (auto _ : state) {
        config.seed++;
        benchmark::DoNotOptimize(compose_scene(config));
    }
}
BENCHMARK(BM_compose_scene)->Arg(480)->Arg(960)->Arg(1920)->Unit(benchmark::kMillisecond);

void BM_augment_pipeline(benchmark::State& state) {
    Sample s;
    s.image = Image(512, 512, 3);
    Rng rng(3);
    for (auto& v : s.image.data) v = static_cast<float>(rng.uniform());
    s.mask = random_mask(512, 512, 4);
    const AugmentConfig config;
    uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(augment_pipeline(s, config, seed++));
    state.SetItemsProcessed(state.iterations() * s.image.pixel_count());
}
BENCHMARK(BM_augment_pipeline)->Unit(benchmark::kMillisecond);

void BM_combined_loss(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const Image prob = random_prob(side, side, 5);
    const Mask ref = random_mask(side, side, 6);
    for (auto _ : state) benchmark::DoNotOptimize(combined_loss(prob, ref));
    state.SetItemsProcessed(state.iterations() * prob.pixel_count());
}
BENCHMARK(BM_combined_loss)->Arg(320)->Arg(1024);

void BM_ods_sweep(benchmark::State& state) {
    std::vector<Image> probs;
    std::vector<Mask> refs;
    for (uint64_t i = 0; i < 8; ++i) {
        probs.push_back(random_prob(512, 512, i));
        refs.push_back(random_mask(512, 512, i + 100));
    }
    std::vector<ScoredPair> ds;
    for (size_t i = 0; i < probs.size(); ++i) ds.push_back({&probs[i], &refs[i]});
    const auto grid = default_threshold_grid();
    for (auto _ : state) benchmark::DoNotOptimize(ods(ds, grid));
    state.SetItemsProcessed(state.iterations() * probs.size() * probs[0].pixel_count());
}
BENCHMARK(BM_ods_sweep)->Unit(benchmark::kMillisecond);

void BM_baseline_segment(benchmark::State& state) {
    Image img(1920, 1080, 3);
    Rng rng(8);
    for (auto& v : img.data) v = static_cast<float>(rng.uniform());
    for (auto _ : state) benchmark::DoNotOptimize(baseline_segment(img));
    state.SetItemsProcessed(state.iterations() * img.pixel_count());
}
BENCHMARK(BM_baseline_segment)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
