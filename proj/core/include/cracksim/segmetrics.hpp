#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cracksim/datasetio.hpp"
#include "cracksim/raster.hpp"

namespace cracksim {

struct ConfusionCounts {
    uint64_t tp = 0;
    uint64_t fp = 0;
    uint64_t fn = 0;
    uint64_t tn = 0;

    ConfusionCounts& operator+=(const ConfusionCounts& o) {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        tn += o.tn;
        return *this;
    }
};

struct PrfIou {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double iou = 0.0;
};

struct PerImageRecord {
    std::string id;
    double best_threshold = 0.0;  // per-image F1 argmax over the grid
    double best_f1 = 0.0;
    ConfusionCounts counts;       // at the report's fixed threshold
};

struct MetricsReport {
    double threshold = 0.5;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double iou = 0.0;
    double ods_threshold = 0.0;
    double ods_f1 = 0.0;
    double ois = 0.0;
    std::vector<PerImageRecord> per_image;
};

// A prediction is positive iff p >= t (closed comparison).
ConfusionCounts confusion(const Image& prob, const Mask& ref, double threshold);

// Degenerate denominators: empty GT and empty prediction score 1 on all
// four metrics; exactly one side empty scores 0 on the affected metrics.
PrfIou prf_iou(const ConfusionCounts& c);

struct ScoredPair {
    const Image* prob;
    const Mask* ref;
};

// Default grid {0.01, 0.02, ..., 0.99}.
std::vector<double> default_threshold_grid(int steps = 99);

// Best aggregate F1 over the grid, counts summed across the dataset.
// Ties resolve toward the smaller threshold.
std::pair<double, double> ods(const std::vector<ScoredPair>& dataset,
                              const std::vector<double>& grid);

// Mean over images of each image's best-threshold F1.
double ois(const std::vector<ScoredPair>& dataset, const std::vector<double>& grid);

// Loads each manifest entry's mask and its 16-bit prediction
// pred_dir/<id>.png, aggregates fixed-threshold metrics and ODS/OIS.
MetricsReport evaluate(const std::filesystem::path& pred_dir,
                       const std::filesystem::path& manifest_path,
                       double threshold = 0.5,
                       const std::vector<double>& grid = default_threshold_grid());

std::string report_to_json(const MetricsReport& report);

}  // namespace cracksim
