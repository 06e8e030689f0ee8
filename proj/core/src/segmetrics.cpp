#include "cracksim/segmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace cracksim {

ConfusionCounts confusion(const Image& prob, const Mask& ref, double threshold) {
    if (prob.channels != 1)
        throw std::invalid_argument("confusion: probability map must be single-channel");
    require_same_dims(prob, ref, "confusion");
    ConfusionCounts c;
    for (size_t i = 0; i < prob.data.size(); ++i) {
        const bool pos = static_cast<double>(prob.data[i]) >= threshold;
        const bool gt = ref.data[i] != 0;
        if (pos && gt) ++c.tp;
        else if (pos) ++c.fp;
        else if (gt) ++c.fn;
        else ++c.tn;
    }
    return c;
}

PrfIou prf_iou(const ConfusionCounts& c) {
    const bool gt_empty = c.tp + c.fn == 0;
    const bool pred_empty = c.tp + c.fp == 0;
    PrfIou m;
    if (gt_empty && pred_empty) {
        m.precision = m.recall = m.f1 = m.iou = 1.0;
        return m;
    }
    m.precision = pred_empty ? 0.0 : static_cast<double>(c.tp) / (c.tp + c.fp);
    m.recall = gt_empty ? 0.0 : static_cast<double>(c.tp) / (c.tp + c.fn);
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    m.iou = static_cast<double>(c.tp) / (c.tp + c.fp + c.fn);
    return m;
}

std::vector<double> default_threshold_grid(int steps) {
    std::vector<double> grid(static_cast<size_t>(steps));
    for (int i = 0; i < steps; ++i)
        grid[static_cast<size_t>(i)] = static_cast<double>(i + 1) / (steps + 1);
    return grid;
}

namespace {

// Per-threshold confusion counts for one image via histogram binning:
// bin(p) = number of grid thresholds <= p, so p >= grid[i] iff bin > i.
std::vector<ConfusionCounts> threshold_counts(const Image& prob, const Mask& ref,
                                              const std::vector<double>& grid) {
    if (prob.channels != 1)
        throw std::invalid_argument("threshold_counts: single-channel expected");
    require_same_dims(prob, ref, "threshold sweep");
    const size_t g = grid.size();
    std::vector<uint64_t> pos_hist(g + 1, 0), neg_hist(g + 1, 0);
    uint64_t n_pos = 0, n_neg = 0;
    for (size_t i = 0; i < prob.data.size(); ++i) {
        const double p = prob.data[i];
        const size_t bin = static_cast<size_t>(
            std::upper_bound(grid.begin(), grid.end(), p) - grid.begin());
        if (ref.data[i]) {
            ++pos_hist[bin];
            ++n_pos;
        } else {
            ++neg_hist[bin];
            ++n_neg;
        }
    }
    std::vector<ConfusionCounts> out(g);
    uint64_t tp = 0, fp = 0;
    for (size_t i = g; i-- > 0;) {
        tp += pos_hist[i + 1];
        fp += neg_hist[i + 1];
        out[i].tp = tp;
        out[i].fp = fp;
        out[i].fn = n_pos - tp;
        out[i].tn = n_neg - fp;
    }
    return out;
}

void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("threshold grid must be nonempty");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("threshold grid must be sorted ascending");
}

}  // namespace

std::pair<double, double> ods(const std::vector<ScoredPair>& dataset,
                              const std::vector<double>& grid) {
    if (dataset.empty()) throw std::invalid_argument("ods: empty dataset");
    check_grid(grid);
    std::vector<ConfusionCounts> agg(grid.size());
    for (const auto& pair : dataset) {
        const auto counts = threshold_counts(*pair.prob, *pair.ref, grid);
        for (size_t i = 0; i < grid.size(); ++i) agg[i] += counts[i];
    }
    size_t best = 0;
    double best_f1 = -1.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        const double f1 = prf_iou(agg[i]).f1;
        if (f1 > best_f1) {  // ties keep the smaller threshold
            best_f1 = f1;
            best = i;
        }
    }
    return {grid[best], best_f1};
}

double ois(const std::vector<ScoredPair>& dataset, const std::vector<double>& grid) {
    if (dataset.empty()) throw std::invalid_argument("ois: empty dataset");
    check_grid(grid);
    double sum = 0.0;
    for (const auto& pair : dataset) {
        const auto counts = threshold_counts(*pair.prob, *pair.ref, grid);
        double best = -1.0;
        for (const auto& c : counts) best = std::max(best, prf_iou(c).f1);
        sum += best;
    }
    return sum / static_cast<double>(dataset.size());
}

MetricsReport evaluate(const std::filesystem::path& pred_dir,
                       const std::filesystem::path& manifest_path,
                       double threshold, const std::vector<double>& grid) {
    check_grid(grid);
    namespace fs = std::filesystem;
    const Manifest manifest = fs::is_directory(manifest_path)
                                  ? read_manifest(manifest_path)
                                  : read_manifest_file(manifest_path);
    const fs::path root = fs::is_directory(manifest_path)
                              ? manifest_path
                              : manifest_path.parent_path();

    std::vector<std::string> missing;
    for (const auto& e : manifest.entries)
        if (!fs::exists(pred_dir / (e.id + ".png"))) missing.push_back(e.id);
    if (!missing.empty()) {
        std::string msg = "evaluate: missing predictions for:";
        for (const auto& id : missing) msg += " " + id;
        throw std::runtime_error(msg);
    }

    MetricsReport report;
    report.threshold = threshold;
    ConfusionCounts fixed_total;
    std::vector<ConfusionCounts> agg(grid.size());
    double ois_sum = 0.0;

    for (const auto& e : manifest.entries) {
        const Mask ref = read_mask_png(root / e.mask_path);
        const fs::path pred_path = pred_dir / (e.id + ".png");
        const Image prob = read_prob_png(pred_path);
        if (prob.width != ref.width || prob.height != ref.height)
            throw std::runtime_error("evaluate: dimension mismatch for " +
                                     pred_path.string());

        PerImageRecord rec;
        rec.id = e.id;
        rec.counts = confusion(prob, ref, threshold);
        fixed_total += rec.counts;

        const auto counts = threshold_counts(prob, ref, grid);
        double best = -1.0;
        size_t best_i = 0;
        for (size_t i = 0; i < grid.size(); ++i) {
            const double f1 = prf_iou(counts[i]).f1;
            if (f1 > best) {
                best = f1;
                best_i = i;
            }
            agg[i] += counts[i];
        }
        rec.best_threshold = grid[best_i];
        rec.best_f1 = best;
        ois_sum += best;
        report.per_image.push_back(std::move(rec));
    }

    const PrfIou fixed = prf_iou(fixed_total);
    report.precision = fixed.precision;
    report.recall = fixed.recall;
    report.f1 = fixed.f1;
    report.iou = fixed.iou;

    size_t best = 0;
    double best_f1 = -1.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        const double f1 = prf_iou(agg[i]).f1;
        if (f1 > best_f1) {
            best_f1 = f1;
            best = i;
        }
    }
    report.ods_threshold = grid[best];
    report.ods_f1 = best_f1;
    report.ois = ois_sum / static_cast<double>(manifest.entries.size());
    return report;
}

std::string report_to_json(const MetricsReport& r) {
    nlohmann::json j;
    j["threshold"] = r.threshold;
    j["precision"] = r.precision;
    j["recall"] = r.recall;
    j["f1"] = r.f1;
    j["iou"] = r.iou;
    j["ods"] = {{"threshold", r.ods_threshold}, {"f1", r.ods_f1}};
    j["ois"] = r.ois;
    auto& per = j["per_image"] = nlohmann::json::array();
    for (const auto& rec : r.per_image) {
        per.push_back({{"id", rec.id},
                       {"best_threshold", rec.best_threshold},
                       {"best_f1", rec.best_f1},
                       {"counts",
                        {{"tp", rec.counts.tp},
                         {"fp", rec.counts.fp},
                         {"fn", rec.counts.fn},
                         {"tn", rec.counts.tn}}}});
    }
    return j.dump(2);
}

}  // namespace cracksim
