#ifndef DNAIDS_CORE_REPORT_HPP
#define DNAIDS_CORE_REPORT_HPP

#include "core/engine.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace dnaids {

// Binary attack-vs-normal tallies plus exact-class agreement per class.
struct ConfusionCounts {
    std::uint64_t tp = 0;  // truth attack, verdict attack (any class)
    std::uint64_t fp = 0;  // truth normal, verdict attack
    std::uint64_t tn = 0;  // truth normal, verdict normal
    std::uint64_t fn = 0;  // truth attack, verdict normal

    struct ClassTally {
        std::uint64_t detected_as_class = 0;  // verdict names exactly this class
        std::uint64_t missed = 0;             // every other outcome
    };
    std::map<LabelClass, ClassTally> per_class;

    std::uint64_t total() const { return tp + fp + tn + fn; }
};

ConfusionCounts score_run(std::span<const Verdict> verdicts, std::span<const LabelClass> truths);

struct SeriesPoint {
    std::size_t samples = 0;
    std::uint64_t fp = 0;  // cumulative within the prefix
    std::uint64_t fn = 0;

    bool operator==(const SeriesPoint&) const = default;
};

// One detection pass over the largest requested prefix with running FP/FN
// counters; emits one point per requested size. Sizes must be ascending and
// within the dataset; truths must align with the records.
std::vector<SeriesPoint> fp_series(const Dataset& dataset, std::span<const LabelClass> truths,
                                   const EncoderModel& model, const MatchEngine& engine,
                                   std::span<const std::size_t> sizes, unsigned workers = 1);

// Scores printed with up to 12 significant digits, trailing zeros trimmed.
std::string format_score(double score);

std::string render_alert_log(std::span<const Verdict> verdicts);
void write_alert_log(std::span<const Verdict> verdicts, const std::string& path);

std::string render_series_csv(std::span<const SeriesPoint> series);
void write_series_csv(std::span<const SeriesPoint> series, const std::string& path);

} // namespace dnaids

#endif
