#include "core/report.hpp"

#include "core/errors.hpp"
#include "core/text.hpp"

#include <algorithm>
#include <cstdio>

namespace dnaids {

ConfusionCounts score_run(std::span<const Verdict> verdicts, std::span<const LabelClass> truths) {
    if (verdicts.size() != truths.size())
        raise(ErrorCode::Contract, "length mismatch: " + std::to_string(verdicts.size()) +
                                       " verdicts vs " + std::to_string(truths.size()) +
                                       " truths");
    ConfusionCounts counts;
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        const bool truth_attack = is_attack_class(truths[i]);
        const bool verdict_attack = verdicts[i].attack;
        if (truth_attack && verdict_attack) ++counts.tp;
        else if (truth_attack) ++counts.fn;
        else if (verdict_attack) ++counts.fp;
        else ++counts.tn;

        const LabelClass named = verdict_attack ? verdicts[i].cls : LabelClass::Normal;
        auto& tally = counts.per_class[truths[i]];
        if (named == truths[i]) ++tally.detected_as_class;
        else ++tally.missed;
    }
    return counts;
}

std::vector<SeriesPoint> fp_series(const Dataset& dataset, std::span<const LabelClass> truths,
                                   const EncoderModel& model, const MatchEngine& engine,
                                   std::span<const std::size_t> sizes, unsigned workers) {
    if (truths.size() != dataset.size())
        raise(ErrorCode::Contract, "length mismatch: " + std::to_string(dataset.size()) +
                                       " records vs " + std::to_string(truths.size()) + " truths");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] > dataset.size())
            raise(ErrorCode::Range, "series size " + std::to_string(sizes[i]) +
                                        " exceeds dataset size " + std::to_string(dataset.size()));
        if (i > 0 && sizes[i] < sizes[i - 1])
            raise(ErrorCode::Argument, "series sizes must be ascending");
    }
    if (sizes.empty()) return {};

    const std::size_t scan = sizes.back();
    const std::vector<Verdict> verdicts = detect(dataset.prefix(scan), model, engine, workers);

    std::vector<SeriesPoint> series;
    series.reserve(sizes.size());
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::size_t next = 0;
    for (std::size_t i = 0; i <= scan; ++i) {
        while (next < sizes.size() && sizes[next] == i) {
            series.push_back({i, fp, fn});
            ++next;
        }
        if (i == scan) break;
        const bool truth_attack = is_attack_class(truths[i]);
        if (!truth_attack && verdicts[i].attack) ++fp;
        if (truth_attack && !verdicts[i].attack) ++fn;
    }
    return series;
}

std::string format_score(double score) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", score);
    return buf;
}

std::string render_alert_log(std::span<const Verdict> verdicts) {
    std::string out;
    for (const auto& v : verdicts) {
        out += std::to_string(v.source_index);
        if (v.attack) {
            out += "\tattack\t";
            out += class_name(v.cls);
            out += "\t" + std::to_string(*v.signature_id);
        } else {
            out += "\tnormal\t-\t-";
        }
        out += "\t" + format_score(v.score) + "\n";
    }
    return out;
}

void write_alert_log(std::span<const Verdict> verdicts, const std::string& path) {
    write_file(path, render_alert_log(verdicts));
}

std::string render_series_csv(std::span<const SeriesPoint> series) {
    std::string out = "samples,false_positives,false_negatives\n";
    for (const auto& point : series) {
        out += std::to_string(point.samples) + "," + std::to_string(point.fp) + "," +
               std::to_string(point.fn) + "\n";
    }
    return out;
}

void write_series_csv(std::span<const SeriesPoint> series, const std::string& path) {
    write_file(path, render_series_csv(series));
}

} // namespace dnaids
