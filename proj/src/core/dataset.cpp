#include "core/dataset.hpp"

#include "core/errors.hpp"
#include "core/text.hpp"

#include <algorithm>
#include <fstream>

namespace dnaids {

Dataset Dataset::prefix(std::size_t n) const {
    if (n > records_.size())
        raise(ErrorCode::Range, "prefix size " + std::to_string(n) +
                                    " exceeds dataset size " + std::to_string(records_.size()));
    Dataset out;
    out.records_.assign(records_.begin(), records_.begin() + static_cast<std::ptrdiff_t>(n));
    return out;
}

void Dataset::resolve_labels(const AttackTaxonomy& taxonomy) {
    for (auto& rec : records_) {
        if (rec.label.empty())
            raise(ErrorCode::Parse,
                  "record at line " + std::to_string(rec.source_index + 1) + " has no label");
        try {
            rec.label_class = taxonomy.normalize_label(rec.label);
        } catch (const Error& e) {
            raise(e.code(), std::string(e.what()) + " (line " +
                                std::to_string(rec.source_index + 1) + ")");
        }
    }
}

std::vector<LabelClass> Dataset::label_classes() const {
    std::vector<LabelClass> out;
    out.reserve(records_.size());
    for (const auto& rec : records_) {
        if (!rec.label_class)
            raise(ErrorCode::Contract, "dataset labels are not resolved");
        out.push_back(*rec.label_class);
    }
    return out;
}

std::size_t for_each_record(std::istream& in, const RecordSchema& schema,
                            const ParseOptions& options,
                            const std::function<void(ConnectionRecord&&)>& sink) {
    const std::size_t n_features = schema.features().size();
    const std::size_t plain_arity = n_features + 1;

    std::string line;
    std::size_t line_index = 0;
    std::size_t skipped = 0;

    auto bad_line = [&](const std::string& what) {
        if (options.skip_bad) {
            ++skipped;
            return;
        }
        raise(ErrorCode::Parse, "line " + std::to_string(line_index + 1) + ": " + what);
    };

    for (; std::getline(in, line); ++line_index) {
        chomp_cr(line);
        if (line.empty()) continue;

        auto fields = split(line, ',');
        const bool with_difficulty =
            schema.allows_difficulty_column() && fields.size() == plain_arity + 1;
        if (fields.size() != plain_arity && !with_difficulty) {
            bad_line("arity error: got " + std::to_string(fields.size()) + " fields, want " +
                     std::to_string(plain_arity) +
                     (schema.allows_difficulty_column()
                          ? " or " + std::to_string(plain_arity + 1)
                          : ""));
            continue;
        }

        ConnectionRecord rec;
        rec.numeric.reserve(schema.continuous_count());
        rec.tokens.reserve(schema.symbolic_count());
        rec.source_index = line_index;

        bool ok = true;
        for (std::size_t i = 0; i < n_features; ++i) {
            if (schema.features()[i].kind == FeatureKind::Continuous) {
                double v = 0;
                if (!parse_double(fields[i], v)) {
                    bad_line("numeric parse error in field " + std::to_string(i) + " (" +
                             schema.features()[i].name + "): \"" + std::string(fields[i]) + "\"");
                    ok = false;
                    break;
                }
                rec.numeric.push_back(v);
            } else {
                rec.tokens.emplace_back(fields[i]);
            }
        }
        if (!ok) continue;

        rec.label = std::string(fields[n_features]);
        sink(std::move(rec));
    }
    return skipped;
}

Dataset parse_records(std::istream& in, const RecordSchema& schema, const ParseOptions& options) {
    Dataset out;
    out.skipped_lines_ = for_each_record(
        in, schema, options, [&](ConnectionRecord&& rec) { out.records_.push_back(std::move(rec)); });
    return out;
}

Dataset load_dataset(const std::string& path, const RecordSchema& schema,
                     const ParseOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::Io, "cannot open dataset file: " + path);
    return parse_records(in, schema, options);
}

FeatureStats FeatureStats::merged(const FeatureStats& a, const FeatureStats& b) {
    if (a.continuous.size() != b.continuous.size() || a.symbolic.size() != b.symbolic.size())
        raise(ErrorCode::Contract, "cannot merge stats with different shapes");
    FeatureStats out = a;
    for (std::size_t i = 0; i < out.continuous.size(); ++i) {
        out.continuous[i].min = std::min(out.continuous[i].min, b.continuous[i].min);
        out.continuous[i].max = std::max(out.continuous[i].max, b.continuous[i].max);
    }
    for (std::size_t i = 0; i < out.symbolic.size(); ++i)
        out.symbolic[i].insert(b.symbolic[i].begin(), b.symbolic[i].end());
    return out;
}

FeatureStats feature_stats(const Dataset& dataset, const RecordSchema& schema) {
    if (dataset.empty()) raise(ErrorCode::Contract, "empty dataset");

    FeatureStats stats;
    stats.continuous.resize(schema.continuous_count());
    stats.symbolic.resize(schema.symbolic_count());

    const auto& first = dataset[0];
    for (std::size_t i = 0; i < stats.continuous.size(); ++i)
        stats.continuous[i] = {first.numeric[i], first.numeric[i]};

    for (const auto& rec : dataset.records()) {
        if (rec.numeric.size() != stats.continuous.size() ||
            rec.tokens.size() != stats.symbolic.size())
            raise(ErrorCode::Contract, "record shape does not match schema");
        for (std::size_t i = 0; i < rec.numeric.size(); ++i) {
            stats.continuous[i].min = std::min(stats.continuous[i].min, rec.numeric[i]);
            stats.continuous[i].max = std::max(stats.continuous[i].max, rec.numeric[i]);
        }
        for (std::size_t i = 0; i < rec.tokens.size(); ++i)
            stats.symbolic[i].insert(rec.tokens[i]);
    }
    return stats;
}

} // namespace dnaids
