#ifndef DNAIDS_CORE_DATASET_HPP
#define DNAIDS_CORE_DATASET_HPP

#include "core/schema.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dnaids {

// One parsed connection record. Values are stored per kind in schema order;
// use RecordSchema::kind_ordinal to go from feature index to slot.
struct ConnectionRecord {
    std::vector<double> numeric;      // continuous values, schema order
    std::vector<std::string> tokens;  // symbolic values, schema order
    std::string label;                // raw label token; empty when absent
    std::optional<LabelClass> label_class;
    std::size_t source_index = 0;     // 0-based input line number
};

struct ParseOptions {
    // With skip_bad, malformed lines are counted and skipped instead of
    // aborting the stream.
    bool skip_bad = false;
};

class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<ConnectionRecord> records)
        : records_(std::move(records)) {}

    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }
    const ConnectionRecord& operator[](std::size_t i) const { return records_[i]; }
    const std::vector<ConnectionRecord>& records() const { return records_; }

    std::size_t skipped_lines() const { return skipped_lines_; }

    // First n records in original order; throws Error(Range) when n > size.
    Dataset prefix(std::size_t n) const;

    // Fills label_class on every record; throws Error(Parse) on the first
    // record whose label is neither "normal" nor in the taxonomy.
    void resolve_labels(const AttackTaxonomy& taxonomy);

    // Ground-truth classes aligned to record order; requires resolve_labels.
    std::vector<LabelClass> label_classes() const;

private:
    friend Dataset parse_records(std::istream&, const RecordSchema&, const ParseOptions&);

    std::vector<ConnectionRecord> records_;
    std::size_t skipped_lines_ = 0;
};

// Streaming parse: invokes sink for every well-formed record. Lines must have
// 42 fields (41 features + label), or 43 when the schema allows a trailing
// difficulty column (discarded). Fail-fast unless options.skip_bad; returns
// the number of skipped lines.
std::size_t for_each_record(std::istream& in, const RecordSchema& schema,
                            const ParseOptions& options,
                            const std::function<void(ConnectionRecord&&)>& sink);

Dataset parse_records(std::istream& in, const RecordSchema& schema,
                      const ParseOptions& options = {});
Dataset load_dataset(const std::string& path, const RecordSchema& schema,
                     const ParseOptions& options = {});

// Observed value ranges and category sets, aligned per kind like the records.
struct FeatureStats {
    struct Range {
        double min = 0;
        double max = 0;
    };
    std::vector<Range> continuous;                 // one per continuous feature
    std::vector<std::set<std::string>> symbolic;   // one per symbolic feature

    // Elementwise min/max union; both sides must have matching shapes.
    static FeatureStats merged(const FeatureStats& a, const FeatureStats& b);
};

// Throws Error(Contract, "empty dataset") when there is nothing to observe.
FeatureStats feature_stats(const Dataset& dataset, const RecordSchema& schema);

} // namespace dnaids

#endif
