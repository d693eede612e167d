#ifndef DNAIDS_CORE_SCHEMA_HPP
#define DNAIDS_CORE_SCHEMA_HPP

#include "core/label.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace dnaids {

enum class FeatureKind { Continuous, Symbolic };
enum class FeatureGroup { Basic, Content, TimeTraffic, HostTraffic };

std::string_view group_name(FeatureGroup g);
FeatureGroup group_from_name(std::string_view name);

struct FeatureDescriptor {
    int index = 0;
    std::string name;
    FeatureKind kind = FeatureKind::Continuous;
    FeatureGroup group = FeatureGroup::Basic;
};

// The declared layout of one connection record: exactly 41 features, indices
// 0..40 each once, unique names, the first six in group basic.
class RecordSchema {
public:
    static constexpr std::size_t kFeatureCount = 41;

    static RecordSchema load(const std::string& path, bool allows_difficulty_column = true);
    static RecordSchema parse(std::istream& in, bool allows_difficulty_column = true,
                              const std::string& origin = "<stream>");

    const std::vector<FeatureDescriptor>& features() const { return features_; }
    bool allows_difficulty_column() const { return allows_difficulty_column_; }

    std::size_t continuous_count() const { return continuous_count_; }
    std::size_t symbolic_count() const { return symbolic_count_; }

    // Ordinal of feature `index` within the features of its own kind.
    std::size_t kind_ordinal(std::size_t index) const { return kind_ordinal_[index]; }

private:
    RecordSchema() = default;
    void finalize(const std::string& origin);

    std::vector<FeatureDescriptor> features_;
    std::vector<std::size_t> kind_ordinal_;
    std::size_t continuous_count_ = 0;
    std::size_t symbolic_count_ = 0;
    bool allows_difficulty_column_ = true;
};

// Attack subtype -> class map. Lookups strip a trailing '.' (KDD-99 style)
// and lowercase the token once; "normal" maps to Normal without an entry.
class AttackTaxonomy {
public:
    static AttackTaxonomy load(const std::string& path);
    static AttackTaxonomy parse(std::istream& in, const std::string& origin = "<stream>");

    std::size_t size() const { return subtype_to_class_.size(); }
    const std::map<std::string, LabelClass>& entries() const { return subtype_to_class_; }

    // Throws Error(Parse, "unknown label ...") for tokens that are neither
    // "normal" nor a mapped subtype.
    LabelClass normalize_label(std::string_view raw) const;

private:
    std::map<std::string, LabelClass> subtype_to_class_;
};

} // namespace dnaids

#endif
