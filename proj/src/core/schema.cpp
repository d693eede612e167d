#include "core/schema.hpp"

#include "core/errors.hpp"
#include "core/text.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace dnaids {

namespace {

bool is_comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (c == ' ' || c == '\t') continue;
        return c == '#';
    }
    return true;
}

[[noreturn]] void schema_error(const std::string& origin, std::size_t line_no, const std::string& what) {
    raise(ErrorCode::Parse, origin + ":" + std::to_string(line_no) + ": " + what);
}

} // namespace

std::string_view group_name(FeatureGroup g) {
    switch (g) {
        case FeatureGroup::Basic: return "basic";
        case FeatureGroup::Content: return "content";
        case FeatureGroup::TimeTraffic: return "time_traffic";
        case FeatureGroup::HostTraffic: return "host_traffic";
    }
    raise(ErrorCode::Argument, "invalid feature group value");
}

FeatureGroup group_from_name(std::string_view name) {
    if (name == "basic") return FeatureGroup::Basic;
    if (name == "content") return FeatureGroup::Content;
    if (name == "time_traffic") return FeatureGroup::TimeTraffic;
    if (name == "host_traffic") return FeatureGroup::HostTraffic;
    raise(ErrorCode::Parse, "unknown feature group: " + std::string(name));
}

RecordSchema RecordSchema::load(const std::string& path, bool allows_difficulty_column) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::Io, "cannot open schema file: " + path);
    return parse(in, allows_difficulty_column, path);
}

RecordSchema RecordSchema::parse(std::istream& in, bool allows_difficulty_column,
                                 const std::string& origin) {
    RecordSchema schema;
    schema.allows_difficulty_column_ = allows_difficulty_column;

    std::string line;
    std::size_t line_no = 0;
    std::set<int> seen_indices;
    while (std::getline(in, line)) {
        ++line_no;
        chomp_cr(line);
        if (is_comment_or_blank(line)) continue;

        auto fields = split(line, ',');
        if (fields.size() != 4)
            schema_error(origin, line_no, "malformed schema line (want index,name,kind,group)");

        FeatureDescriptor d;
        std::size_t idx = 0;
        if (!parse_size(fields[0], idx) || idx >= kFeatureCount)
            schema_error(origin, line_no, "feature index must be an integer in 0..40");
        d.index = static_cast<int>(idx);
        if (!seen_indices.insert(d.index).second)
            schema_error(origin, line_no, "duplicate feature index " + std::to_string(d.index));

        d.name = std::string(fields[1]);
        if (d.name.empty()) schema_error(origin, line_no, "empty feature name");

        if (fields[2] == "continuous") d.kind = FeatureKind::Continuous;
        else if (fields[2] == "symbolic") d.kind = FeatureKind::Symbolic;
        else schema_error(origin, line_no, "unknown feature kind: " + std::string(fields[2]));

        try {
            d.group = group_from_name(fields[3]);
        } catch (const Error& e) {
            schema_error(origin, line_no, e.what());
        }
        schema.features_.push_back(std::move(d));
    }

    schema.finalize(origin);
    return schema;
}

void RecordSchema::finalize(const std::string& origin) {
    if (features_.size() != kFeatureCount)
        raise(ErrorCode::Parse, origin + ": wrong feature count: " +
                                    std::to_string(features_.size()) + " (want 41)");

    // File order must already be index order; a permuted file is ambiguous
    // about the on-disk record layout.
    std::set<std::string> names;
    for (std::size_t i = 0; i < features_.size(); ++i) {
        if (features_[i].index != static_cast<int>(i))
            raise(ErrorCode::Parse, origin + ": feature indices must be listed in order 0..40");
        if (!names.insert(features_[i].name).second)
            raise(ErrorCode::Parse, origin + ": duplicate feature name: " + features_[i].name);
        if (i < 6 && features_[i].group != FeatureGroup::Basic)
            raise(ErrorCode::Parse, origin + ": features 0..5 must be in group basic");
    }

    kind_ordinal_.resize(features_.size());
    for (std::size_t i = 0; i < features_.size(); ++i) {
        if (features_[i].kind == FeatureKind::Continuous)
            kind_ordinal_[i] = continuous_count_++;
        else
            kind_ordinal_[i] = symbolic_count_++;
    }
}

AttackTaxonomy AttackTaxonomy::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::Io, "cannot open taxonomy file: " + path);
    return parse(in, path);
}

AttackTaxonomy AttackTaxonomy::parse(std::istream& in, const std::string& origin) {
    AttackTaxonomy tax;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        chomp_cr(line);
        if (is_comment_or_blank(line)) continue;

        auto fields = split(line, ',');
        if (fields.size() != 2)
            schema_error(origin, line_no, "malformed taxonomy line (want subtype,class)");

        std::string subtype = to_lower(fields[0]);
        if (subtype.empty()) schema_error(origin, line_no, "empty subtype");
        if (subtype == "normal")
            schema_error(origin, line_no, "\"normal\" is not an attack subtype");

        LabelClass cls;
        try {
            cls = class_from_name(fields[1]);
        } catch (const Error& e) {
            schema_error(origin, line_no, e.what());
        }
        if (cls == LabelClass::Normal)
            schema_error(origin, line_no, "taxonomy classes must be attack classes");

        if (!tax.subtype_to_class_.emplace(std::move(subtype), cls).second)
            schema_error(origin, line_no, "duplicate subtype: " + std::string(fields[0]));
    }
    return tax;
}

LabelClass AttackTaxonomy::normalize_label(std::string_view raw) const {
    if (raw.empty()) raise(ErrorCode::Parse, "empty label");
    if (raw.back() == '.') raw.remove_suffix(1);
    std::string token = to_lower(raw);
    if (token == "normal") return LabelClass::Normal;
    auto it = subtype_to_class_.find(token);
    if (it == subtype_to_class_.end())
        raise(ErrorCode::Parse, "unknown label: " + token);
    return it->second;
}

} // namespace dnaids
