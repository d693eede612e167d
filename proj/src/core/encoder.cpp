#include "core/encoder.hpp"

#include "core/errors.hpp"
#include "core/text.hpp"

#include <algorithm>
#include <sstream>

namespace dnaids {

namespace {

// Smallest k with 4^k >= levels.
std::size_t quantizer_width(std::size_t levels) {
    std::size_t k = 1;
    std::size_t cap = 4;
    while (cap < levels) {
        cap <<= 2;
        ++k;
    }
    return k;
}

// Smallest k with 4^k - 1 >= category count (index 4^k - 1 stays reserved).
std::size_t codebook_width(std::size_t categories) {
    std::size_t k = 1;
    while (((std::size_t{1} << (2 * k)) - 1) < categories) ++k;
    return k;
}

void check_levels(std::size_t levels) {
    if (levels < 2 || levels > (std::size_t{1} << 20))
        raise(ErrorCode::Argument, "quantization levels must be in 2..1048576");
}

} // namespace

std::size_t ContinuousQuantizer::level_of(double x) const {
    if (max <= min) return 0;
    double t = (x - min) / (max - min);
    if (!(t > 0)) t = 0;
    if (t > 1) t = 1;
    auto level = static_cast<std::size_t>(t * static_cast<double>(levels));
    return std::min(level, levels - 1);
}

NucleotideSequence ContinuousQuantizer::encode(double x) const {
    return to_codon(level_of(x), codon_width);
}

std::pair<NucleotideSequence, bool> CategoryCodebook::encode(std::string_view token) const {
    auto it = std::lower_bound(categories.begin(), categories.end(), token);
    if (it != categories.end() && *it == token) {
        auto index = static_cast<std::size_t>(it - categories.begin());
        return {to_codon(index, codon_width), false};
    }
    return {to_codon(sentinel_index(), codon_width), true};
}

EncoderModel::EncoderModel(std::vector<FeatureEncoder> encoders, std::size_t levels)
    : encoders_(std::move(encoders)), levels_(levels) {
    check_levels(levels_);
    if (encoders_.empty()) raise(ErrorCode::Argument, "encoder model needs at least one feature");

    offsets_.reserve(encoders_.size());
    for (const auto& enc : encoders_) {
        if (enc.codon_width() == 0)
            raise(ErrorCode::Argument, "zero-width feature encoder");
        offsets_.push_back(total_length_);
        total_length_ += enc.codon_width();
    }

    std::string body = serialize_body();
    fingerprint_ = to_hex16(fnv1a64(body));
}

EncoderModel EncoderModel::fit(const FeatureStats& stats, const RecordSchema& schema,
                               std::size_t levels) {
    check_levels(levels);
    if (stats.continuous.size() != schema.continuous_count() ||
        stats.symbolic.size() != schema.symbolic_count())
        raise(ErrorCode::Contract, "stats shape does not cover the schema");

    std::vector<FeatureEncoder> encoders;
    encoders.reserve(schema.features().size());
    for (const auto& feat : schema.features()) {
        FeatureEncoder enc;
        enc.kind = feat.kind;
        const std::size_t slot = schema.kind_ordinal(static_cast<std::size_t>(feat.index));
        if (feat.kind == FeatureKind::Continuous) {
            const auto& range = stats.continuous[slot];
            enc.quantizer = {range.min, range.max, levels, quantizer_width(levels)};
        } else {
            const auto& cats = stats.symbolic[slot];
            const std::size_t width = codebook_width(cats.size());
            if (width > kMaxCodebookWidth)
                raise(ErrorCode::Capacity,
                      "feature " + feat.name + " has " + std::to_string(cats.size()) +
                          " categories; codebook capacity is " +
                          std::to_string((std::size_t{1} << (2 * kMaxCodebookWidth)) - 1));
            enc.codebook.categories.assign(cats.begin(), cats.end());
            enc.codebook.codon_width = width;
        }
        encoders.push_back(std::move(enc));
    }
    return EncoderModel(std::move(encoders), levels);
}

EncodeResult EncoderModel::encode(const ConnectionRecord& rec) const {
    std::size_t n_continuous = 0;
    std::size_t n_symbolic = 0;
    for (const auto& enc : encoders_)
        (enc.kind == FeatureKind::Continuous ? n_continuous : n_symbolic) += 1;
    if (rec.numeric.size() != n_continuous || rec.tokens.size() != n_symbolic)
        raise(ErrorCode::Contract, "record shape does not match the encoder model");

    EncodeResult out;
    out.sequence.reserve(total_length_);
    std::size_t ci = 0;
    std::size_t si = 0;
    for (const auto& enc : encoders_) {
        if (enc.kind == FeatureKind::Continuous) {
            out.sequence += enc.quantizer.encode(rec.numeric[ci++]);
        } else {
            auto [codon, unknown] = enc.codebook.encode(rec.tokens[si++]);
            out.sequence += codon;
            if (unknown) ++out.unknown_count;
        }
    }
    return out;
}

std::string EncoderModel::serialize_body() const {
    std::string body;
    body += "#ENC v1\n";
    body += "levels=" + std::to_string(levels_) + "\n";
    for (std::size_t i = 0; i < encoders_.size(); ++i) {
        const auto& enc = encoders_[i];
        body += std::to_string(i);
        if (enc.kind == FeatureKind::Continuous) {
            body += "|continuous|" + std::to_string(enc.quantizer.codon_width) + "|";
            body += format_double(enc.quantizer.min) + "," + format_double(enc.quantizer.max);
        } else {
            body += "|symbolic|" + std::to_string(enc.codebook.codon_width) + "|";
            for (std::size_t c = 0; c < enc.codebook.categories.size(); ++c) {
                if (c) body += ",";
                body += enc.codebook.categories[c];
            }
        }
        body += "\n";
    }
    return body;
}

std::string EncoderModel::serialize() const {
    return serialize_body() + "fp=" + fingerprint_ + "\n";
}

void EncoderModel::save(const std::string& path) const { write_file(path, serialize()); }

EncoderModel EncoderModel::load(const std::string& path) {
    return deserialize(read_file(path), path);
}

EncoderModel EncoderModel::deserialize(std::string_view content, const std::string& origin) {
    std::istringstream in{std::string(content)};
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++line_no;
        chomp_cr(line);
        return true;
    };
    auto fail = [&](const std::string& what) -> void {
        raise(ErrorCode::Parse, origin + ":" + std::to_string(line_no) + ": " + what);
    };

    if (!next_line() || line != "#ENC v1")
        raise(ErrorCode::Parse, origin + ": unsupported encoder model header");
    if (!next_line() || line.rfind("levels=", 0) != 0) fail("expected levels= line");
    std::size_t levels = 0;
    if (!parse_size(std::string_view(line).substr(7), levels)) fail("bad levels value");
    check_levels(levels);

    std::vector<FeatureEncoder> encoders;
    std::string stored_fp;
    while (next_line()) {
        if (line.rfind("fp=", 0) == 0) {
            stored_fp = line.substr(3);
            break;
        }
        // index|kind|width|payload; the payload may contain commas, so only
        // the first three separators are structural.
        std::size_t p1 = line.find('|');
        std::size_t p2 = p1 == std::string::npos ? std::string::npos : line.find('|', p1 + 1);
        std::size_t p3 = p2 == std::string::npos ? std::string::npos : line.find('|', p2 + 1);
        if (p3 == std::string::npos) fail("malformed feature line");

        std::size_t index = 0;
        if (!parse_size(std::string_view(line).substr(0, p1), index) || index != encoders.size())
            fail("feature lines must be numbered consecutively from 0");
        std::string_view kind = std::string_view(line).substr(p1 + 1, p2 - p1 - 1);
        std::size_t width = 0;
        if (!parse_size(std::string_view(line).substr(p2 + 1, p3 - p2 - 1), width) || width == 0)
            fail("bad codon width");
        std::string_view payload = std::string_view(line).substr(p3 + 1);

        FeatureEncoder enc;
        if (kind == "continuous") {
            enc.kind = FeatureKind::Continuous;
            auto parts = split(payload, ',');
            double mn = 0;
            double mx = 0;
            if (parts.size() != 2 || !parse_double(parts[0], mn) || !parse_double(parts[1], mx))
                fail("bad quantizer payload (want min,max)");
            if (mn > mx) fail("quantizer min exceeds max");
            if (width != quantizer_width(levels)) fail("quantizer width disagrees with levels");
            enc.quantizer = {mn, mx, levels, width};
        } else if (kind == "symbolic") {
            enc.kind = FeatureKind::Symbolic;
            auto parts = split(payload, ',');
            enc.codebook.categories.assign(parts.begin(), parts.end());
            if (!std::is_sorted(enc.codebook.categories.begin(), enc.codebook.categories.end()))
                fail("codebook categories must be sorted");
            if (std::adjacent_find(enc.codebook.categories.begin(),
                                   enc.codebook.categories.end()) !=
                enc.codebook.categories.end())
                fail("duplicate codebook category");
            if (width != codebook_width(enc.codebook.categories.size()) ||
                width > kMaxCodebookWidth)
                fail("codebook width disagrees with category count");
            enc.codebook.codon_width = width;
        } else {
            fail("unknown feature kind");
        }
        encoders.push_back(std::move(enc));
    }

    if (stored_fp.empty()) raise(ErrorCode::Parse, origin + ": missing fp= line");

    EncoderModel model(std::move(encoders), levels);
    if (model.fingerprint() != stored_fp)
        raise(ErrorCode::Parse, origin + ": model fingerprint does not match content");
    return model;
}

std::pair<std::size_t, std::size_t> group_span(const EncoderModel& model,
                                               const RecordSchema& schema, FeatureGroup group) {
    if (model.encoders().size() != schema.features().size())
        raise(ErrorCode::Contract, "encoder model does not align with schema");

    std::size_t first = schema.features().size();
    std::size_t last = 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < schema.features().size(); ++i) {
        if (schema.features()[i].group != group) continue;
        first = std::min(first, i);
        last = i;
        ++count;
    }
    if (count == 0)
        raise(ErrorCode::Argument,
              "schema has no features in group " + std::string(group_name(group)));
    if (last - first + 1 != count)
        raise(ErrorCode::Contract,
              "group " + std::string(group_name(group)) + " is not contiguous in the schema");

    const std::size_t offset = model.offset_of(first);
    const std::size_t end = model.offset_of(last) + model.encoders()[last].codon_width();
    return {offset, end - offset};
}

} // namespace dnaids
