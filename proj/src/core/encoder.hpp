#ifndef DNAIDS_CORE_ENCODER_HPP
#define DNAIDS_CORE_ENCODER_HPP

#include "core/dataset.hpp"
#include "core/nucleotide.hpp"
#include "core/schema.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace dnaids {

// Maps a continuous value onto one of `levels` buckets over [min,max] and
// renders the bucket as a base-4 codon of width `codon_width`.
struct ContinuousQuantizer {
    double min = 0;
    double max = 0;
    std::size_t levels = 256;
    std::size_t codon_width = 4;

    std::size_t level_of(double x) const;
    NucleotideSequence encode(double x) const;
};

// Maps a category token onto its index in the lexicographically sorted
// category list; unseen tokens get the reserved sentinel index 4^k - 1.
struct CategoryCodebook {
    std::vector<std::string> categories;  // sorted, unique
    std::size_t codon_width = 1;

    std::size_t sentinel_index() const { return (std::size_t{1} << (2 * codon_width)) - 1; }

    // Returns (codon, unknown_flag).
    std::pair<NucleotideSequence, bool> encode(std::string_view token) const;
};

struct FeatureEncoder {
    FeatureKind kind = FeatureKind::Continuous;
    ContinuousQuantizer quantizer;  // valid when kind == Continuous
    CategoryCodebook codebook;      // valid when kind == Symbolic

    std::size_t codon_width() const {
        return kind == FeatureKind::Continuous ? quantizer.codon_width : codebook.codon_width;
    }
};

struct EncodeResult {
    NucleotideSequence sequence;
    std::size_t unknown_count = 0;  // sentinel-encoded symbolic features
};

// Fitted per-feature encoders. Immutable once constructed; the fingerprint is
// a 64-bit FNV-1a over the canonical serialization (everything before the
// trailing fp= line of the model file), rendered as 16 lowercase hex digits.
class EncoderModel {
public:
    static constexpr std::size_t kDefaultLevels = 256;
    // Largest allowed codebook width; capacity 4^4 - 1 = 255 categories.
    static constexpr std::size_t kMaxCodebookWidth = 4;

    EncoderModel(std::vector<FeatureEncoder> encoders, std::size_t levels);

    static EncoderModel fit(const FeatureStats& stats, const RecordSchema& schema,
                            std::size_t levels = kDefaultLevels);

    EncodeResult encode(const ConnectionRecord& rec) const;

    std::size_t total_length() const { return total_length_; }
    std::size_t levels() const { return levels_; }
    const std::string& fingerprint() const { return fingerprint_; }
    const std::vector<FeatureEncoder>& encoders() const { return encoders_; }

    // Codon offset of feature i within an encoded sequence.
    std::size_t offset_of(std::size_t feature_index) const { return offsets_[feature_index]; }

    std::string serialize() const;

    void save(const std::string& path) const;
    static EncoderModel load(const std::string& path);
    static EncoderModel deserialize(std::string_view content,
                                    const std::string& origin = "<memory>");

private:
    std::string serialize_body() const;

    std::vector<FeatureEncoder> encoders_;
    std::vector<std::size_t> offsets_;
    std::size_t levels_ = kDefaultLevels;
    std::size_t total_length_ = 0;
    std::string fingerprint_;
};

// Span (offset, length) of one feature group within encoded sequences.
// Requires the group's features to be contiguous in the schema, so that a
// group signature is a literal substring of every full-record encoding.
std::pair<std::size_t, std::size_t> group_span(const EncoderModel& model,
                                               const RecordSchema& schema, FeatureGroup group);

} // namespace dnaids

#endif
