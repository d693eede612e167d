#ifndef DNAIDS_CORE_ENGINE_HPP
#define DNAIDS_CORE_ENGINE_HPP

#include "core/aho_corasick.hpp"
#include "core/dataset.hpp"
#include "core/encoder.hpp"
#include "core/signature_db.hpp"
#include "core/weights.hpp"

#include <array>
#include <optional>
#include <unordered_map>
#include <vector>

namespace dnaids {

enum class MatchMode { Exact, Substring, Weighted };

std::string_view mode_name(MatchMode m);
MatchMode mode_from_name(std::string_view name);

struct DetectionConfig {
    MatchMode mode = MatchMode::Exact;
    double tau = 0;  // weighted-mode attack threshold
    // Arbitration order for multi-class hits and distance ties.
    std::array<LabelClass, 4> class_priority = {LabelClass::Dos, LabelClass::Probe,
                                                LabelClass::R2l, LabelClass::U2r};
    WeightTable weights = WeightTable::defaults();
};

struct Verdict {
    std::size_t source_index = 0;
    bool attack = false;
    LabelClass cls = LabelClass::Normal;           // attack class when attack
    std::optional<std::uint32_t> signature_id;     // present iff attack
    double score = 0;                              // weight distance in weighted mode
    std::size_t unknown_count = 0;                 // carried from encoding
};

// Immutable query structure over one signature database: exact hash index,
// substring automaton and weight index. Safe for concurrent classify calls.
class MatchEngine {
public:
    static MatchEngine build(const SignatureDatabase& db, DetectionConfig config);

    Verdict classify(std::string_view seq, std::size_t source_index = 0,
                     std::size_t unknown_count = 0) const;

    const DetectionConfig& config() const { return config_; }
    const std::string& encoder_fingerprint() const { return fingerprint_; }
    std::size_t signature_count() const { return signatures_.size(); }
    std::size_t sequence_length() const { return sequence_length_; }
    bool empty() const { return signatures_.empty(); }

private:
    MatchEngine() = default;

    // Rank in the configured class priority; lower wins ties.
    int priority_rank(LabelClass cls) const;
    bool better_candidate(std::uint32_t lhs, std::uint32_t rhs) const;

    Verdict exact_verdict(std::string_view seq) const;
    Verdict substring_verdict(std::string_view seq) const;
    Verdict weighted_verdict(std::string_view seq) const;

    struct SeqHash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const {
            return std::hash<std::string_view>{}(s);
        }
    };

    DetectionConfig config_;
    std::string fingerprint_;
    std::vector<Signature> signatures_;  // id order
    std::size_t sequence_length_ = 0;

    std::unordered_map<std::string, std::vector<std::uint32_t>, SeqHash, std::equal_to<>>
        exact_index_;
    AhoCorasick automaton_;
    std::vector<std::uint32_t> priority_order_;        // signature ids, priority order
    std::array<std::array<double, 4>, 4> digit_gap_{}; // |w(a) - w(b)| lookup
    std::vector<std::vector<std::uint8_t>> digit_rows_; // per-signature digit arrays
};

// Encodes every record and classifies it, preserving input order. Workers > 1
// fan records out across threads; the verdict sequence is identical for any
// worker count. Throws Error(Fingerprint) when the model does not match the
// engine before any record is processed.
std::vector<Verdict> detect(const Dataset& dataset, const EncoderModel& model,
                            const MatchEngine& engine, unsigned workers = 1);

} // namespace dnaids

#endif
