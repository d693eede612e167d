#ifndef DNAIDS_CORE_SIGNATURE_DB_HPP
#define DNAIDS_CORE_SIGNATURE_DB_HPP

#include "core/label.hpp"
#include "core/nucleotide.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dnaids {

struct Signature {
    std::uint32_t id = 0;            // dense, assigned in first-seen order
    LabelClass cls = LabelClass::Dos;
    NucleotideSequence sequence;
    std::uint64_t support = 1;       // training records that produced it
};

enum class ConflictPolicy { DropConflicts, KeepConflicts };

std::string_view policy_name(ConflictPolicy p);
ConflictPolicy policy_from_name(std::string_view name);

// Deduplicated attack-class-tagged sequences keyed to the encoder that
// produced them. Immutable after build/load; safe for concurrent reads.
class SignatureDatabase {
public:
    // One labelled training encoding. Normal entries never become signatures
    // but participate in conflict detection.
    using LabelledSequence = std::pair<NucleotideSequence, LabelClass>;

    static SignatureDatabase build(std::span<const LabelledSequence> encoded,
                                   std::string fingerprint,
                                   ConflictPolicy policy = ConflictPolicy::DropConflicts);

    static SignatureDatabase merge(const SignatureDatabase& a, const SignatureDatabase& b);

    void save(const std::string& path) const;
    static SignatureDatabase load(const std::string& path);
    std::string serialize() const;
    static SignatureDatabase deserialize(std::string_view content,
                                         const std::string& origin = "<memory>");

    const std::string& encoder_fingerprint() const { return fingerprint_; }
    ConflictPolicy policy() const { return policy_; }
    std::uint64_t conflict_count() const { return conflict_count_; }

    // Signatures in id order.
    const std::vector<Signature>& signatures() const { return signatures_; }
    std::size_t size() const { return signatures_.size(); }
    bool empty() const { return signatures_.empty(); }
    std::size_t count_for(LabelClass cls) const;

    // Length shared by all sequences; 0 for an empty database.
    std::size_t sequence_length() const { return sequence_length_; }

    bool operator==(const SignatureDatabase& other) const;

private:
    std::string fingerprint_;
    ConflictPolicy policy_ = ConflictPolicy::DropConflicts;
    std::uint64_t conflict_count_ = 0;
    std::vector<Signature> signatures_;
    std::size_t sequence_length_ = 0;
};

} // namespace dnaids

#endif
