#include "core/signature_db.hpp"

#include "core/errors.hpp"
#include "core/text.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace dnaids {

std::string_view policy_name(ConflictPolicy p) {
    return p == ConflictPolicy::DropConflicts ? "drop_conflicts" : "keep_conflicts";
}

ConflictPolicy policy_from_name(std::string_view name) {
    if (name == "drop_conflicts") return ConflictPolicy::DropConflicts;
    if (name == "keep_conflicts") return ConflictPolicy::KeepConflicts;
    raise(ErrorCode::Parse, "unknown conflict policy: " + std::string(name));
}

SignatureDatabase SignatureDatabase::build(std::span<const LabelledSequence> encoded,
                                           std::string fingerprint, ConflictPolicy policy) {
    if (fingerprint.empty()) raise(ErrorCode::Argument, "empty encoder fingerprint");

    SignatureDatabase db;
    db.fingerprint_ = std::move(fingerprint);
    db.policy_ = policy;

    std::size_t length = 0;
    std::unordered_map<std::string, std::size_t> attack_index;  // class-tagged key -> slot
    std::unordered_set<std::string> normal_seen;

    struct Pending {
        LabelClass cls;
        NucleotideSequence seq;
        std::uint64_t support;
    };
    std::vector<Pending> pending;

    for (std::size_t i = 0; i < encoded.size(); ++i) {
        const auto& [seq, cls] = encoded[i];
        if (i == 0) {
            length = seq.size();
        } else if (seq.size() != length) {
            raise(ErrorCode::Contract,
                  "length mismatch at sequence " + std::to_string(i) + ": got " +
                      std::to_string(seq.size()) + ", want " + std::to_string(length));
        }
        if (seq.empty())
            raise(ErrorCode::Contract, "empty sequence at index " + std::to_string(i));
        if (!is_valid_sequence(seq))
            raise(ErrorCode::Contract,
                  "sequence " + std::to_string(i) + " contains non-ACGT characters");

        if (cls == LabelClass::Normal) {
            normal_seen.insert(seq);
            continue;
        }
        // Key sequences per class: the same pattern may be kept once per
        // attack class.
        std::string key = std::string(class_name(cls)) + ":" + seq;
        auto [it, inserted] = attack_index.emplace(std::move(key), pending.size());
        if (inserted)
            pending.push_back({cls, seq, 1});
        else
            ++pending[it->second].support;
    }

    std::unordered_set<std::string> conflicting;
    for (auto& entry : pending) {
        if (policy == ConflictPolicy::DropConflicts && normal_seen.count(entry.seq)) {
            conflicting.insert(entry.seq);
            continue;
        }
        Signature sig;
        sig.id = static_cast<std::uint32_t>(db.signatures_.size());
        sig.cls = entry.cls;
        sig.sequence = std::move(entry.seq);
        sig.support = entry.support;
        db.signatures_.push_back(std::move(sig));
    }
    db.conflict_count_ = conflicting.size();
    db.sequence_length_ = db.signatures_.empty() ? 0 : db.signatures_.front().sequence.size();
    return db;
}

SignatureDatabase SignatureDatabase::merge(const SignatureDatabase& a, const SignatureDatabase& b) {
    if (a.fingerprint_ != b.fingerprint_)
        raise(ErrorCode::Fingerprint, "cannot merge databases built under different encoders (" +
                                          a.fingerprint_ + " vs " + b.fingerprint_ + ")");
    if (!a.empty() && !b.empty() && a.sequence_length_ != b.sequence_length_)
        raise(ErrorCode::Contract, "cannot merge databases with different sequence lengths");

    SignatureDatabase out;
    out.fingerprint_ = a.fingerprint_;
    out.policy_ = a.policy_;
    out.conflict_count_ = a.conflict_count_ + b.conflict_count_;

    std::unordered_map<std::string, std::size_t> index;
    auto add = [&](const Signature& sig) {
        std::string key = std::string(class_name(sig.cls)) + ":" + sig.sequence;
        auto [it, inserted] = index.emplace(std::move(key), out.signatures_.size());
        if (inserted) {
            Signature copy = sig;
            copy.id = static_cast<std::uint32_t>(out.signatures_.size());
            out.signatures_.push_back(std::move(copy));
        } else {
            out.signatures_[it->second].support += sig.support;
        }
    };
    for (const auto& sig : a.signatures_) add(sig);
    for (const auto& sig : b.signatures_) add(sig);

    out.sequence_length_ = out.signatures_.empty() ? 0 : out.signatures_.front().sequence.size();
    return out;
}

std::size_t SignatureDatabase::count_for(LabelClass cls) const {
    return static_cast<std::size_t>(std::count_if(
        signatures_.begin(), signatures_.end(), [&](const Signature& s) { return s.cls == cls; }));
}

std::string SignatureDatabase::serialize() const {
    std::string out;
    out += "#IDSDB v1\n";
    out += "alphabet=ACGT\n";
    out += "encoder=" + fingerprint_ + "\n";
    out += "policy=" + std::string(policy_name(policy_)) + "\n";
    out += "conflicts=" + std::to_string(conflict_count_) + "\n";
    for (LabelClass cls : kAttackClasses) {
        for (const auto& sig : signatures_) {
            if (sig.cls != cls) continue;
            out += std::string(class_name(cls)) + "\t" + std::to_string(sig.id) + "\t" +
                   std::to_string(sig.support) + "\t" + sig.sequence + "\n";
        }
    }
    return out;
}

void SignatureDatabase::save(const std::string& path) const { write_file(path, serialize()); }

SignatureDatabase SignatureDatabase::load(const std::string& path) {
    return deserialize(read_file(path), path);
}

SignatureDatabase SignatureDatabase::deserialize(std::string_view content,
                                                 const std::string& origin) {
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

    if (!next_line() || line != "#IDSDB v1")
        raise(ErrorCode::Parse, origin + ": unsupported signature database version");
    if (!next_line() || line != "alphabet=ACGT")
        raise(ErrorCode::Parse, origin + ": unsupported alphabet");

    SignatureDatabase db;
    if (!next_line() || line.rfind("encoder=", 0) != 0) fail("expected encoder= line");
    db.fingerprint_ = line.substr(8);
    if (db.fingerprint_.size() != 16 ||
        db.fingerprint_.find_first_not_of("0123456789abcdef") != std::string::npos)
        fail("encoder fingerprint must be 16 lowercase hex digits");

    if (!next_line() || line.rfind("policy=", 0) != 0) fail("expected policy= line");
    try {
        db.policy_ = policy_from_name(std::string_view(line).substr(7));
    } catch (const Error& e) {
        fail(e.what());
    }

    if (!next_line() || line.rfind("conflicts=", 0) != 0) fail("expected conflicts= line");
    std::size_t conflicts = 0;
    if (!parse_size(std::string_view(line).substr(10), conflicts)) fail("bad conflicts value");
    db.conflict_count_ = conflicts;

    std::map<std::uint32_t, Signature> by_id;
    std::unordered_set<std::string> seen_keys;
    while (next_line()) {
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() != 4) fail("malformed signature line (want class\\tid\\tsupport\\tseq)");

        Signature sig;
        try {
            sig.cls = class_from_name(fields[0]);
        } catch (const Error& e) {
            fail(e.what());
        }
        if (sig.cls == LabelClass::Normal) fail("signature class must be an attack class");

        std::size_t id = 0;
        if (!parse_size(fields[1], id)) fail("bad signature id");
        sig.id = static_cast<std::uint32_t>(id);

        std::size_t support = 0;
        if (!parse_size(fields[2], support) || support == 0) fail("bad support count");
        sig.support = support;

        sig.sequence = std::string(fields[3]);
        if (sig.sequence.empty() || !is_valid_sequence(sig.sequence))
            fail("signature sequence must be a non-empty ACGT string");

        std::string key = std::string(class_name(sig.cls)) + ":" + sig.sequence;
        if (!seen_keys.insert(std::move(key)).second)
            fail("duplicate sequence within class " + std::string(class_name(sig.cls)));
        if (!by_id.emplace(sig.id, std::move(sig)).second) fail("duplicate signature id");
    }

    db.signatures_.reserve(by_id.size());
    for (auto& [id, sig] : by_id) {
        if (id != db.signatures_.size())
            raise(ErrorCode::Parse,
                  origin + ": signature ids must be dense integers starting at 0");
        db.signatures_.push_back(std::move(sig));
    }
    for (const auto& sig : db.signatures_) {
        if (sig.sequence.size() != db.signatures_.front().sequence.size())
            raise(ErrorCode::Parse, origin + ": signature sequences have mixed lengths");
    }
    db.sequence_length_ = db.signatures_.empty() ? 0 : db.signatures_.front().sequence.size();
    return db;
}

bool SignatureDatabase::operator==(const SignatureDatabase& other) const {
    if (fingerprint_ != other.fingerprint_ || policy_ != other.policy_ ||
        conflict_count_ != other.conflict_count_ || signatures_.size() != other.signatures_.size())
        return false;
    for (std::size_t i = 0; i < signatures_.size(); ++i) {
        const auto& a = signatures_[i];
        const auto& b = other.signatures_[i];
        if (a.id != b.id || a.cls != b.cls || a.sequence != b.sequence || a.support != b.support)
            return false;
    }
    return true;
}

} // namespace dnaids
