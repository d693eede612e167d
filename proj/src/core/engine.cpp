#include "core/engine.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

namespace dnaids {

std::string_view mode_name(MatchMode m) {
    switch (m) {
        case MatchMode::Exact: return "exact";
        case MatchMode::Substring: return "substring";
        case MatchMode::Weighted: return "weighted";
    }
    raise(ErrorCode::Argument, "invalid match mode value");
}

MatchMode mode_from_name(std::string_view name) {
    if (name == "exact") return MatchMode::Exact;
    if (name == "substring") return MatchMode::Substring;
    if (name == "weighted") return MatchMode::Weighted;
    raise(ErrorCode::Parse, "unknown match mode: " + std::string(name));
}

MatchEngine MatchEngine::build(const SignatureDatabase& db, DetectionConfig config) {
    if (config.tau < 0 || !std::isfinite(config.tau))
        raise(ErrorCode::Argument, "tau must be a finite non-negative real");
    {
        std::array<bool, 5> seen{};
        for (LabelClass cls : config.class_priority) {
            if (!is_attack_class(cls) || seen[static_cast<std::size_t>(cls)])
                raise(ErrorCode::Argument,
                      "class priority must be a permutation of the four attack classes");
            seen[static_cast<std::size_t>(cls)] = true;
        }
    }

    MatchEngine engine;
    engine.config_ = std::move(config);
    engine.fingerprint_ = db.encoder_fingerprint();
    engine.signatures_ = db.signatures();
    engine.sequence_length_ = db.sequence_length();

    for (const auto& sig : engine.signatures_) {
        engine.exact_index_[sig.sequence].push_back(sig.id);
        engine.automaton_.add(sig.sequence, sig.id);
    }
    engine.automaton_.build();

    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            engine.digit_gap_[a][b] = std::abs(engine.config_.weights.of_digit(static_cast<int>(a)) -
                                               engine.config_.weights.of_digit(static_cast<int>(b)));

    engine.digit_rows_.reserve(engine.signatures_.size());
    for (const auto& sig : engine.signatures_) {
        std::vector<std::uint8_t> row;
        row.reserve(sig.sequence.size());
        for (char c : sig.sequence) row.push_back(static_cast<std::uint8_t>(nucleotide_digit(c)));
        engine.digit_rows_.push_back(std::move(row));
    }

    engine.priority_order_.resize(engine.signatures_.size());
    for (std::size_t i = 0; i < engine.priority_order_.size(); ++i)
        engine.priority_order_[i] = static_cast<std::uint32_t>(i);
    std::sort(engine.priority_order_.begin(), engine.priority_order_.end(),
              [&](std::uint32_t a, std::uint32_t b) { return engine.better_candidate(a, b); });
    return engine;
}

int MatchEngine::priority_rank(LabelClass cls) const {
    for (std::size_t i = 0; i < config_.class_priority.size(); ++i)
        if (config_.class_priority[i] == cls) return static_cast<int>(i);
    return 4;
}

bool MatchEngine::better_candidate(std::uint32_t lhs, std::uint32_t rhs) const {
    const int rl = priority_rank(signatures_[lhs].cls);
    const int rr = priority_rank(signatures_[rhs].cls);
    if (rl != rr) return rl < rr;
    return lhs < rhs;
}

Verdict MatchEngine::classify(std::string_view seq, std::size_t source_index,
                              std::size_t unknown_count) const {
    Verdict v;
    v.source_index = source_index;
    v.unknown_count = unknown_count;
    if (signatures_.empty()) return v;

    switch (config_.mode) {
        case MatchMode::Exact: v = exact_verdict(seq); break;
        case MatchMode::Substring: v = substring_verdict(seq); break;
        case MatchMode::Weighted: v = weighted_verdict(seq); break;
    }
    v.source_index = source_index;
    v.unknown_count = unknown_count;
    return v;
}

Verdict MatchEngine::exact_verdict(std::string_view seq) const {
    if (seq.size() != sequence_length_)
        raise(ErrorCode::Contract, "length mismatch: query is " + std::to_string(seq.size()) +
                                       ", signatures are " + std::to_string(sequence_length_));
    Verdict v;
    auto it = exact_index_.find(seq);
    if (it == exact_index_.end()) return v;

    std::uint32_t best = it->second.front();
    for (std::uint32_t id : it->second)
        if (better_candidate(id, best)) best = id;
    v.attack = true;
    v.cls = signatures_[best].cls;
    v.signature_id = best;
    return v;
}

Verdict MatchEngine::substring_verdict(std::string_view seq) const {
    Verdict v;
    bool found = false;
    std::uint32_t best = 0;
    automaton_.scan(seq, [&](std::uint32_t id, std::size_t) {
        if (!found || better_candidate(id, best)) {
            best = id;
            found = true;
        }
    });
    if (!found) return v;
    v.attack = true;
    v.cls = signatures_[best].cls;
    v.signature_id = best;
    return v;
}

Verdict MatchEngine::weighted_verdict(std::string_view seq) const {
    if (seq.size() != sequence_length_)
        raise(ErrorCode::Contract, "length mismatch: query is " + std::to_string(seq.size()) +
                                       ", signatures are " + std::to_string(sequence_length_));

    std::vector<std::uint8_t> probe;
    probe.reserve(seq.size());
    for (char c : seq) {
        const int digit = nucleotide_digit(c);
        if (digit < 0) raise(ErrorCode::Contract, "query contains non-ACGT character");
        probe.push_back(static_cast<std::uint8_t>(digit));
    }

    // Signatures are visited in arbitration order, so the first signature
    // reaching the minimum is the tie-break winner; later candidates may be
    // abandoned as soon as their partial sum reaches the current best.
    double best_dist = std::numeric_limits<double>::infinity();
    std::uint32_t best = 0;
    bool found = false;
    for (std::uint32_t id : priority_order_) {
        const auto& row = digit_rows_[id];
        double dist = 0;
        bool abandoned = false;
        for (std::size_t i = 0; i < probe.size(); ++i) {
            dist += digit_gap_[probe[i]][row[i]];
            if (dist >= best_dist) {
                abandoned = true;
                break;
            }
        }
        if (!abandoned && (!found || dist < best_dist)) {
            best_dist = dist;
            best = id;
            found = true;
        }
    }

    Verdict v;
    v.score = best_dist;
    if (best_dist <= config_.tau) {
        v.attack = true;
        v.cls = signatures_[best].cls;
        v.signature_id = best;
    }
    return v;
}

std::vector<Verdict> detect(const Dataset& dataset, const EncoderModel& model,
                            const MatchEngine& engine, unsigned workers) {
    if (model.fingerprint() != engine.encoder_fingerprint())
        raise(ErrorCode::Fingerprint,
              "encoder fingerprint " + model.fingerprint() +
                  " does not match the engine's database (" + engine.encoder_fingerprint() + ")");

    const std::size_t n = dataset.size();
    std::vector<Verdict> out(n);
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));

    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto& rec = dataset[i];
            EncodeResult enc = model.encode(rec);
            out[i] = engine.classify(enc.sequence, rec.source_index, enc.unknown_count);
        }
    };

    if (workers <= 1) {
        run_range(0, n);
        return out;
    }

    std::vector<std::thread> threads;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = std::min<std::size_t>(n, w * chunk);
        const std::size_t end = std::min<std::size_t>(n, begin + chunk);
        if (begin == end) continue;
        threads.emplace_back([&, begin, end] {
            try {
                run_range(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

} // namespace dnaids
