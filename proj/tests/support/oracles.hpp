// Independent reference implementations used to freeze expected values.
// Everything here deliberately avoids the library's own code paths.

#ifndef DNAIDS_TESTS_ORACLES_HPP
#define DNAIDS_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oracles {

// Base-4 digit of one nucleotide; independent of the library's tables.
inline int digit_of(char c) {
    const std::string alphabet = "ACGT";
    auto pos = alphabet.find(c);
    return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

// Renders value in base 4 by repeated division, then pads and reverses.
inline std::string codon_of(std::size_t value, std::size_t width) {
    const char* alphabet = "ACGT";
    std::string reversed;
    while (value > 0) {
        reversed += alphabet[value % 4];
        value /= 4;
    }
    while (reversed.size() < width) reversed += 'A';
    return {reversed.rbegin(), reversed.rend()};
}

// Decodes a codon back to its level.
inline std::size_t level_of_codon(std::string_view codon) {
    std::size_t value = 0;
    for (char c : codon) value = value * 4 + static_cast<std::size_t>(digit_of(c));
    return value;
}

struct Match {
    std::uint32_t pattern_id = 0;
    std::size_t end = 0;

    bool operator==(const Match&) const = default;
    auto operator<=>(const Match&) const = default;
};

// Per-pattern position-by-position scan; the reference for the automaton.
inline std::vector<Match> naive_find_all(const std::vector<std::string>& patterns,
                                         std::string_view text) {
    std::vector<Match> out;
    for (std::size_t id = 0; id < patterns.size(); ++id) {
        const std::string& p = patterns[id];
        if (p.empty() || p.size() > text.size()) continue;
        for (std::size_t start = 0; start + p.size() <= text.size(); ++start) {
            if (text.compare(start, p.size(), p) == 0)
                out.push_back({static_cast<std::uint32_t>(id), start + p.size()});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Linear scan over (class_rank, id, sequence) signature tuples; the
// reference for exact-mode classification. Returns the winning id.
struct NaiveSignature {
    int class_rank = 0;  // position in the arbitration order
    std::uint32_t id = 0;
    std::string sequence;
};

inline std::optional<std::uint32_t> naive_exact_match(
    const std::vector<NaiveSignature>& signatures, std::string_view probe) {
    std::optional<std::uint32_t> best;
    int best_rank = 0;
    for (const auto& sig : signatures) {
        if (sig.sequence != probe) continue;
        if (!best || sig.class_rank < best_rank || (sig.class_rank == best_rank && sig.id < *best)) {
            best = sig.id;
            best_rank = sig.class_rank;
        }
    }
    return best;
}

// Positionwise |w(a)-w(b)| sum over a four-entry weight map.
inline double naive_weight_distance(std::string_view a, std::string_view b,
                                    const double weights[4]) {
    double sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ai = weights[digit_of(a[i])];
        const double bi = weights[digit_of(b[i])];
        sum += ai >= bi ? ai - bi : bi - ai;
    }
    return sum;
}

} // namespace oracles

#endif
