#ifndef DNAIDS_CORE_AHO_CORASICK_HPP
#define DNAIDS_CORE_AHO_CORASICK_HPP

#include "core/nucleotide.hpp"

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace dnaids {

// Multi-pattern matcher over the 4-letter nucleotide alphabet with goto,
// failure and output links. Patterns are added by integer id, then build()
// freezes the automaton; one pass over a text reports every occurrence of
// every pattern.
class AhoCorasick {
public:
    struct Occurrence {
        std::uint32_t pattern_id = 0;
        std::size_t end = 0;  // index one past the last matched character

        bool operator==(const Occurrence&) const = default;
    };

    // Empty patterns are rejected; duplicate patterns are allowed and each
    // id is reported separately.
    void add(std::string_view pattern, std::uint32_t id);
    void build();

    bool built() const { return built_; }
    std::size_t pattern_count() const { return added_; }

    // Invokes on_match(pattern_id, end) for every occurrence, in text order.
    // Characters outside {A,C,G,T} match nothing and reset the scan.
    template <typename Fn>
    void scan(std::string_view text, Fn&& on_match) const;

    std::vector<Occurrence> find_all(std::string_view text) const;

    bool any_match(std::string_view text) const;

private:
    struct Node {
        std::array<std::int32_t, 4> next{{-1, -1, -1, -1}};
        std::int32_t fail = 0;
        std::int32_t output_link = -1;  // nearest proper suffix state ending a pattern
        std::vector<std::uint32_t> ends_here;
    };

    void ensure_built() const;

    std::vector<Node> nodes_{1};
    std::size_t added_ = 0;
    bool built_ = false;
};

template <typename Fn>
void AhoCorasick::scan(std::string_view text, Fn&& on_match) const {
    if (added_ == 0) return;
    ensure_built();
    std::int32_t state = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const int digit = nucleotide_digit(text[i]);
        if (digit < 0) {
            state = 0;
            continue;
        }
        state = nodes_[static_cast<std::size_t>(state)].next[static_cast<std::size_t>(digit)];
        const Node& cur = nodes_[static_cast<std::size_t>(state)];
        for (std::uint32_t id : cur.ends_here) on_match(id, i + 1);
        for (std::int32_t s = cur.output_link; s != -1;
             s = nodes_[static_cast<std::size_t>(s)].output_link) {
            for (std::uint32_t id : nodes_[static_cast<std::size_t>(s)].ends_here)
                on_match(id, i + 1);
        }
    }
}

} // namespace dnaids

#endif
