#include "core/aho_corasick.hpp"

#include "core/errors.hpp"

#include <queue>

namespace dnaids {

void AhoCorasick::add(std::string_view pattern, std::uint32_t id) {
    if (built_) raise(ErrorCode::Contract, "automaton is already built");
    if (pattern.empty()) raise(ErrorCode::Argument, "empty pattern");

    std::int32_t state = 0;
    for (char c : pattern) {
        const int digit = nucleotide_digit(c);
        if (digit < 0)
            raise(ErrorCode::Parse, "pattern contains non-ACGT character: '" +
                                        std::string(1, c) + "'");
        std::int32_t next = nodes_[static_cast<std::size_t>(state)].next[static_cast<std::size_t>(digit)];
        if (next == -1) {
            next = static_cast<std::int32_t>(nodes_.size());
            nodes_.emplace_back();  // may reallocate; re-index afterwards
            nodes_[static_cast<std::size_t>(state)].next[static_cast<std::size_t>(digit)] = next;
        }
        state = next;
    }
    nodes_[static_cast<std::size_t>(state)].ends_here.push_back(id);
    ++added_;
}

void AhoCorasick::build() {
    if (built_) raise(ErrorCode::Contract, "automaton is already built");

    // BFS over the trie: fill failure links and complete the transition
    // table so that scanning is one table lookup per character.
    std::queue<std::int32_t> queue;
    for (std::size_t d = 0; d < 4; ++d) {
        auto& slot = nodes_[0].next[d];
        if (slot == -1) {
            slot = 0;
        } else {
            nodes_[static_cast<std::size_t>(slot)].fail = 0;
            queue.push(slot);
        }
    }

    while (!queue.empty()) {
        const std::int32_t r = queue.front();
        queue.pop();
        Node& node = nodes_[static_cast<std::size_t>(r)];
        const std::int32_t fail = node.fail;
        node.output_link = nodes_[static_cast<std::size_t>(fail)].ends_here.empty()
                               ? nodes_[static_cast<std::size_t>(fail)].output_link
                               : fail;
        for (std::size_t d = 0; d < 4; ++d) {
            const std::int32_t next = node.next[d];
            if (next == -1) {
                node.next[d] = nodes_[static_cast<std::size_t>(fail)].next[d];
            } else {
                nodes_[static_cast<std::size_t>(next)].fail =
                    nodes_[static_cast<std::size_t>(fail)].next[d];
                queue.push(next);
            }
        }
    }
    built_ = true;
}

void AhoCorasick::ensure_built() const {
    if (!built_) raise(ErrorCode::Contract, "automaton is not built");
}

std::vector<AhoCorasick::Occurrence> AhoCorasick::find_all(std::string_view text) const {
    std::vector<Occurrence> out;
    scan(text, [&](std::uint32_t id, std::size_t end) { out.push_back({id, end}); });
    return out;
}

bool AhoCorasick::any_match(std::string_view text) const {
    if (added_ == 0) return false;
    ensure_built();
    std::int32_t state = 0;
    for (char c : text) {
        const int digit = nucleotide_digit(c);
        if (digit < 0) {
            state = 0;
            continue;
        }
        state = nodes_[static_cast<std::size_t>(state)].next[static_cast<std::size_t>(digit)];
        const Node& cur = nodes_[static_cast<std::size_t>(state)];
        if (!cur.ends_here.empty() || cur.output_link != -1) return true;
    }
    return false;
}

} // namespace dnaids
