#ifndef DNAIDS_CORE_NUCLEOTIDE_HPP
#define DNAIDS_CORE_NUCLEOTIDE_HPP

#include <cstddef>
#include <string>
#include <string_view>

namespace dnaids {

// Record encodings are strings over {A,C,G,T} with digit values A=0, C=1,
// G=2, T=3.
using NucleotideSequence = std::string;

constexpr char kNucleotides[4] = {'A', 'C', 'G', 'T'};

constexpr int nucleotide_digit(char c) {
    switch (c) {
        case 'A': return 0;
        case 'C': return 1;
        case 'G': return 2;
        case 'T': return 3;
        default: return -1;
    }
}

constexpr bool is_nucleotide(char c) { return nucleotide_digit(c) >= 0; }

inline bool is_valid_sequence(std::string_view seq) {
    for (char c : seq)
        if (!is_nucleotide(c)) return false;
    return true;
}

// `value` written in base 4, most-significant digit first, zero-padded.
inline NucleotideSequence to_codon(std::size_t value, std::size_t width) {
    NucleotideSequence out(width, 'A');
    for (std::size_t i = width; i-- > 0;) {
        out[i] = kNucleotides[value & 0x3];
        value >>= 2;
    }
    return out;
}

} // namespace dnaids

#endif
