#ifndef DNAIDS_CORE_WEIGHTS_HPP
#define DNAIDS_CORE_WEIGHTS_HPP

#include "core/nucleotide.hpp"

#include <array>
#include <string>
#include <vector>

namespace dnaids {

// Per-nucleotide comparison weights. Defaults are the relative frequencies
// of the letters a, c, g, t in English text. Construction enforces positive,
// pairwise-distinct values so that zero profile distance implies sequence
// equality.
class WeightTable {
public:
    WeightTable(double a, double c, double g, double t);

    static WeightTable defaults() { return {0.08167, 0.02782, 0.02015, 0.09056}; }

    // File with four lines A=<real> .. T=<real>, in any order, # comments.
    static WeightTable load(const std::string& path);

    double of_digit(int digit) const { return weights_[static_cast<std::size_t>(digit)]; }
    double of(char nucleotide) const { return weights_[static_cast<std::size_t>(nucleotide_digit(nucleotide))]; }
    const std::array<double, 4>& values() const { return weights_; }

private:
    std::array<double, 4> weights_;
};

// Elementwise map of a sequence to its per-position weights.
std::vector<double> weight_profile(std::string_view seq, const WeightTable& w);

// L1 distance between the weight profiles of two equal-length sequences.
// Throws Error(Contract) when lengths differ.
double weight_distance(std::string_view a, std::string_view b, const WeightTable& w);

} // namespace dnaids

#endif
