#include "core/weights.hpp"

#include "core/errors.hpp"
#include "core/text.hpp"

#include <cmath>
#include <fstream>

namespace dnaids {

WeightTable::WeightTable(double a, double c, double g, double t) : weights_{a, c, g, t} {
    for (double w : weights_) {
        if (!std::isfinite(w) || w <= 0)
            raise(ErrorCode::Argument, "nucleotide weights must be positive finite reals");
    }
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (weights_[i] == weights_[j])
                raise(ErrorCode::Argument, "nucleotide weights must be pairwise distinct");
        }
    }
}

WeightTable WeightTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::Io, "cannot open weight table file: " + path);

    std::array<double, 4> values{};
    std::array<bool, 4> seen{};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        chomp_cr(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.size() < 3 || line[1] != '=' || nucleotide_digit(line[0]) < 0)
            raise(ErrorCode::Parse, path + ":" + std::to_string(line_no) +
                                        ": expected A=<real> .. T=<real>");
        const auto digit = static_cast<std::size_t>(nucleotide_digit(line[0]));
        double v = 0;
        if (!parse_double(std::string_view(line).substr(2), v))
            raise(ErrorCode::Parse, path + ":" + std::to_string(line_no) + ": bad weight value");
        if (seen[digit])
            raise(ErrorCode::Parse, path + ":" + std::to_string(line_no) +
                                        ": duplicate weight for " + std::string(1, line[0]));
        values[digit] = v;
        seen[digit] = true;
    }
    for (bool s : seen)
        if (!s) raise(ErrorCode::Parse, path + ": weight table must define A, C, G and T");
    try {
        return {values[0], values[1], values[2], values[3]};
    } catch (const Error& e) {
        raise(ErrorCode::Parse, path + ": " + e.what());
    }
}

std::vector<double> weight_profile(std::string_view seq, const WeightTable& w) {
    std::vector<double> out;
    out.reserve(seq.size());
    for (char c : seq) {
        const int digit = nucleotide_digit(c);
        if (digit < 0)
            raise(ErrorCode::Contract, "sequence contains non-ACGT character");
        out.push_back(w.of_digit(digit));
    }
    return out;
}

double weight_distance(std::string_view a, std::string_view b, const WeightTable& w) {
    if (a.size() != b.size())
        raise(ErrorCode::Contract, "length mismatch: " + std::to_string(a.size()) + " vs " +
                                       std::to_string(b.size()));
    double sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int da = nucleotide_digit(a[i]);
        const int db = nucleotide_digit(b[i]);
        if (da < 0 || db < 0)
            raise(ErrorCode::Contract, "sequence contains non-ACGT character");
        sum += std::abs(w.of_digit(da) - w.of_digit(db));
    }
    return sum;
}

} // namespace dnaids
