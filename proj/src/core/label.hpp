#ifndef DNAIDS_CORE_LABEL_HPP
#define DNAIDS_CORE_LABEL_HPP

#include <array>
#include <string>
#include <string_view>

namespace dnaids {

// Connection outcome classes. The integer values are part of the C API.
enum class LabelClass : int {
    Normal = 0,
    Dos = 1,
    Probe = 2,
    R2l = 3,
    U2r = 4,
};

constexpr std::array<LabelClass, 4> kAttackClasses = {
    LabelClass::Dos, LabelClass::Probe, LabelClass::R2l, LabelClass::U2r};

constexpr bool is_attack_class(LabelClass c) { return c != LabelClass::Normal; }

// Tie-break order between attack classes: DoS < Probe < R2L < U2R.
constexpr int attack_rank(LabelClass c) { return static_cast<int>(c); }

std::string_view class_name(LabelClass c);

// Parses "dos" / "probe" / "r2l" / "u2r" / "normal"; throws Error(Parse) otherwise.
LabelClass class_from_name(std::string_view name);

} // namespace dnaids

#endif
