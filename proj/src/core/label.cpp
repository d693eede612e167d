#include "core/label.hpp"

#include "core/errors.hpp"

namespace dnaids {

std::string_view class_name(LabelClass c) {
    switch (c) {
        case LabelClass::Normal: return "normal";
        case LabelClass::Dos: return "dos";
        case LabelClass::Probe: return "probe";
        case LabelClass::R2l: return "r2l";
        case LabelClass::U2r: return "u2r";
    }
    raise(ErrorCode::Argument, "invalid label class value");
}

LabelClass class_from_name(std::string_view name) {
    if (name == "normal") return LabelClass::Normal;
    if (name == "dos") return LabelClass::Dos;
    if (name == "probe") return LabelClass::Probe;
    if (name == "r2l") return LabelClass::R2l;
    if (name == "u2r") return LabelClass::U2r;
    raise(ErrorCode::Parse, "unknown class name: " + std::string(name));
}

} // namespace dnaids
