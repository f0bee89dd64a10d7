#pragma once

// Canonical text forms.  Numbers are written with 17 significant digits via
// std::to_chars, so parsing a written value reproduces it bit for bit and the
// output never depends on the C locale.

#include <string>
#include <string_view>

#include "dvflow/types.hpp"

namespace dvflow {

std::string format_double(double value);
/// Strict decimal parse of the whole token; throws Error(parse).
double parse_double(std::string_view text);
int parse_int(std::string_view text);

std::string serialize(const ConstitutiveLaw& law);
ConstitutiveLaw parse_law(std::string_view text);

std::string serialize(const FluidState& state);
FluidState parse_state(std::string_view text);

}  // namespace dvflow
