#pragma once

#include <cstdint>
#include <string_view>

#include "eqbase/term.hpp"

namespace eqbase {

enum class Comparison : std::uint8_t { Greater, Less, Equal, Incomparable };

std::string_view to_string(Comparison c);

/// Knuth-Bendix order: every symbol and variable weighs 1, precedence
/// ' > * > constants (constants ordered by name).
Comparison kbo_compare(const Term& s, const Term& t);
bool kbo_greater(const Term& s, const Term& t);

}  // namespace eqbase
