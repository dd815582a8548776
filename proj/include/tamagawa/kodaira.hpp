// SPDX-License-Identifier: MIT
/**
 * @file kodaira.hpp
 * @brief Kodaira symbols shared by the Tate algorithm and the density tables.
 */
#pragma once

#include <optional>
#include <string>

namespace tamagawa {

enum class Kodaira { I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };

constexpr int kKodairaCount = 10;

/// "I0", "In", "II", "III", "IV", "I0*", "In*", "IV*", "III*", "II*".
const char* kodaira_name(Kodaira k);
/// Inverse of kodaira_name; also accepts "I0star", "Instar", "IVstar", ...
std::optional<Kodaira> parse_kodaira(const std::string& s);
/// Human label with the family index filled in, e.g. "I5" or "I2*".
std::string kodaira_label(Kodaira k, int n);

/// epsilon(n) = ((-1)^n + 3)/2.
inline int epsilon(int n) { return n % 2 == 0 ? 2 : 1; }

}  // namespace tamagawa
