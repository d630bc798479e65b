#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hyperbasis::text {

// Shortest round-trip representation; locale independent.
std::string format_double(double value);

std::string_view trim(std::string_view s) noexcept;
std::vector<std::string_view> split(std::string_view s, char sep);
std::string lower(std::string_view s);

// Whole-string parse; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

}  // namespace hyperbasis::text
