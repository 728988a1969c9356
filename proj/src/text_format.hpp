#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace erhoq {

// Shortest round-trip decimal form of a double, locale independent.  Every
// file this project writes goes through here so that fixed seeds give
// byte-identical output.
std::string format_double(double value);

std::string format_int(std::int64_t value);

// Strict parsers: the whole token must be consumed.
bool parse_double(std::string_view token, double& out);
bool parse_int(std::string_view token, std::int64_t& out);

// FNV-1a 64-bit, used to stamp result files with the population they came from.
std::uint64_t fnv1a64(std::string_view bytes);

std::string to_hex(std::uint64_t value);

}  // namespace erhoq
