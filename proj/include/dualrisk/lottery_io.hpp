#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dualrisk/lottery.hpp"

namespace dualrisk {

// Text format, one state per line:
//
//   # comment
//   <outcome> <probability>
//
// Numbers are decimals or `p/q` literals. Blank lines and anything after `#`
// are ignored. Errors carry the offending line number.

Lottery parse_lottery(std::string_view text);
Lottery read_lottery_file(const std::filesystem::path& path);

/// Inverse of parse_lottery; rationals are written as `p/q`.
std::string format_lottery(const Lottery& lottery, std::string_view header = {});

}  // namespace dualrisk
