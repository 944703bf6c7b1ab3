#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qfc/state.hpp"

namespace qfc {
namespace codec {

// Fixed 3-bit symbol codes.
inline constexpr std::string_view HAT_0 = "000";
inline constexpr std::string_view HAT_1 = "001";
inline constexpr std::string_view HAT_B = "010";
inline constexpr std::string_view HAT_END = "011";   // the end-of-code mark
inline constexpr std::string_view HAT_2 = "111";     // the canonical separator
inline constexpr std::string_view HAT_H = "100";
inline constexpr std::string_view HAT_S = "110";
inline constexpr std::string_view HAT_T = "101";

struct codec_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Symbols are the characters 0 1 2 B H S T and '|' for the ending mark.
std::string hat_encode(char symbol);
char hat_decode(std::string_view code);

// Per-bit hat codes followed by the ending mark; with_end=false gives the
// bare form. tilde("") is just the ending mark.
std::string tilde_encode(std::string_view bits, bool with_end = true);
std::string tilde_decode(std::string_view code);  // inverse of the with_end form

// Lexicographic enumeration lambda,0,1,00,01,... bin(0) is the empty string.
std::string bin(unsigned long long n);
// The n-th string of {0,1}^k, n in [1, 2^k].
std::string bin_k(std::size_t k, unsigned long long n);
unsigned long long bin_k_index(std::string_view bits);  // inverse of bin_k

// Code/data split of a basis string relative to a separator section.
struct CodeView {
  std::string x;     // whole sections before the first r0 section (may be empty)
  std::string data;  // suffix after that section (any length)
};

// Scans |r0|-wide sections left to right; the first section equal to r0
// splits the string. No such section (including ragged tails) parses as none.
std::optional<CodeView> parse_code(std::string_view y, std::string_view r0);

// Code prefixes of the basis strings with nonzero amplitude.
std::set<std::string> non_set(const State& phi, std::string_view r0);

}  // namespace codec
}  // namespace qfc
