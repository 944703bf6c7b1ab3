#include "qfc/codec.hpp"

namespace qfc {
namespace codec {

std::string hat_encode(char symbol) {
  switch (symbol) {
    case '0': return std::string(HAT_0);
    case '1': return std::string(HAT_1);
    case 'B': return std::string(HAT_B);
    case '|': return std::string(HAT_END);
    case '2': return std::string(HAT_2);
    case 'H': return std::string(HAT_H);
    case 'S': return std::string(HAT_S);
    case 'T': return std::string(HAT_T);
    default: throw codec_error(std::string("unknown-symbol: ") + symbol);
  }
}

char hat_decode(std::string_view code) {
  if (code.size() != 3) throw codec_error("unknown-code: width must be 3");
  for (char c : code)
    if (c != '0' && c != '1') throw codec_error("unknown-code: not a bit string");
  static constexpr char table[8] = {'0', '1', 'B', '|', 'H', 'T', 'S', '2'};
  int v = (code[0] - '0') * 4 + (code[1] - '0') * 2 + (code[2] - '0');
  return table[v];
}

std::string tilde_encode(std::string_view bits, bool with_end) {
  std::string out;
  out.reserve(3 * bits.size() + 3);
  for (char c : bits) {
    if (c != '0' && c != '1') throw codec_error("tilde_encode: not a bit string");
    out += hat_encode(c);
  }
  if (with_end) out += HAT_END;
  return out;
}

std::string tilde_decode(std::string_view code) {
  if (code.size() < 3 || code.size() % 3 != 0)
    throw codec_error("tilde_decode: length must be a positive multiple of 3");
  if (code.substr(code.size() - 3) != HAT_END)
    throw codec_error("tilde_decode: missing ending mark");
  std::string out;
  for (std::size_t i = 0; i + 3 < code.size(); i += 3) {
    char sym = hat_decode(code.substr(i, 3));
    if (sym != '0' && sym != '1') throw codec_error("tilde_decode: non-bit symbol inside");
    out += sym;
  }
  return out;
}

std::string bin(unsigned long long n) {
  // Strings in lexicographic order: the n-th is (n+1)'s binary form minus
  // its leading 1.
  std::string out;
  unsigned long long v = n + 1;
  while (v > 1) {
    out.insert(out.begin(), char('0' + (v & 1)));
    v >>= 1;
  }
  return out;
}

std::string bin_k(std::size_t k, unsigned long long n) {
  if (n == 0) throw codec_error("undefined-index: bin_k(0) is not defined");
  if (k >= 64 || n > (1ULL << k)) throw codec_error("undefined-index: n out of [1, 2^k]");
  std::string out(k, '0');
  unsigned long long v = n - 1;
  for (std::size_t i = 0; i < k; ++i) {
    out[k - 1 - i] = char('0' + (v & 1));
    v >>= 1;
  }
  return out;
}

unsigned long long bin_k_index(std::string_view bits) {
  unsigned long long v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw codec_error("bin_k_index: not a bit string");
    v = v * 2 + (unsigned long long)(c - '0');
  }
  return v + 1;
}

std::optional<CodeView> parse_code(std::string_view y, std::string_view r0) {
  if (r0.empty()) throw codec_error("parse_code: empty separator");
  const std::size_t w = r0.size();
  for (std::size_t pos = 0; pos + w <= y.size(); pos += w) {
    if (y.substr(pos, w) == r0)
      return CodeView{std::string(y.substr(0, pos)), std::string(y.substr(pos + w))};
  }
  return std::nullopt;
}

std::set<std::string> non_set(const State& phi, std::string_view r0) {
  std::set<std::string> out;
  for (const auto& [y, a] : phi.amplitudes()) {
    auto cv = parse_code(y, r0);
    if (cv) out.insert(cv->x);
  }
  return out;
}

}  // namespace codec
}  // namespace qfc
