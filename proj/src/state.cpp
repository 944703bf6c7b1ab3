#include "qfc/state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace qfc {

std::size_t ilog2_ceil(std::size_t n) {
  if (n <= 1) return 0;
  std::size_t k = 0, p = 1;
  while (p < n) {
    p *= 2;
    ++k;
  }
  return k;
}

HalfLengths half_lengths(std::size_t n) {
  return HalfLengths{(n + 1) / 2, n / 2, ilog2_ceil(n)};
}

static void check_bits(std::string_view bits) {
  for (char c : bits)
    if (c != '0' && c != '1') throw std::invalid_argument("basis string must be over {0,1}");
}

State State::scalar(cplx a) {
  if (a == cplx{0.0, 0.0}) return State();
  State s;
  s.null_ = false;
  s.length_ = 0;
  s.amps_.emplace("", a);
  return s;
}

State State::basis(std::string_view bits) {
  check_bits(bits);
  State s;
  s.null_ = false;
  s.length_ = bits.size();
  s.amps_.emplace(std::string(bits), cplx{1.0, 0.0});
  return s;
}

State State::zeros(std::size_t n) { return basis(std::string(n, '0')); }

State State::from_map(std::size_t n, Map m) {
  for (auto it = m.begin(); it != m.end();) {
    if (it->first.size() != n) throw std::invalid_argument("key length mismatch in from_map");
    if (it->second == cplx{0.0, 0.0})
      it = m.erase(it);
    else
      ++it;
  }
  if (m.empty()) return State();
  State s;
  s.null_ = false;
  s.length_ = n;
  s.amps_ = std::move(m);
  return s;
}

cplx State::amplitude(std::string_view bits) const {
  if (null_) return {0.0, 0.0};
  auto it = amps_.find(std::string(bits));
  return it == amps_.end() ? cplx{0.0, 0.0} : it->second;
}

cplx State::scalar_value() const {
  if (null_) return {0.0, 0.0};
  if (length_ != 0) throw std::logic_error("scalar_value on a state of positive length");
  return amplitude("");
}

double State::norm() const {
  double sq = 0.0;
  for (const auto& [k, a] : amps_) sq += std::norm(a);
  return std::sqrt(sq);
}

State State::scaled(cplx a) const {
  if (null_ || a == cplx{0.0, 0.0}) return State();
  State s;
  s.null_ = false;
  s.length_ = length_;
  for (const auto& [k, v] : amps_) s.amps_.emplace(k, v * a);
  return s;
}

void State::add(std::string_view bits, cplx a) {
  if (a == cplx{0.0, 0.0}) return;
  if (null_) {
    check_bits(bits);
    null_ = false;
    length_ = bits.size();
  } else if (bits.size() != length_) {
    throw std::logic_error("length mismatch in State::add");
  }
  auto [it, inserted] = amps_.emplace(std::string(bits), a);
  if (!inserted) {
    it->second += a;
    if (it->second == cplx{0.0, 0.0}) amps_.erase(it);
  }
  if (amps_.empty()) {
    null_ = true;
    length_ = 0;
  }
}

void State::add(const State& other, cplx scale) {
  for (const auto& [k, a] : other.amps_) add(k, a * scale);
}

bool State::operator==(const State& other) const {
  if (null_ != other.null_) return false;
  if (null_) return true;
  return length_ == other.length_ && amps_ == other.amps_;
}

State tensor(const State& a, const State& b) {
  if (a.is_null() || b.is_null()) return State();
  State::Map m;
  for (const auto& [ka, va] : a.amplitudes())
    for (const auto& [kb, vb] : b.amplitudes()) {
      cplx v = va * vb;
      if (v != cplx{0.0, 0.0}) {
        auto [it, inserted] = m.emplace(ka + kb, v);
        if (!inserted) it->second += v;
      }
    }
  return State::from_map(a.length() + b.length(), std::move(m));
}

State bra_reduce(std::string_view u, const State& phi) {
  if (phi.is_null() || u.size() > phi.length()) return State();
  State::Map m;
  for (const auto& [k, a] : phi.amplitudes()) {
    if (std::string_view(k).substr(0, u.size()) == u) {
      auto [it, inserted] = m.emplace(k.substr(u.size()), a);
      if (!inserted) it->second += a;
    }
  }
  return State::from_map(phi.length() - u.size(), std::move(m));
}

State inner(const State& xi, const State& phi) {
  if (xi.is_null()) throw std::invalid_argument("inner: bra side must be proper");
  if (phi.is_null()) return State();
  State out;
  for (const auto& [u, b] : xi.amplitudes()) out.add(bra_reduce(u, phi), std::conj(b));
  return out;
}

double norm(const State& phi) { return phi.norm(); }

std::string half_swap_bits(std::string_view bits, bool inverse) {
  std::size_t split = inverse ? bits.size() / 2 : (bits.size() + 1) / 2;
  return std::string(bits.substr(split)) + std::string(bits.substr(0, split));
}

State half_swap(const State& phi, bool inverse) {
  if (phi.is_null() || phi.length() <= 1) return phi;
  State::Map m;
  for (const auto& [k, a] : phi.amplitudes()) m.emplace(half_swap_bits(k, inverse), a);
  return State::from_map(phi.length(), std::move(m));
}

double distance(const State& a, const State& b) {
  double sq = 0.0;
  for (const auto& [k, v] : a.amplitudes()) sq += std::norm(v - b.amplitude(k));
  for (const auto& [k, v] : b.amplitudes())
    if (a.amplitude(k) == cplx{0.0, 0.0}) sq += std::norm(v);
  return std::sqrt(sq);
}

static std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_state(std::ostream& os, const State& s) {
  if (s.is_null()) {
    os << "null\n";
    return;
  }
  os << "length " << s.length() << "\n";
  for (const auto& [k, a] : s.amplitudes())
    os << (k.empty() ? "-" : k) << " " << fmt_double(a.real()) << " " << fmt_double(a.imag())
       << "\n";
}

State read_state(std::istream& is) {
  std::string line;
  do {
    if (!std::getline(is, line)) throw state_format_error("empty state file");
  } while (line.find_first_not_of(" \t\r") == std::string::npos);

  std::istringstream head(line);
  std::string word;
  head >> word;
  if (word == "null") return State();
  if (word != "length") throw state_format_error("expected 'length <n>' or 'null'");
  long long n = -1;
  if (!(head >> n) || n < 0) throw state_format_error("bad length");

  State::Map m;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string bits;
    if (!(ls >> bits)) continue;  // blank line
    if (bits == "-") bits.clear();
    if ((long long)bits.size() != n) throw state_format_error("bitstring of wrong length: " + bits);
    check_bits(bits);
    std::string re, im;
    if (!(ls >> re >> im)) throw state_format_error("expected '<bits> <re> <im>'");
    char* end = nullptr;
    double r = std::strtod(re.c_str(), &end);
    if (end == re.c_str() || *end) throw state_format_error("bad real part: " + re);
    double i = std::strtod(im.c_str(), &end);
    if (end == im.c_str() || *end) throw state_format_error("bad imaginary part: " + im);
    auto [it, inserted] = m.emplace(bits, cplx{r, i});
    if (!inserted) it->second += cplx{r, i};
  }
  return State::from_map((std::size_t)n, std::move(m));
}

}  // namespace qfc
