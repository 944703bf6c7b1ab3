#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qfc {

using cplx = std::complex<double>;

struct HalfLengths {
  std::size_t lh;    // ceil(n/2)
  std::size_t rh;    // floor(n/2)
  std::size_t ilog;  // ceil(log2 n), ilog(0) = 0
};

HalfLengths half_lengths(std::size_t n);
std::size_t ilog2_ceil(std::size_t n);

// Sparse quantum state over basis strings of a single length.
// Either the null vector (no amplitudes, length 0 by convention) or a
// length-n amplitude map; n == 0 is a scalar whose single key is "".
// Exact-zero amplitudes are dropped on insertion; a state whose amplitudes
// all cancel collapses to null.
class State {
 public:
  using Map = std::map<std::string, cplx>;

  State() = default;  // null

  static State null() { return State(); }
  static State scalar(cplx a);
  static State basis(std::string_view bits);
  static State zeros(std::size_t n);
  static State from_map(std::size_t n, Map m);

  bool is_null() const { return null_; }
  bool is_scalar() const { return !null_ && length_ == 0; }
  std::size_t length() const { return null_ ? 0 : length_; }

  const Map& amplitudes() const { return amps_; }
  cplx amplitude(std::string_view bits) const;
  cplx scalar_value() const;  // value of a length-0 state; null reads as 0

  double norm() const;
  State scaled(cplx a) const;

  // Accumulates a*|bits> into this state; grows a null state to length
  // |bits|. Entries that cancel to exactly zero are erased.
  void add(std::string_view bits, cplx a);
  void add(const State& other, cplx scale = 1.0);

  bool operator==(const State& other) const;

 private:
  bool null_ = true;
  std::size_t length_ = 0;
  Map amps_;
};

State tensor(const State& a, const State& b);

// <u|phi>: drops a basis prefix. Longer u than phi (or null phi) gives null;
// equal lengths give a scalar.
State bra_reduce(std::string_view u, const State& phi);

// <xi|phi> = sum_u conj(xi_u) <u|phi>; xi must be proper.
State inner(const State& xi, const State& phi);

double norm(const State& phi);

// Moves the front ceil(n/2) qubits to the back (floor(n/2) for the inverse
// split); identity for lengths <= 1.
State half_swap(const State& phi, bool inverse = false);
std::string half_swap_bits(std::string_view bits, bool inverse = false);

double distance(const State& a, const State& b);  // l2 over the union support

// Text format: "null", or "length <n>" followed by "<bits> <re> <im>" lines.
// The empty bitstring of a scalar is written as "-". 17 significant digits.
void write_state(std::ostream& os, const State& s);
State read_state(std::istream& is);

struct state_format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qfc
