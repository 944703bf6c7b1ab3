#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qfc/eval.hpp"
#include "qfc/term.hpp"

namespace qfc {

// Dense operator extracted column by column; column j is the image of the
// j-th basis ket (lexicographic order).
struct OperatorMatrix {
  std::size_t n = 0;
  std::vector<std::vector<cplx>> entries;  // entries[row][col]

  std::size_t dim() const { return entries.size(); }
};

struct UnitaryCheck {
  bool pass;
  double max_deviation;  // max-norm of M^dagger M - I
};

// Caps at n <= 12; throws eval_error("dimension-changed") when a column has
// the wrong length.
OperatorMatrix to_matrix(const Term& t, std::size_t n, const EvalConfig& cfg = {});
inline OperatorMatrix to_matrix(const TermPtr& t, std::size_t n, const EvalConfig& cfg = {}) {
  return to_matrix(*t, n, cfg);
}

UnitaryCheck check_unitary(const OperatorMatrix& m, double tol);

OperatorMatrix matmul(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix adjoint(const OperatorMatrix& m);
double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b);
std::vector<cplx> apply(const OperatorMatrix& m, const std::vector<cplx>& v);
std::vector<cplx> dense(const State& s, std::size_t n);

// Classical reference functions.
int classical_parity(std::string_view x);
int classical_or(std::string_view x);
int classical_and(std::string_view x);
std::pair<std::size_t, std::size_t> majority_count(std::string_view x);  // (#0, #1)

// Deterministic term fuzzing. Terms respect every scheme restriction; with
// measurement_free set, the corpus stays inside the unitary fragment.
struct FuzzOptions {
  std::size_t max_depth = 6;
  bool measurement_free = true;
};

std::vector<TermPtr> fuzz_terms(std::uint64_t seed, std::size_t count,
                                const FuzzOptions& opts = {});

// Random states for differential testing: unit norm, bounded sparse support.
State random_state(std::uint64_t seed, std::size_t length, std::size_t max_terms = 16);

}  // namespace qfc
