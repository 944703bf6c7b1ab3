#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qfc/term.hpp"

namespace qfc {

// Exhaustive contract checks behind the demo subcommands; the acceptance
// suite runs the same code.
struct CheckResult {
  std::size_t cases = 0;
  std::size_t failures = 0;
  double max_deviation = 0.0;

  bool pass() const { return failures == 0; }
  void fold(bool ok, double dev);
};

using RowSink = std::function<void(const std::string&)>;

CheckResult check_epr(double tol = 1e-12);
CheckResult check_bin_search(std::size_t k, double tol = 1e-9, const RowSink& row = nullptr);
CheckResult check_parity(std::size_t n, double tol = 1e-9, const RowSink& row = nullptr);
CheckResult check_majority(std::size_t k, double eps, double tol = 1e-9,
                           const RowSink& row = nullptr);
// One pass over all inputs checking the probability bound plus the promise
// bound for every listed epsilon; parallelized with a deterministic fold.
CheckResult check_majority_sweep(std::size_t k, const std::vector<double>& eps_list,
                                 double tol = 1e-9, const RowSink& row = nullptr);
CheckResult check_scheme_recursion_example(double tol = 1e-12);

// The worked fast-recursion example term (t=1, r0=1, h moving the marker).
TermPtr example_recursion_term();

}  // namespace qfc
