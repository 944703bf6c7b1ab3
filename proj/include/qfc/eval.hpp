#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "qfc/state.hpp"
#include "qfc/term.hpp"

namespace qfc {

struct EvalCache;

struct EvalConfig {
  double tolerance = 1e-9;            // d-output validation
  std::size_t max_recursion_depth = 64;
  EvalCache* cache = nullptr;  // optional memo for repeated basis-ket evaluations
};

// A cache is only safe to share between evaluations of live terms on one
// thread; sweeps over many inputs of the same term reuse sub-results.
std::shared_ptr<EvalCache> make_eval_cache();

struct eval_error : std::runtime_error {
  eval_error(std::string code_, const std::string& msg)
      : std::runtime_error(code_ + ": " + msg), code(std::move(code_)) {}
  std::string code;
};

State eval(const Term& t, const State& phi, const EvalConfig& cfg = {});
inline State eval(const TermPtr& t, const State& phi, const EvalConfig& cfg = {}) {
  return eval(*t, phi, cfg);
}

// ||<b|phi>||^2 / ||phi||^2; the unnormalized variant omits the division.
double measure_first_qubit(const State& phi, int b);
double measure_first_qubit_unnormalized(const State& phi, int b);

// Draws a basis string with probability |a|^2/||phi||^2; deterministic in the
// seed.
std::string sample(const State& phi, std::uint64_t seed);

}  // namespace qfc
