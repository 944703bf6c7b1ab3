#pragma once

#include <string>
#include <vector>

#include "qfc/term.hpp"

namespace qfc {

// Basic constructions (Schemes I-III).
TermPtr b_cnot();
TermPtr b_gps(Angle theta);
TermPtr b_wh();
TermPtr b_z1(Angle theta);
TermPtr b_zrot(Angle theta);
TermPtr b_c_rot(Angle theta);
TermPtr b_cphase(Angle theta);
TermPtr b_cswap();
TermPtr b_length_q(std::size_t k);
TermPtr b_swap_ij(std::size_t i, std::size_t j);
TermPtr b_skip(std::size_t k, TermPtr g);
TermPtr b_sec_swap(std::size_t width, std::size_t i, std::size_t j);
TermPtr b_sec_move(std::size_t width, std::size_t i, std::size_t j);
TermPtr b_copy(std::size_t k);
TermPtr b_g_and();
TermPtr b_g_or();
TermPtr b_compo_multi(std::vector<TermPtr> gs);
TermPtr b_branch_k(std::size_t k, std::vector<TermPtr> gs);  // 2^k terms, section-value order

// Code-region macros built on the fast recursion.
TermPtr b_size(std::string r0);
TermPtr b_code_lift(std::string r0, TermPtr g);
TermPtr b_fold_blocks(std::string r0, TermPtr h);
TermPtr b_multi_apply(std::vector<TermPtr> gs);
TermPtr b_clock_repeat(TermPtr g);

// Algorithms.
TermPtr b_bin_search();
TermPtr b_bit();
TermPtr b_index_superposition();
TermPtr b_majority(double eps);
TermPtr b_parity_dc();

// Resolves `(named <name> <args...>)`; throws term_error on unknown names or
// bad parameters.
TermPtr build_named(const std::string& name, const std::vector<NamedArg>& args);

}  // namespace qfc
