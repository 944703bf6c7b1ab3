#include "qfc/builders.hpp"

#include <cstdlib>

#include "qfc/codec.hpp"

namespace qfc {

namespace {

TermPtr compose(std::vector<TermPtr> chain) {
  // chain applied right to left, Compo[g,h] = g after h
  if (chain.empty()) return t_ident();
  TermPtr out = chain.back();
  for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) out = t_compo(*it, out);
  return out;
}

// MOVE_{i,j}: brings qubit j to position i, shifting i..j-1 one to the right.
TermPtr move_ij(std::size_t i, std::size_t j) {
  std::vector<TermPtr> chain;
  for (std::size_t a = i; a < j; ++a) chain.push_back(b_swap_ij(a, a + 1));
  // rightmost applied first: SWAP_{j-1,j}, ..., SWAP_{i,i+1}
  return compose(std::move(chain));
}

TermPtr move_ij_inv(std::size_t i, std::size_t j) {
  std::vector<TermPtr> chain;
  for (std::size_t a = j; a-- > i;) chain.push_back(b_swap_ij(a, a + 1));
  return compose(std::move(chain));
}

}  // namespace

TermPtr b_cnot() { return t_branch(t_ident(), t_not()); }

TermPtr b_gps(Angle theta) {
  // e^{i theta} on every component: PHASE after NOT, twice
  return compose({t_phase(theta), t_not(), t_phase(theta), t_not()});
}

TermPtr b_wh() { return t_compo(t_rot(Angle::pi_frac(1, 4)), t_phase(Angle::pi_frac(1, 1))); }

TermPtr b_z1(Angle theta) { return t_compo(b_gps(theta), t_phase(theta.negated())); }

TermPtr b_zrot(Angle theta) {
  Angle twice = theta.exact ? Angle::pi_frac(-2 * theta.num, theta.den) : Angle::of(-2 * theta.value);
  return t_compo(b_gps(theta), t_phase(twice));
}

TermPtr b_c_rot(Angle theta) { return t_branch(t_ident(), t_rot(theta)); }

TermPtr b_cphase(Angle theta) { return t_branch(t_ident(), t_phase(theta)); }

TermPtr b_cswap() { return t_branch(t_ident(), t_swap()); }

TermPtr b_length_q(std::size_t k) {
  if (k < 1) throw term_error("length_q: k must be >= 1");
  // flips the first qubit iff at least k qubits follow it
  TermPtr out = t_not();
  for (std::size_t i = 0; i < k; ++i) out = compose({t_swap(), b_skip(1, out), t_swap()});
  return out;
}

TermPtr b_swap_ij(std::size_t i, std::size_t j) {
  if (i < 1 || i >= j) throw term_error("swap_ij: needs 1 <= i < j");
  if (i == 1 && j == 2) return t_swap();
  if (i == 1) {
    if (j == i + 1) return t_swap();
    return t_compo(move_ij(1, j), move_ij_inv(1, j - 1));
  }
  return b_skip(i - 1, b_swap_ij(1, j - i + 1));
}

TermPtr b_skip(std::size_t k, TermPtr g) {
  if (k < 1) throw term_error("skip: k must be >= 1");
  TermPtr out = std::move(g);
  for (std::size_t i = 0; i < k; ++i) out = t_branch(out, out);
  return out;
}

TermPtr b_sec_swap(std::size_t width, std::size_t i, std::size_t j) {
  if (width < 1) throw term_error("sec_swap: width must be >= 1");
  if (i < 1 || i >= j) throw term_error("sec_swap: needs 1 <= i < j");
  std::size_t ik = (i - 1) * width, jk = (j - 1) * width;
  std::vector<TermPtr> chain;
  for (std::size_t c = 1; c <= width; ++c) chain.push_back(b_swap_ij(ik + c, jk + c));
  return compose(std::move(chain));
}

TermPtr b_sec_move(std::size_t width, std::size_t i, std::size_t j) {
  if (i < 1 || i >= j) throw term_error("sec_move: needs 1 <= i < j");
  std::vector<TermPtr> chain;
  for (std::size_t a = j; a-- > i;) chain.push_back(b_sec_swap(width, a, a + 1));
  // rightmost applied first: SecSWAP_{i,i+1} up to SecSWAP_{j-1,j}
  return compose(std::move(chain));
}

TermPtr b_copy(std::size_t k) {
  if (k < 1) throw term_error("copy: k must be >= 1");
  TermPtr copy1 = compose({t_swap(), b_cnot(), t_swap()});
  if (k == 1) return copy1;
  TermPtr inner = b_copy(k - 1);
  return compose({move_ij_inv(2, k + 1), b_skip(2, inner), copy1, move_ij(2, k + 1)});
}

TermPtr b_g_or() { return compose({b_swap_ij(1, 3), b_cswap(), b_copy(1)}); }

TermPtr b_g_and() { return compose({b_swap_ij(1, 3), b_swap_ij(2, 3), b_cswap(), b_copy(1)}); }

TermPtr b_compo_multi(std::vector<TermPtr> gs) {
  if (gs.empty()) throw term_error("compo_multi: needs at least one term");
  return compose(std::move(gs));
}

TermPtr b_branch_k(std::size_t k, std::vector<TermPtr> gs) {
  if (k < 1 || k > 16) throw term_error("branch_k: k out of range");
  if (gs.size() != (std::size_t(1) << k)) throw term_error("branch_k: needs 2^k terms");
  if (k == 1) return t_branch(gs[0], gs[1]);
  std::size_t half = gs.size() / 2;
  std::vector<TermPtr> lo(gs.begin(), gs.begin() + half), hi(gs.begin() + half, gs.end());
  return t_branch(b_branch_k(k - 1, std::move(lo)), b_branch_k(k - 1, std::move(hi)));
}

namespace {

std::vector<PSel> p_all_ident(std::size_t width) {
  return std::vector<PSel>(std::size_t(1) << width, PSel::Ident);
}

std::vector<FSel> f_all(std::size_t width, FSel v) {
  return std::vector<FSel>(std::size_t(1) << width, v);
}

}  // namespace

TermPtr b_size(std::string r0) {
  if (r0.find('1') == std::string::npos)
    throw term_error("size: separator must contain a 1");
  const std::size_t width = r0.size();
  // turns the leading zero section into r0 once the data is exhausted
  std::vector<TermPtr> xor_chain;
  for (std::size_t c = 0; c < width; ++c)
    if (r0[c] == '1') xor_chain.push_back(c == 0 ? t_not() : b_skip(c, t_not()));
  TermPtr g = compose(std::move(xor_chain));
  auto f = f_all(width, FSel::Ident);
  f[0] = FSel::SelfRef;  // recurse only through the all-zero section
  return t_cfqrec(1, std::move(r0), t_ident(), g, t_ident(), p_all_ident(width), f);
}

TermPtr b_code_lift(std::string r0, TermPtr g) {
  if (contains_meas(*g)) throw term_error("code_lift: g must be measurement-free");
  TermPtr h = t_compo(g, b_skip(r0.size(), invert(*g)));
  return t_cfqrec(1, r0, t_ident(), g, h, p_all_ident(r0.size()), f_all(r0.size(), FSel::SelfRef));
}

TermPtr b_fold_blocks(std::string r0, TermPtr h) {
  return t_cfqrec(1, r0, t_ident(), t_ident(), std::move(h), p_all_ident(r0.size()),
                  f_all(r0.size(), FSel::SelfRef));
}

TermPtr b_multi_apply(std::vector<TermPtr> gs) {
  if (gs.empty()) throw term_error("multi_apply: needs at least one term");
  const std::string sep(codec::HAT_2), end(codec::HAT_END), smark(codec::HAT_S);
  // G_[k,k] = CodeSKIP+[^2, g_k, I]; G_[i,k] = CodeSKIP+[-|, g_i, G_[i+1,k]]
  TermPtr nest = t_codeskip(true, sep, gs.back(), t_ident());
  for (std::size_t i = gs.size() - 1; i-- > 0;) nest = t_codeskip(true, end, gs[i], nest);
  std::vector<TermPtr> branch(8, t_ident());
  branch[codec::bin_k_index(smark) - 1] = nest;
  TermPtr h = b_branch_k(3, std::move(branch));
  return b_fold_blocks(sep, h);
}

TermPtr b_clock_repeat(TermPtr g) {
  const std::string sep(codec::HAT_2), smark(codec::HAT_S), tmark(codec::HAT_T);
  std::vector<TermPtr> branch(8, t_ident());
  branch[codec::bin_k_index(tmark) - 1] = t_codeskip(true, smark, t_ident(), std::move(g));
  return b_fold_blocks(sep, b_branch_k(3, std::move(branch)));
}

namespace {

// The 10-qubit base gadget of the search theorems: with the layout
// |sec1 sec2 sep s> it XORs qubit 6 with qubit 10.
TermPtr search_base_gadget() {
  return compose({b_swap_ij(7, 10), b_skip(5, b_copy(1)), b_swap_ij(7, 10)});
}

std::vector<PSel> search_p() {
  std::vector<PSel> p(8, PSel::Ident);
  p[codec::bin_k_index(codec::HAT_1) - 1] = PSel::HalfSwap;  // descend into the right half
  return p;
}

}  // namespace

TermPtr b_bin_search() {
  return t_cfqrec(1, std::string(codec::HAT_2), t_ident(), search_base_gadget(), t_ident(),
                  search_p(), f_all(3, FSel::SelfRef));
}

TermPtr b_bit() {
  // Steering sections sit third in the code block; d rotates the next index
  // section to the front and h puts it back on the way out.
  TermPtr rotate_back = b_sec_move(3, 1, 3);
  TermPtr d = invert(*rotate_back);
  std::vector<FSel> f(8, FSel::Ident);
  f[codec::bin_k_index(codec::HAT_0) - 1] = FSel::SelfRef;
  f[codec::bin_k_index(codec::HAT_1) - 1] = FSel::SelfRef;
  return t_cfqrec(1, std::string(codec::HAT_END), d, search_base_gadget(), rotate_back,
                  search_p(), std::move(f));
}

TermPtr b_index_superposition() {
  std::vector<TermPtr> branch(4, t_ident());
  branch[0] = b_wh();  // only the 00-prefixed (hat-zero) sections spread
  return b_fold_blocks(std::string(codec::HAT_END), b_branch_k(2, std::move(branch)));
}

TermPtr b_majority(double eps) {
  if (eps < 0.0 || eps >= 0.75) throw term_error("majority: eps must lie in [0, 3/4)");
  TermPtr g = b_index_superposition();
  return compose({move_ij(1, 6), b_skip(6, invert(*g)), b_bit(), b_skip(6, g)});
}

TermPtr b_parity_dc() {
  TermPtr h0 = compose({t_swap(), b_cnot(), t_swap()});
  return t_divconq(1, t_ident(), h0, t_ident(), FSel::SelfRef, FSel::SelfRef);
}

// --- named resolution -------------------------------------------------------

namespace {

struct ArgReader {
  const std::string& name;
  const std::vector<NamedArg>& args;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) { throw term_error(name + ": " + msg); }

  bool done() const { return pos >= args.size(); }

  const NamedArg& next(const char* what) {
    if (done()) fail(std::string("missing ") + what);
    return args[pos++];
  }

  long long integer(const char* what) {
    const NamedArg& a = next(what);
    if (a.is_term) fail(std::string(what) + " must be an integer");
    char* end = nullptr;
    long long v = std::strtoll(a.atom.c_str(), &end, 10);
    if (end == a.atom.c_str() || *end) fail(std::string(what) + " must be an integer");
    return v;
  }

  std::string bits(const char* what) {
    const NamedArg& a = next(what);
    if (a.is_term || a.atom.empty()) fail(std::string(what) + " must be a bit string");
    for (char c : a.atom)
      if (c != '0' && c != '1') fail(std::string(what) + " must be a bit string");
    return a.atom;
  }

  double real(const char* what) {
    const NamedArg& a = next(what);
    if (a.is_term) fail(std::string(what) + " must be a number");
    char* end = nullptr;
    double v = std::strtod(a.atom.c_str(), &end);
    if (end == a.atom.c_str() || *end) fail(std::string(what) + " must be a number");
    return v;
  }

  Angle angle(const char* what) {
    const NamedArg& a = next(what);
    if (a.is_term) fail(std::string(what) + " must be an angle");
    // reuse the term grammar for angle atoms
    TermPtr probe;
    try {
      probe = parse_term("(phase " + a.atom + ")");
    } catch (const std::exception&) {
      fail(std::string(what) + " must be an angle");
    }
    return probe->theta;
  }

  TermPtr term(const char* what) {
    const NamedArg& a = next(what);
    if (!a.is_term) fail(std::string(what) + " must be a term");
    return a.term;
  }

  std::vector<TermPtr> terms(const char* what) {
    std::vector<TermPtr> out;
    while (!done()) out.push_back(term(what));
    return out;
  }

  void finish() {
    if (!done()) fail("too many arguments");
  }
};

}  // namespace

TermPtr build_named(const std::string& name, const std::vector<NamedArg>& args) {
  ArgReader r{name, args};
  TermPtr out;
  if (name == "cnot") out = b_cnot();
  else if (name == "gps") out = b_gps(r.angle("theta"));
  else if (name == "wh") out = b_wh();
  else if (name == "z1") out = b_z1(r.angle("theta"));
  else if (name == "zrot") out = b_zrot(r.angle("theta"));
  else if (name == "c_rot") out = b_c_rot(r.angle("theta"));
  else if (name == "cphase") out = b_cphase(r.angle("theta"));
  else if (name == "cswap") out = b_cswap();
  else if (name == "length_q") out = b_length_q((std::size_t)r.integer("k"));
  else if (name == "swap_ij") {
    auto i = r.integer("i"), j = r.integer("j");
    out = b_swap_ij((std::size_t)i, (std::size_t)j);
  } else if (name == "skip") {
    auto k = r.integer("k");
    out = b_skip((std::size_t)k, r.term("g"));
  } else if (name == "sec_swap") {
    auto w = r.integer("width");
    auto i = r.integer("i"), j = r.integer("j");
    out = b_sec_swap((std::size_t)w, (std::size_t)i, (std::size_t)j);
  } else if (name == "sec_move") {
    auto w = r.integer("width");
    auto i = r.integer("i"), j = r.integer("j");
    out = b_sec_move((std::size_t)w, (std::size_t)i, (std::size_t)j);
  } else if (name == "copy") out = b_copy((std::size_t)r.integer("k"));
  else if (name == "g_and") out = b_g_and();
  else if (name == "g_or") out = b_g_or();
  else if (name == "compo_multi") out = b_compo_multi(r.terms("g"));
  else if (name == "branch_k") {
    auto k = r.integer("k");
    out = b_branch_k((std::size_t)k, r.terms("g"));
  } else if (name == "size") out = b_size(r.bits("r0"));
  else if (name == "code_lift") {
    auto r0 = r.bits("r0");
    out = b_code_lift(r0, r.term("g"));
  } else if (name == "fold_blocks") {
    auto r0 = r.bits("r0");
    out = b_fold_blocks(r0, r.term("h"));
  } else if (name == "multi_apply") out = b_multi_apply(r.terms("g"));
  else if (name == "clock_repeat") out = b_clock_repeat(r.term("g"));
  else if (name == "bin_search") out = b_bin_search();
  else if (name == "bit") out = b_bit();
  else if (name == "index_superposition") out = b_index_superposition();
  else if (name == "majority") out = b_majority(r.real("eps"));
  else if (name == "parity_dc") out = b_parity_dc();
  else throw term_error("unknown builder '" + name + "'");
  r.finish();
  return out;
}

}  // namespace qfc
