#include "qfc/eval.hpp"

#include <cmath>
#include <map>
#include <random>
#include <utility>

#include "qfc/codec.hpp"

namespace qfc {

// Memo for sweeps that evaluate one term over many inputs: per-basis results
// and structural inverses, keyed by node address (the cache must not outlive
// the terms it has seen).
struct EvalCache {
  std::map<std::pair<const Term*, std::string>, State> evals;
  std::map<const Term*, TermPtr> inverses;
};

std::shared_ptr<EvalCache> make_eval_cache() { return std::make_shared<EvalCache>(); }

namespace {

struct Ctx {
  const EvalConfig& cfg;
  std::size_t depth = 0;
};

State eval_node(const Term& t, const State& phi, Ctx cx);

Ctx deeper(Ctx cx) {
  if (cx.depth + 1 > cx.cfg.max_recursion_depth)
    throw eval_error("recursion-depth-exceeded",
                     "deeper than " + std::to_string(cx.cfg.max_recursion_depth) + " levels");
  return Ctx{cx.cfg, cx.depth + 1};
}

TermPtr cached_invert(const Term& t, Ctx cx) {
  if (EvalCache* c = cx.cfg.cache) {
    auto it = c->inverses.find(&t);
    if (it == c->inverses.end()) it = c->inverses.emplace(&t, invert(t)).first;
    return it->second;
  }
  return invert(t);
}

// Evaluation of a term on a single basis ket, memoized under a cache.
State eval_ket(const Term& t, const std::string& y, Ctx cx) {
  if (EvalCache* c = cx.cfg.cache) {
    auto key = std::make_pair(&t, y);
    auto it = c->evals.find(key);
    if (it != c->evals.end()) return it->second;
    State r = eval_node(t, State::basis(y), cx);
    c->evals.emplace(std::move(key), r);
    return r;
  }
  return eval_node(t, State::basis(y), cx);
}

// Exact values at quarter turns keep the permutation-flavoured constructions
// bit-stable; everything else falls back to floating point.
cplx phase_factor(const Angle& a) {
  if (a.exact) {
    long long period = 2 * a.den;
    long long q = ((a.num % period) + period) % period;
    if (q == 0) return {1.0, 0.0};
    if (2 * q == a.den) return {0.0, 1.0};
    if (q == a.den) return {-1.0, 0.0};
    if (2 * q == 3 * a.den) return {0.0, -1.0};
  }
  return std::exp(cplx{0.0, a.value});
}

std::pair<double, double> rot_cos_sin(const Angle& a) {
  if (a.exact) {
    long long period = 2 * a.den;
    long long q = ((a.num % period) + period) % period;
    if (q == 0) return {1.0, 0.0};
    if (2 * q == a.den) return {0.0, 1.0};
    if (q == a.den) return {-1.0, 0.0};
    if (2 * q == 3 * a.den) return {0.0, -1.0};
  }
  return {std::cos(a.value), std::sin(a.value)};
}

// --- initial functions; all act on the first one or two qubits -------------

State eval_phase(const Angle& theta, const State& phi) {
  if (phi.length() == 0) return phi;
  cplx w = phase_factor(theta);
  State::Map m;
  for (const auto& [y, a] : phi.amplitudes()) m.emplace(y, y[0] == '1' ? a * w : a);
  return State::from_map(phi.length(), std::move(m));
}

State eval_rot(const Angle& theta, const State& phi) {
  if (phi.length() == 0) return phi;
  auto [c, s] = rot_cos_sin(theta);
  State out;
  for (const auto& [y, a] : phi.amplitudes()) {
    std::string flip = y;
    flip[0] = y[0] == '0' ? '1' : '0';
    if (y[0] == '0') {
      out.add(y, a * c);
      out.add(flip, a * s);
    } else {
      out.add(y, a * c);
      out.add(flip, -a * s);
    }
  }
  return out;
}

State eval_not(const State& phi) {
  if (phi.length() == 0) return phi;
  State::Map m;
  for (const auto& [y, a] : phi.amplitudes()) {
    std::string flip = y;
    flip[0] = y[0] == '0' ? '1' : '0';
    m.emplace(std::move(flip), a);
  }
  return State::from_map(phi.length(), std::move(m));
}

State eval_swap(const State& phi) {
  if (phi.length() <= 1) return phi;
  State::Map m;
  for (const auto& [y, a] : phi.amplitudes()) {
    std::string z = y;
    std::swap(z[0], z[1]);
    m.emplace(std::move(z), a);
  }
  return State::from_map(phi.length(), std::move(m));
}

State eval_meas(int bit, const State& phi) {
  if (phi.length() == 0) return phi;
  char want = char('0' + bit);
  State::Map m;
  for (const auto& [y, a] : phi.amplitudes())
    if (y[0] == want) m.emplace(y, a);
  return State::from_map(phi.length(), std::move(m));
}

State eval_branch(const Term& g, const Term& h, const State& phi, Ctx cx) {
  if (phi.length() <= 1) return phi;
  State out;
  State s0 = eval_node(g, bra_reduce("0", phi), cx);
  State s1 = eval_node(h, bra_reduce("1", phi), cx);
  out.add(tensor(State::basis("0"), s0));
  out.add(tensor(State::basis("1"), s1));
  return out;
}

// --- code-controlled constructors; per basis string, linearly extended -----

// Exchange of qubits i and j (1-based); identity beyond the string.
void exchange_bits(std::string& y, std::size_t i, std::size_t j) {
  if (i == j) return;
  if (i > j) std::swap(i, j);
  if (j > y.size()) return;
  std::swap(y[i - 1], y[j - 1]);
}

std::string mid_swap(std::string y, std::size_t k, bool inverse) {
  std::size_t m = (y.size() + 1) / 2;
  if (!inverse) {
    for (std::size_t i = 1; i <= k; ++i) exchange_bits(y, k + i, m + i);
  } else {
    for (std::size_t i = k; i >= 1; --i) exchange_bits(y, k + i, m + i);
  }
  return y;
}

struct DKet {
  std::string ket;  // x' r0
  cplx phase;
};

// d must send the code ket to a phase times a single well-formed code ket.
DKet apply_d(const Term& d, const std::string& code_ket, const std::string& r0, Ctx cx) {
  State out = eval_ket(d, code_ket, cx);
  if (out.is_null() || out.length() != code_ket.size())
    throw eval_error("invalid-permutation-d", "d changed the code dimension");
  const std::string* best = nullptr;
  cplx phase;
  double rest_sq = 0.0;
  for (const auto& [y, a] : out.amplitudes()) {
    if (best == nullptr || std::abs(a) > std::abs(phase)) {
      if (best) rest_sq += std::norm(phase);
      best = &y;
      phase = a;
    } else {
      rest_sq += std::norm(a);
    }
  }
  double tol = cx.cfg.tolerance;
  if (best == nullptr || std::abs(std::abs(phase) - 1.0) > tol || std::sqrt(rest_sq) > tol)
    throw eval_error("invalid-permutation-d", "d output is not a phase times a basis ket");
  auto cv = codec::parse_code(*best, r0);
  if (!cv || !cv->data.empty() || cv->x.empty())
    throw eval_error("invalid-permutation-d", "d output " + *best + " is not a code ket");
  return DKet{*best, phase};
}

State eval_cfqrec_basis(const Term& t, const std::string& y, Ctx cx);
State eval_cfqrec_inv_basis(const Term& t, const std::string& y, Ctx cx);
State eval_divconq(const Term& t, const State& phi, Ctx cx, bool inverse);

State per_basis(const Term& t, const State& phi, Ctx cx,
                State (*f)(const Term&, const std::string&, Ctx)) {
  State out;
  EvalCache* c = cx.cfg.cache;
  for (const auto& [y, a] : phi.amplitudes()) {
    if (c) {
      auto key = std::make_pair(&t, y);
      auto it = c->evals.find(key);
      if (it == c->evals.end()) it = c->evals.emplace(std::move(key), f(t, y, cx)).first;
      out.add(it->second, a);
    } else {
      out.add(f(t, y, cx), a);
    }
  }
  return out;
}

// Scheme IV on one basis string.
State eval_cfqrec_basis(const Term& t, const std::string& y, Ctx cx) {
  auto cv = codec::parse_code(y, t.r0);
  if (!cv) return State::basis(y);
  const std::string& x = cv->x;
  const std::string& w = cv->data;

  if (x.empty() || w.size() <= t.t) return eval_ket(*t.b, y, cx);

  const std::size_t width = t.r0.size();
  DKet d = apply_d(*t.a, x + t.r0, t.r0, cx);
  std::string u = d.ket.substr(0, width);
  std::size_t usel = (std::size_t)codec::bin_k_index(u) - 1;
  PSel pu = t.p[usel];
  FSel fu = t.f[usel];

  HalfLengths hl = half_lengths(w.size());
  std::size_t m = pu == PSel::Ident ? hl.lh : hl.rh;
  std::string wp = pu == PSel::HalfSwap ? half_swap_bits(w) : w;
  std::string s_star = wp.substr(0, m);
  std::string tail = wp.substr(m);

  std::string inner_ket = d.ket.substr(width) + s_star;  // rest of x' with r0, then s
  State zeta_code = fu == FSel::SelfRef
                        ? per_basis(t, State::basis(inner_ket), deeper(cx), &eval_cfqrec_basis)
                        : State::basis(inner_ket);

  State out;
  const std::size_t xlen = x.size();
  for (const auto& [z, az] : zeta_code.amplitudes()) {
    std::string v = z.substr(0, xlen);
    std::string rest = z.substr(xlen) + tail;
    if (pu == PSel::HalfSwap) rest = half_swap_bits(rest, /*inverse=*/true);
    State h_out = eval_ket(*t.c, u + v, cx);
    out.add(tensor(h_out, State::basis(rest)), az * d.phase);
  }
  return out;
}

// Inverse of Scheme IV: undo h on the code block, then unwind the recursion
// with d^-1, g^-1 and the original p selections.
State eval_cfqrec_inv_basis(const Term& t, const std::string& y, Ctx cx) {
  auto cv = codec::parse_code(y, t.r0);
  if (!cv) return State::basis(y);
  const std::string& x = cv->x;
  const std::string& w = cv->data;

  if (x.empty() || w.size() <= t.t) {
    TermPtr g_inv = cached_invert(*t.b, cx);
    return eval_ket(*g_inv, y, cx);
  }

  const std::size_t width = t.r0.size();
  const std::size_t xlen = x.size();

  TermPtr h_inv = cached_invert(*t.c, cx);
  State code_restored = eval_ket(*h_inv, x + t.r0, cx);
  if (code_restored.is_null() || code_restored.length() != xlen + width)
    throw eval_error("invalid-permutation-d", "inverse of h changed the code dimension");

  TermPtr d_inv = cached_invert(*t.a, cx);
  State out;
  for (const auto& [uv, a_uv] : code_restored.amplitudes()) {
    std::string u = uv.substr(0, width);
    if (u == t.r0) continue;  // cannot arise from a forward application
    std::size_t usel = (std::size_t)codec::bin_k_index(u) - 1;
    PSel pu = t.p[usel];
    FSel fu = t.f[usel];

    HalfLengths hl = half_lengths(w.size());
    std::size_t m = pu == PSel::Ident ? hl.lh : hl.rh;

    std::string dprime = pu == PSel::HalfSwap ? half_swap_bits(w) : w;  // undo p_u^-1
    std::string v = uv.substr(width);
    std::string z = v + dprime.substr(0, m);  // a zeta-code basis string
    std::string tail = dprime.substr(m);

    State rec = fu == FSel::SelfRef
                    ? per_basis(t, State::basis(z), deeper(cx), &eval_cfqrec_inv_basis)
                    : State::basis(z);

    for (const auto& [rho, a_rho] : rec.amplitudes()) {
      std::string code_part = rho.substr(0, xlen);  // rest of x' followed by r0
      std::string s_rec = rho.substr(xlen);
      DKet dinv = apply_d(*d_inv, u + code_part, t.r0, cx);
      std::string w_rec = s_rec + tail;
      if (pu == PSel::HalfSwap) w_rec = half_swap_bits(w_rec, /*inverse=*/true);
      out.add(dinv.ket + w_rec, a_uv * a_rho * dinv.phase);
    }
  }
  return out;
}

State eval_lcompo_basis(const Term& t, const std::string& y, Ctx cx) {
  auto cv = codec::parse_code(y, t.r0);
  if (!cv) return State::basis(y);
  std::size_t n = cv->data.size();
  std::size_t k = ilog2_ceil(n);
  if (cv->x.empty() || n <= 1 || cv->x.size() > t.r0.size() * k) return State::basis(y);
  State cur = State::basis(y);
  for (std::size_t i = 0; i < k; ++i) cur = eval_node(*t.a, cur, cx);
  return cur;
}

State eval_codeskip_basis(const Term& t, const std::string& y, Ctx cx) {
  auto cv = codec::parse_code(y, t.r0);
  if (!cv) return State::basis(y);
  State g_out, h_out;
  if (t.kind == TermKind::CodeSkipPlus) {
    g_out = eval_ket(*t.a, cv->x + t.r0, cx);
    h_out = eval_ket(*t.b, cv->data, cx);
  } else {
    g_out = eval_ket(*t.a, cv->x, cx);
    h_out = eval_ket(*t.b, t.r0 + cv->data, cx);
  }
  return tensor(g_out, h_out);
}

State eval_coderemove_basis(const Term& t, const std::string& y, Ctx) {
  auto cv = codec::parse_code(y, t.r0);
  if (!cv || cv->x.empty()) return State::basis(y);
  std::string z = cv->x.substr(1) + cv->x.substr(0, 1) + t.r0 + cv->data;
  return State::basis(z);
}

State eval_coderep_basis(const Term& t, const std::string& y, Ctx) {
  auto cv = codec::parse_code(y, t.r0);
  if (!cv || cv->x.empty()) return State::basis(y);
  std::string z = cv->x.substr(cv->x.size() - 1) + cv->x.substr(0, cv->x.size() - 1) + t.r0 +
                  cv->data;
  return State::basis(z);
}

State eval_codectrl_basis(const Term& t, const std::string& y, Ctx cx) {
  auto cv = codec::parse_code(y, t.r0);
  if (!cv) return State::basis(y);
  std::size_t n = cv->data.size();
  if (cv->x.size() <= 2 || n <= 1 || cv->x.size() > t.r0.size() * ilog2_ceil(n))
    return State::basis(y);
  return tensor(eval_ket(*t.a, cv->x + t.r0, cx), State::basis(cv->data));
}

State eval_halfd(const Term& g, const Term& h, const State& phi, Ctx cx) {
  if (phi.length() <= 1) return phi;
  std::size_t lh = half_lengths(phi.length()).lh;
  State out;
  for (const auto& [y, a] : phi.amplitudes()) {
    State left = eval_ket(g, y.substr(0, lh), cx);
    State right = eval_ket(h, y.substr(lh), cx);
    out.add(tensor(left, right), a);
  }
  return out;
}

State eval_midapp(const Term& h, std::size_t k, const State& phi, Ctx cx) {
  if (phi.is_null() || phi.length() == 0) return phi;
  State::Map fwd;
  for (const auto& [y, a] : phi.amplitudes()) fwd.emplace(mid_swap(y, k, false), a);
  State mid = eval_node(h, State::from_map(phi.length(), std::move(fwd)), cx);
  State::Map back;
  for (const auto& [y, a] : mid.amplitudes()) back.emplace(mid_swap(y, k, true), a);
  return State::from_map(mid.length(), std::move(back));
}

// Scheme DC and its inverse; SelfRef slots recurse into this node.
State eval_divconq(const Term& t, const State& phi, Ctx cx, bool inverse) {
  if (phi.is_null()) return phi;
  if (phi.length() <= t.k) {
    if (!inverse) return eval_node(*t.a, phi, cx);
    TermPtr g_inv = cached_invert(*t.a, cx);
    return eval_node(*g_inv, phi, cx);
  }

  auto apply_slot = [&](FSel sel, const State& part, Ctx sub) {
    if (sel == FSel::Ident) return part;
    return eval_divconq(t, part, sub, inverse);
  };

  if (!inverse) {
    State stage = eval_node(*t.c, phi, cx);  // p
    std::size_t lh = half_lengths(stage.length()).lh;
    State halves;
    Ctx sub = deeper(cx);
    for (const auto& [y, a] : stage.amplitudes()) {
      State left = apply_slot(t.f1, State::basis(y.substr(0, lh)), sub);
      State right = apply_slot(t.f2, State::basis(y.substr(lh)), sub);
      halves.add(tensor(left, right), a);
    }
    return eval_midapp(*t.b, t.k, halves, cx);
  }

  // Inverse order: h^-1 in the middle, split the halves back, then p^-1.
  TermPtr h_inv = cached_invert(*t.b, cx);
  State mid = eval_midapp(*h_inv, t.k, phi, cx);
  std::size_t lh = half_lengths(mid.length()).lh;
  State halves;
  Ctx sub = deeper(cx);
  for (const auto& [y, a] : mid.amplitudes()) {
    State left = apply_slot(t.f1, State::basis(y.substr(0, lh)), sub);
    State right = apply_slot(t.f2, State::basis(y.substr(lh)), sub);
    halves.add(tensor(left, right), a);
  }
  TermPtr p_inv = cached_invert(*t.c, cx);
  return eval_node(*p_inv, halves, cx);
}

State eval_node(const Term& t, const State& phi, Ctx cx) {
  if (phi.is_null()) return phi;
  switch (t.kind) {
    case TermKind::Ident: return phi;
    case TermKind::Phase: return eval_phase(t.theta, phi);
    case TermKind::Rot: return eval_rot(t.theta, phi);
    case TermKind::Not: return eval_not(phi);
    case TermKind::Swap: return eval_swap(phi);
    case TermKind::Meas: return eval_meas(t.bit, phi);
    case TermKind::Compo: return eval_node(*t.a, eval_node(*t.b, phi, cx), cx);
    case TermKind::Branch: return eval_branch(*t.a, *t.b, phi, cx);
    case TermKind::CfqRec: return per_basis(t, phi, cx, &eval_cfqrec_basis);
    case TermKind::CfqRecInv: return per_basis(t, phi, cx, &eval_cfqrec_inv_basis);
    case TermKind::LCompo: return per_basis(t, phi, cx, &eval_lcompo_basis);
    case TermKind::CodeSkipPlus:
    case TermKind::CodeSkipMinus: return per_basis(t, phi, cx, &eval_codeskip_basis);
    case TermKind::CodeRemove: return per_basis(t, phi, cx, &eval_coderemove_basis);
    case TermKind::CodeRep: return per_basis(t, phi, cx, &eval_coderep_basis);
    case TermKind::CodeCtrl: return per_basis(t, phi, cx, &eval_codectrl_basis);
    case TermKind::HalfD: return eval_halfd(*t.a, *t.b, phi, cx);
    case TermKind::MidApp: return eval_midapp(*t.a, t.k, phi, cx);
    case TermKind::DivConq: return eval_divconq(t, phi, cx, false);
    case TermKind::DivConqInv: return eval_divconq(t, phi, cx, true);
    case TermKind::Named: return eval_node(*t.expansion, phi, cx);
  }
  throw eval_error("internal", "unknown term kind");
}

}  // namespace

State eval(const Term& t, const State& phi, const EvalConfig& cfg) {
  return eval_node(t, phi, Ctx{cfg, 0});
}

double measure_first_qubit_unnormalized(const State& phi, int b) {
  if (phi.is_null() || phi.length() == 0) throw eval_error("no-qubit", "state has no first qubit");
  double sq = 0.0;
  char want = char('0' + b);
  for (const auto& [y, a] : phi.amplitudes())
    if (y[0] == want) sq += std::norm(a);
  return sq;
}

double measure_first_qubit(const State& phi, int b) {
  double total = phi.norm();
  if (total == 0.0) throw eval_error("no-qubit", "zero-norm state");
  return measure_first_qubit_unnormalized(phi, b) / (total * total);
}

std::string sample(const State& phi, std::uint64_t seed) {
  if (phi.is_null()) throw eval_error("zero-norm", "cannot sample the null vector");
  double total_sq = 0.0;
  for (const auto& [y, a] : phi.amplitudes()) total_sq += std::norm(a);
  if (total_sq == 0.0) throw eval_error("zero-norm", "cannot sample a zero-norm state");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  double r = dist(rng) * total_sq;
  double acc = 0.0;
  const std::string* last = nullptr;
  for (const auto& [y, a] : phi.amplitudes()) {
    acc += std::norm(a);
    last = &y;
    if (r <= acc) return y;
  }
  return *last;
}

}  // namespace qfc
