#include "qfc/oracle.hpp"

#include <cmath>
#include <random>

#include "qfc/builders.hpp"
#include "qfc/codec.hpp"

namespace qfc {

OperatorMatrix to_matrix(const Term& t, std::size_t n, const EvalConfig& cfg) {
  if (n > 12) throw eval_error("dimension-too-large", "matrix extraction is capped at n <= 12");
  std::size_t dim = std::size_t(1) << n;
  OperatorMatrix m;
  m.n = n;
  m.entries.assign(dim, std::vector<cplx>(dim, cplx{0.0, 0.0}));
  for (std::size_t col = 0; col < dim; ++col) {
    State out = eval(t, State::basis(codec::bin_k(n, col + 1)), cfg);
    if (!out.is_null() && out.length() != n)
      throw eval_error("dimension-changed", "column " + std::to_string(col) + " has length " +
                                                std::to_string(out.length()));
    for (const auto& [y, a] : out.amplitudes())
      m.entries[codec::bin_k_index(y) - 1][col] = a;
  }
  return m;
}

UnitaryCheck check_unitary(const OperatorMatrix& m, double tol) {
  std::size_t dim = m.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      cplx acc{0.0, 0.0};
      for (std::size_t k = 0; k < dim; ++k)
        acc += std::conj(m.entries[k][i]) * m.entries[k][j];
      if (i == j) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  return UnitaryCheck{worst <= tol, worst};
}

OperatorMatrix matmul(const OperatorMatrix& a, const OperatorMatrix& b) {
  std::size_t dim = a.dim();
  OperatorMatrix c;
  c.n = a.n;
  c.entries.assign(dim, std::vector<cplx>(dim, cplx{0.0, 0.0}));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) {
      cplx aik = a.entries[i][k];
      if (aik == cplx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < dim; ++j) c.entries[i][j] += aik * b.entries[k][j];
    }
  return c;
}

OperatorMatrix adjoint(const OperatorMatrix& m) {
  std::size_t dim = m.dim();
  OperatorMatrix a;
  a.n = m.n;
  a.entries.assign(dim, std::vector<cplx>(dim, cplx{0.0, 0.0}));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) a.entries[i][j] = std::conj(m.entries[j][i]);
  return a;
}

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      worst = std::max(worst, std::abs(a.entries[i][j] - b.entries[i][j]));
  return worst;
}

std::vector<cplx> apply(const OperatorMatrix& m, const std::vector<cplx>& v) {
  std::vector<cplx> out(m.dim(), cplx{0.0, 0.0});
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out[i] += m.entries[i][j] * v[j];
  return out;
}

std::vector<cplx> dense(const State& s, std::size_t n) {
  std::vector<cplx> v(std::size_t(1) << n, cplx{0.0, 0.0});
  for (const auto& [y, a] : s.amplitudes()) v[codec::bin_k_index(y) - 1] = a;
  return v;
}

int classical_parity(std::string_view x) {
  int p = 0;
  for (char c : x) p ^= (c - '0');
  return p;
}

int classical_or(std::string_view x) {
  for (char c : x)
    if (c == '1') return 1;
  return 0;
}

int classical_and(std::string_view x) {
  for (char c : x)
    if (c == '0') return 0;
  return 1;
}

std::pair<std::size_t, std::size_t> majority_count(std::string_view x) {
  std::size_t ones = 0;
  for (char c : x) ones += (c == '1');
  return {x.size() - ones, ones};
}

// --- fuzzing -----------------------------------------------------------------

namespace {

class Fuzzer {
 public:
  Fuzzer(std::uint64_t seed, const FuzzOptions& opts) : rng_(seed), opts_(opts) {}

  TermPtr gen() { return gen_term(opts_.max_depth); }

 private:
  std::mt19937_64 rng_;
  FuzzOptions opts_;

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  bool coin() { return pick(2) == 0; }

  Angle angle() {
    static const long long nums[] = {1, -1, 1, 1, 3, -1, 2, 1};
    static const long long dens[] = {1, 2, 4, 3, 4, 3, 3, 6};
    std::size_t i = pick(8);
    return Angle::pi_frac(nums[i], dens[i]);
  }

  std::string sep() {
    static const char* seps[] = {"1", "11", "111"};
    return seps[pick(3)];
  }

  TermPtr leaf() {
    switch (pick(opts_.measurement_free ? 5 : 6)) {
      case 0: return t_ident();
      case 1: return t_not();
      case 2: return t_swap();
      case 3: return t_phase(angle());
      case 4: return t_rot(angle());
      default: return t_meas((int)pick(2));
    }
  }

  // Parse-position preserving terms for code-controlled slots: diagonal in
  // the computational basis, plus Swap inside wide sections.
  TermPtr safe_slot(const std::string& r0, std::size_t depth) {
    std::size_t c = pick(depth == 0 ? 3 : 5);
    switch (c) {
      case 0: return t_ident();
      case 1: return t_phase(angle());
      case 2: return r0.size() >= 2 ? t_swap() : b_gps(angle());
      case 3: return t_compo(safe_slot(r0, depth - 1), safe_slot(r0, depth - 1));
      default: return t_branch(t_phase(angle()), t_phase(angle()));
    }
  }

  std::vector<PSel> psel(std::size_t width) {
    std::vector<PSel> p(std::size_t(1) << width);
    for (auto& v : p) v = coin() ? PSel::Ident : PSel::HalfSwap;
    return p;
  }

  std::vector<FSel> fsel(std::size_t width) {
    std::vector<FSel> f(std::size_t(1) << width);
    for (auto& v : f) v = coin() ? FSel::Ident : FSel::SelfRef;
    return f;
  }

  TermPtr gen_term(std::size_t depth, bool allow_dc = true) {
    if (depth == 0) return leaf();
    switch (pick(10)) {
      case 0: return leaf();
      case 1: return t_compo(gen_term(depth - 1, allow_dc), gen_term(depth - 1, allow_dc));
      case 2: return t_branch(gen_term(depth - 1, allow_dc), gen_term(depth - 1, allow_dc));
      case 3: return t_halfd(gen_term(depth - 1, allow_dc), gen_term(depth - 1, allow_dc));
      case 4: return t_midapp(1 + pick(2), gen_term(depth - 1, allow_dc));
      case 5: {
        if (!allow_dc) return leaf();
        // ground slots must stay outside Scheme DC; p must be measurement-free
        TermPtr g = gen_term(depth - 1, false);
        TermPtr h = gen_term(depth - 1, false);
        TermPtr p = mf_term(depth - 1);
        return t_divconq(1 + pick(2), g, h, p,
                         coin() ? FSel::SelfRef : FSel::Ident,
                         coin() ? FSel::SelfRef : FSel::Ident);
      }
      case 6: {
        std::string r0 = sep();
        return t_lcompo(r0, safe_slot(r0, std::min<std::size_t>(depth - 1, 2)));
      }
      case 7: {
        std::string r0 = sep();
        return t_codectrl(r0, safe_slot(r0, std::min<std::size_t>(depth - 1, 2)));
      }
      case 8: {
        // bit rotation across wide sections can merge basis strings, so the
        // unitary corpus keeps the width-1 separator (where it is harmless)
        std::string r0 = opts_.measurement_free ? "1" : sep();
        return coin() ? t_coderemove(r0) : t_coderep(r0);
      }
      default: {
        std::string r0 = sep();
        std::size_t d = std::min<std::size_t>(depth - 1, 2);
        TermPtr dslot = coin() ? t_ident() : b_gps(angle());
        TermPtr g = safe_slot(r0, d);
        TermPtr h = coin() ? safe_slot(r0, d)
                           : t_codeskip(true, r0, safe_slot(r0, d), safe_slot(r0, d));
        return t_cfqrec(1 + pick(2), r0, dslot, g, h, psel(r0.size()), fsel(r0.size()));
      }
    }
  }

  // measurement-free generation regardless of options (for DC p slots)
  TermPtr mf_term(std::size_t depth) {
    bool saved = opts_.measurement_free;
    opts_.measurement_free = true;
    TermPtr t = gen_term(depth, false);
    opts_.measurement_free = saved;
    return t;
  }
};

}  // namespace

std::vector<TermPtr> fuzz_terms(std::uint64_t seed, std::size_t count, const FuzzOptions& opts) {
  Fuzzer fz(seed, opts);
  std::vector<TermPtr> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(fz.gen());
  return out;
}

State random_state(std::uint64_t seed, std::size_t length, std::size_t max_terms) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::size_t dim = std::size_t(1) << std::min<std::size_t>(length, 20);
  std::size_t terms = std::min<std::size_t>(max_terms, dim);
  State::Map m;
  while (m.size() < terms) {
    std::string bits(length, '0');
    for (auto& c : bits) c = char('0' + (rng() & 1));
    m[bits] = cplx{gauss(rng), gauss(rng)};
  }
  double nrm = 0.0;
  for (const auto& [k, a] : m) nrm += std::norm(a);
  nrm = std::sqrt(nrm);
  for (auto& [k, a] : m) a /= nrm;
  return State::from_map(length, std::move(m));
}

}  // namespace qfc
