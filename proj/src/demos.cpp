#include "qfc/demos.hpp"

#include <cmath>
#include <cstdio>
#include <thread>

#include "qfc/builders.hpp"
#include "qfc/codec.hpp"
#include "qfc/eval.hpp"
#include "qfc/oracle.hpp"

namespace qfc {

void CheckResult::fold(bool ok, double dev) {
  ++cases;
  if (!ok) ++failures;
  max_deviation = std::max(max_deviation, dev);
}

static std::string all_bits(std::size_t n, std::size_t v) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i)
    if (v >> (n - 1 - i) & 1) s[i] = '1';
  return s;
}

CheckResult check_epr(double tol) {
  TermPtr term = t_compo(t_branch(t_ident(), t_not()), t_rot(Angle::pi_frac(1, 4)));
  State out = eval(term, State::basis("00"));
  double r = 1.0 / std::sqrt(2.0);
  State want;
  want.add("00", r);
  want.add("11", r);
  double dev = 0.0;
  for (const std::string& key : {std::string("00"), std::string("01"), std::string("10"),
                                 std::string("11")})
    dev = std::max(dev, std::abs(out.amplitude(key) - want.amplitude(key)));
  CheckResult res;
  res.fold(dev <= tol, dev);
  return res;
}

CheckResult check_bin_search(std::size_t k, double tol, const RowSink& row) {
  TermPtr term = b_bin_search();
  CheckResult res;
  std::size_t slen = std::size_t(1) << k;
  for (std::size_t m = 1; m <= slen; ++m) {
    std::string x = codec::bin_k(k, m);
    std::string xt = codec::tilde_encode(x);
    for (std::size_t sv = 0; sv < (std::size_t(1) << slen); ++sv) {
      std::string s = all_bits(slen, sv);
      for (int b = 0; b <= 1; ++b) {
        char sm = s[m - 1];
        int bout = b ^ (sm - '0');
        std::string in = xt + codec::hat_encode(char('0' + b)) + std::string(codec::HAT_2) + s;
        std::string want = xt + codec::hat_encode(char('0' + bout)) + std::string(codec::HAT_2) + s;
        State got = eval(term, State::basis(in));
        State expect = State::basis(want);
        double dev = distance(got, expect);
        res.fold(dev <= tol, dev);
        if (row && dev > tol)
          row("FAIL m=" + std::to_string(m) + " s=" + s + " b=" + std::to_string(b));
      }
    }
  }
  return res;
}

CheckResult check_parity(std::size_t n, double tol, const RowSink& row) {
  TermPtr term = b_parity_dc();
  CheckResult res;
  for (std::size_t v = 0; v < (std::size_t(1) << n); ++v) {
    std::string x = all_bits(n, v);
    State out = eval(term, State::basis(x));
    int want = classical_parity(x);
    bool single = out.amplitudes().size() == 1;
    double p = 0.0, dev = 1.0;
    if (single) {
      p = measure_first_qubit(out, want);
      dev = std::abs(p - 1.0);
    }
    res.fold(single && dev <= tol, dev);
    if (row && (!single || dev > tol)) row("FAIL x=" + x);
  }
  return res;
}

CheckResult check_majority(std::size_t k, double eps, double tol, const RowSink& row) {
  return check_majority_sweep(k, {eps}, tol, row);
}

CheckResult check_majority_sweep(std::size_t k, const std::vector<double>& eps_list, double tol,
                                 const RowSink& row) {
  TermPtr term = b_majority(eps_list.empty() ? 0.5 : eps_list.front());
  std::size_t n = std::size_t(1) << k;
  std::string prefix = std::string(6, '0') + std::string(3 * k, '0') + std::string(codec::HAT_END);
  std::size_t total = std::size_t(1) << n;

  struct Chunk {
    CheckResult res;
    std::vector<std::string> rows;
  };

  auto work = [&](std::size_t lo, std::size_t hi, Chunk& out) {
    auto cache = make_eval_cache();
    EvalConfig cfg;
    cfg.cache = cache.get();
    for (std::size_t v = lo; v < hi; ++v) {
      std::string x = all_bits(n, v);
      State state = eval(term, State::basis(prefix + x), cfg);
      auto [zeros, ones] = majority_count(x);
      double p0 = measure_first_qubit(state, 0);
      double p1 = measure_first_qubit(state, 1);
      double f0 = (double)zeros / (double)n, f1 = (double)ones / (double)n;
      bool ok = p0 >= f0 * f0 - tol && p1 >= f1 * f1 - tol;
      double dev = std::max(f0 * f0 - p0, f1 * f1 - p1);
      bool promised = false;
      for (double eps : eps_list) {
        double need = std::sqrt(1.0 - eps) * (double)n;
        if ((double)ones >= need) {
          promised = true;
          ok = ok && p1 >= 1.0 - eps;
        } else if ((double)zeros >= need) {
          promised = true;
          ok = ok && p0 >= 1.0 - eps;
        }
      }
      out.res.fold(ok, std::max(dev, 0.0));
      if (row) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "x=%s #0=%zu #1=%zu p0=%.6f p1=%.6f%s%s", x.c_str(), zeros,
                      ones, p0, p1, promised ? " promise" : "", ok ? "" : " FAIL");
        out.rows.push_back(buf);
      }
    }
  };

  std::size_t nthreads = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
  if (total < 64) nthreads = 1;
  std::vector<Chunk> chunks(nthreads);
  std::vector<std::thread> threads;
  std::size_t stride = (total + nthreads - 1) / nthreads;
  for (std::size_t i = 0; i < nthreads; ++i) {
    std::size_t lo = i * stride, hi = std::min(total, lo + stride);
    if (lo >= hi) break;
    threads.emplace_back(work, lo, hi, std::ref(chunks[i]));
  }
  for (auto& th : threads) th.join();

  CheckResult res;
  for (const auto& c : chunks) {
    res.cases += c.res.cases;
    res.failures += c.res.failures;
    res.max_deviation = std::max(res.max_deviation, c.res.max_deviation);
    if (row)
      for (const auto& r : c.rows) row(r);
  }
  return res;
}

TermPtr example_recursion_term() {
  // h sends |01> to |11> and |0 1 0^m 1> to |1 0^{m+1} 1>
  TermPtr h = t_compo(t_swap(), t_compo(b_length_q(2), t_not()));
  std::vector<PSel> p{PSel::HalfSwap, PSel::Ident};
  std::vector<FSel> f{FSel::SelfRef, FSel::Ident};
  return t_cfqrec(1, "1", t_ident(), t_ident(), h, std::move(p), std::move(f));
}

CheckResult check_scheme_recursion_example(double tol) {
  TermPtr term = example_recursion_term();
  CheckResult res;
  for (std::size_t v = 0; v < 16; ++v) {
    std::string u = all_bits(4, v);
    State got = eval(term, State::basis("01" + u));
    double dev = distance(got, State::basis("11" + u));
    res.fold(dev <= tol, dev);
  }
  for (std::size_t v = 0; v < 256; ++v) {
    std::string u = all_bits(8, v);
    State got = eval(term, State::basis("001" + u));
    double dev = distance(got, State::basis("101" + u));
    res.fold(dev <= tol, dev);
  }
  return res;
}

}  // namespace qfc
