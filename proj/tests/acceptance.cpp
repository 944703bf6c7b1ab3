// End-to-end acceptance checks. Each criterion prints one line; the binary
// exits nonzero if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "qfc/builders.hpp"
#include "qfc/codec.hpp"
#include "qfc/demos.hpp"
#include "qfc/eval.hpp"
#include "qfc/oracle.hpp"

using namespace qfc;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void line(int idx, const char* name, bool pass, const std::string& detail, double secs) {
  std::printf("criterion %2d %-28s %s  (%s, %.2fs)\n", idx, name, pass ? "PASS" : "FAIL",
              detail.c_str(), secs);
  if (!pass) ++failures;
}

std::string all_bits(std::size_t n, std::size_t v) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i)
    if (v >> (n - 1 - i) & 1) s[i] = '1';
  return s;
}

std::vector<TermPtr> corpus200() { return fuzz_terms(20240901, 200, FuzzOptions{6, true}); }

// 1. EPR construction, per-amplitude error <= 1e-12
void criterion_epr() {
  Timer t;
  auto res = check_epr(1e-12);
  char buf[64];
  std::snprintf(buf, sizeof buf, "max dev %.3g", res.max_deviation);
  line(1, "epr-construction", res.pass(), buf, t.seconds());
}

// 2. 200 measurement-free fuzz terms preserve dimension and norm
void criterion_preservation() {
  Timer t;
  auto corpus = corpus200();
  std::mt19937_64 seeds(7);
  std::size_t cases = 0, bad = 0;
  double worst = 0.0;
  for (const auto& term : corpus) {
    std::size_t len = 2 + seeds() % 9;  // lengths 2..10
    State phi = random_state(seeds(), len, 16);
    State out = eval(term, phi);
    double dev = std::abs(out.norm() - 1.0);
    worst = std::max(worst, dev);
    ++cases;
    if (out.length() != len || dev > 1e-9) ++bad;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu/%zu ok, worst |norm-1| %.3g", cases - bad, cases, worst);
  line(2, "preservation-suite", bad == 0, buf, t.seconds());
}

// 3. unitarity of the same corpus via the matrix oracle at n <= 6
void criterion_unitarity() {
  Timer t;
  auto corpus = corpus200();
  std::mt19937_64 seeds(8);
  std::size_t bad = 0;
  double worst = 0.0;
  for (const auto& term : corpus) {
    std::size_t n = 2 + seeds() % 5;  // 2..6
    auto chk = check_unitary(to_matrix(term, n), 1e-9);
    worst = std::max(worst, chk.max_deviation);
    if (!chk.pass) ++bad;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu/200 unitary, worst dev %.3g", 200 - bad, worst);
  line(3, "unitarity-oracle", bad == 0, buf, t.seconds());
}

// 4. inverse round-trip over the corpus on random states
void criterion_inverse() {
  Timer t;
  auto corpus = corpus200();
  std::mt19937_64 seeds(9);
  std::size_t cases = 0, bad = 0;
  double worst = 0.0;
  for (const auto& term : corpus) {
    TermPtr inv = invert(term);
    for (int rep = 0; rep < 2; ++rep) {
      std::size_t len = 2 + seeds() % 9;
      State phi = random_state(seeds(), len, 12);
      State back = eval(inv, eval(term, phi));
      double dev = distance(back, phi);
      worst = std::max(worst, dev);
      ++cases;
      if (dev > 1e-9) ++bad;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu/%zu round trips, worst %.3g", cases - bad, cases, worst);
  line(4, "inverse-round-trip", bad == 0, buf, t.seconds());
}

// 5. binary search, exhaustive for k in {1,2,3}
void criterion_bin_search() {
  Timer t;
  CheckResult total;
  for (std::size_t k = 1; k <= 3; ++k) {
    auto res = check_bin_search(k, 1e-9);
    total.cases += res.cases;
    total.failures += res.failures;
    total.max_deviation = std::max(total.max_deviation, res.max_deviation);
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu/%zu cases, worst %.3g", total.cases - total.failures,
                total.cases, total.max_deviation);
  line(5, "bin-search-exhaustive", total.pass(), buf, t.seconds());
}

// 6. parity via divide and conquer for all |x| <= 12
void criterion_parity() {
  Timer t;
  TermPtr term = b_parity_dc();
  std::size_t cases = 0, bad = 0;
  double worst = 0.0;
  for (std::size_t n = 1; n <= 12; ++n)
    for (std::size_t v = 0; v < (std::size_t(1) << n); ++v) {
      std::string x = all_bits(n, v);
      State out = eval(term, State::basis(x));
      ++cases;
      double p = measure_first_qubit(out, classical_parity(x));
      double dev = std::abs(p - 1.0);
      worst = std::max(worst, dev);
      bool basis_rest = out.amplitudes().size() == 1;
      if (dev > 1e-9 || !basis_rest) ++bad;
    }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu/%zu inputs, worst %.3g", cases - bad, cases, worst);
  line(6, "parity-divide-and-conquer", bad == 0, buf, t.seconds());
}

// 7. the majority-promise bound for k <= 4 plus promise instances
void criterion_majority() {
  Timer t;
  std::size_t cases = 0, bad = 0;
  for (std::size_t k = 1; k <= 4; ++k) {
    auto res = check_majority_sweep(k, {0.25, 0.5}, 1e-9);
    cases += res.cases;
    bad += res.failures;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu/%zu inputs", cases - bad, cases);
  line(7, "majority-promise-bound", bad == 0, buf, t.seconds());
}

// 8. the worked fast-recursion example, exact
void criterion_recursion_example() {
  Timer t;
  auto res = check_scheme_recursion_example(1e-12);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu/%zu kets, worst %.3g", res.cases - res.failures, res.cases,
                res.max_deviation);
  line(8, "fast-recursion-example", res.pass(), buf, t.seconds());
}

// 9. grouped versus per-basis evaluation
void criterion_linearity() {
  Timer t;
  auto corpus = fuzz_terms(424242, 50, FuzzOptions{6, false});
  std::mt19937_64 seeds(10);
  std::size_t cases = 0, bad = 0;
  double worst = 0.0;
  for (const auto& term : corpus) {
    for (int rep = 0; rep < 20; ++rep) {
      std::size_t len = 2 + seeds() % 11;  // up to 12
      State phi = random_state(seeds(), len, 16);
      State grouped = eval(term, phi);
      State summed;
      for (const auto& [y, a] : phi.amplitudes()) summed.add(eval(term, State::basis(y)), a);
      double dev = distance(grouped, summed);
      worst = std::max(worst, dev);
      ++cases;
      if (dev > 1e-9) ++bad;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu/%zu pairs, worst %.3g", cases - bad, cases, worst);
  line(9, "linearity-grouping", bad == 0, buf, t.seconds());
}

// 10. the permutation lemmas, exact on every basis input of length <= 8
void criterion_permutations() {
  Timer t;
  std::size_t cases = 0, bad = 0;

  // sweeps stay within each lemma's stated domain (min_len), exhaustively up
  // to total length 8
  auto sweep = [&](const TermPtr& term, std::size_t min_len, auto&& expected) {
    for (std::size_t len = min_len; len <= 8; ++len)
      for (std::size_t v = 0; v < (std::size_t(1) << len); ++v) {
        std::string in = all_bits(len, v);
        State out = eval(term, State::basis(in));
        ++cases;
        if (!(out == State::basis(expected(in)))) ++bad;
      }
  };

  for (std::size_t k = 1; k <= 3; ++k)
    sweep(b_copy(k), 2 * k, [&](std::string x) {
      for (std::size_t i = 0; i < k; ++i) x[i] = ((x[i] - '0') ^ (x[k + i] - '0')) + '0';
      return x;
    });
  for (std::size_t k = 1; k <= 3; ++k)
    sweep(b_skip(k, t_not()), 1, [&](std::string x) {
      if (x.size() > k) x[k] = x[k] == '0' ? '1' : '0';
      return x;
    });
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = i + 1; j <= 5; ++j)
      sweep(b_swap_ij(i, j), 1, [&](std::string x) {
        if (x.size() >= j) std::swap(x[i - 1], x[j - 1]);
        return x;
      });
  for (std::size_t w : {std::size_t(2), std::size_t(3)})
    for (std::size_t i = 1; i <= 2; ++i)
      for (std::size_t j = i + 1; j <= 3; ++j) {
        if (w * j > 8) continue;
        sweep(b_sec_swap(w, i, j), w * j, [&](std::string x) {
          std::string a = x.substr((i - 1) * w, w), b = x.substr((j - 1) * w, w);
          x.replace((i - 1) * w, w, b);
          x.replace((j - 1) * w, w, a);
          return x;
        });
        sweep(b_sec_move(w, i, j), w * j, [&](std::string x) {
          std::string sec = x.substr((i - 1) * w, w);
          x.erase((i - 1) * w, w);
          x.insert((j - 1) * w, sec);
          return x;
        });
      }
  for (std::size_t k = 1; k <= 3; ++k)
    sweep(b_length_q(k), 1, [&](std::string x) {
      if (x.size() - 1 >= k) x[0] = x[0] == '0' ? '1' : '0';
      return x;
    });

  // g_AND / g_OR truth tables, e.g. g_OR |0>|1>|y> = |1>|y>|1>
  for (std::size_t suffix_len = 0; suffix_len <= 5; ++suffix_len)
    for (std::size_t v = 0; v < (std::size_t(1) << suffix_len); ++v)
      for (int x = 0; x <= 1; ++x)
        for (int y = 0; y <= 1; ++y) {
          std::string w = all_bits(suffix_len, v);
          std::string in = std::string("0") + char('0' + x) + char('0' + y) + w;
          std::string or_want, and_want;
          if (x) {
            or_want = std::string("1") + char('0' + y) + "1" + w;
            and_want = std::string(1, char('0' + y)) + "11" + w;
          } else {
            or_want = std::string(1, char('0' + y)) + "00" + w;
            and_want = std::string("0") + char('0' + y) + "0" + w;
          }
          State got_or = eval(b_g_or(), State::basis(in));
          State got_and = eval(b_g_and(), State::basis(in));
          cases += 2;
          if (!(got_or == State::basis(or_want))) ++bad;
          if (!(got_and == State::basis(and_want))) ++bad;
        }

  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu/%zu kets exact", cases - bad, cases);
  line(10, "permutation-lemmas", bad == 0, buf, t.seconds());
}

// 11. measurement completeness on random states
void criterion_measurement() {
  Timer t;
  std::mt19937_64 seeds(11);
  std::size_t bad = 0;
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    State phi = random_state(seeds(), 1 + seeds() % 10, 16);
    State m0 = eval(t_meas(0), phi);
    State m1 = eval(t_meas(1), phi);
    double dev =
        std::abs(m0.norm() * m0.norm() + m1.norm() * m1.norm() - phi.norm() * phi.norm());
    worst = std::max(worst, dev);
    if (dev > 1e-12) ++bad;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "100 states, worst %.3g", worst);
  line(11, "measurement-completeness", bad == 0, buf, t.seconds());
}

}  // namespace

int main() {
  criterion_epr();
  criterion_preservation();
  criterion_unitarity();
  criterion_inverse();
  criterion_bin_search();
  criterion_parity();
  criterion_majority();
  criterion_recursion_example();
  criterion_linearity();
  criterion_permutations();
  criterion_measurement();
  if (failures == 0)
    std::printf("all criteria pass\n");
  else
    std::printf("%d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
