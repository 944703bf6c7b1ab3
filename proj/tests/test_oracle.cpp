#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "qfc/builders.hpp"
#include "qfc/eval.hpp"
#include "qfc/oracle.hpp"

using namespace qfc;

TEST_CASE("to_matrix basics") {
  auto id2 = to_matrix(t_ident(), 2);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(id2.entries[i][j] == (i == j ? cplx{1, 0} : cplx{0, 0}));

  auto rot = to_matrix(t_rot(Angle::pi_frac(1, 4)), 1);
  double c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
  CHECK(std::abs(rot.entries[0][0] - c) < 1e-15);
  CHECK(std::abs(rot.entries[0][1] + s) < 1e-15);
  CHECK(std::abs(rot.entries[1][0] - s) < 1e-15);
  CHECK(std::abs(rot.entries[1][1] - c) < 1e-15);

  CHECK_THROWS_AS(to_matrix(t_ident(), 13), eval_error);
}

TEST_CASE("check_unitary") {
  CHECK(check_unitary(to_matrix(b_wh(), 1), 1e-12).pass);
  auto proj = check_unitary(to_matrix(t_meas(0), 1), 1e-9);
  CHECK(!proj.pass);
  CHECK(proj.max_deviation == doctest::Approx(1.0));
}

TEST_CASE("matrix of a composition is the product") {
  std::mt19937_64 seeds(8);
  auto corpus = fuzz_terms(123, 30, FuzzOptions{3, true});
  for (std::size_t i = 0; i + 1 < corpus.size(); i += 2) {
    std::size_t n = 2 + seeds() % 3;
    auto mg = to_matrix(corpus[i], n);
    auto mh = to_matrix(corpus[i + 1], n);
    auto mc = to_matrix(t_compo(corpus[i], corpus[i + 1]), n);
    CHECK(max_abs_diff(mc, matmul(mg, mh)) <= 1e-9);
  }
}

TEST_CASE("matrix of the inverse is the adjoint") {
  std::mt19937_64 seeds(9);
  auto corpus = fuzz_terms(321, 40, FuzzOptions{4, true});
  for (const auto& t : corpus) {
    std::size_t n = 2 + seeds() % 3;
    auto m = to_matrix(t, n);
    auto mi = to_matrix(invert(t), n);
    CHECK(max_abs_diff(mi, adjoint(m)) <= 1e-9);
  }
}

TEST_CASE("eval agrees with the matrix route") {
  std::mt19937_64 seeds(10);
  auto corpus = fuzz_terms(777, 40, FuzzOptions{4, false});
  for (const auto& t : corpus) {
    std::size_t n = 2 + seeds() % 5;
    auto m = to_matrix(t, n);
    State phi = random_state(seeds(), n, 12);
    auto direct = dense(eval(t, phi), n);
    auto via = qfc::apply(m, dense(phi, n));
    double dev = 0.0;
    for (std::size_t i = 0; i < direct.size(); ++i)
      dev = std::max(dev, std::abs(direct[i] - via[i]));
    CHECK(dev <= 1e-9);
  }
}

TEST_CASE("classical references") {
  CHECK(classical_parity("1101") == 1);
  CHECK(classical_parity("11") == 0);
  CHECK(classical_or("0000") == 0);
  CHECK(classical_or("0100") == 1);
  CHECK(classical_and("1111") == 1);
  CHECK(classical_and("1011") == 0);
  CHECK(majority_count("1100") == std::pair<std::size_t, std::size_t>{2, 2});
  CHECK(majority_count("0001") == std::pair<std::size_t, std::size_t>{3, 1});
}

TEST_CASE("fuzzing is deterministic and valid") {
  auto a = fuzz_terms(1, 3);
  auto b = fuzz_terms(1, 3);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(render(a[i]) == render(b[i]));

  // recorded fixture so corpus drift is visible in review
  CHECK(render(a[0]) == "(compo (swap) (compo (midapp k=2 h=(swap)) (midapp k=2 h=(not))))");
  CHECK(render(a[1]) ==
        "(codectrl r0=1 f=(compo (phase -pi/2) (compo (not) (compo (phase -pi/2) (not)))))");

  auto big = fuzz_terms(42, 200, FuzzOptions{6, true});
  for (const auto& t : big) {
    auto d = validate(t);
    CHECK(d.ok());
    CHECK(d.measurement_free);
  }
  auto mixed = fuzz_terms(43, 100, FuzzOptions{6, false});
  for (const auto& t : mixed) CHECK(validate(t).ok());
}

TEST_CASE("random states have unit norm and bounded support") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    State s = random_state(seed, 6, 16);
    CHECK(s.length() == 6);
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    CHECK(s.amplitudes().size() <= 16);
  }
}
