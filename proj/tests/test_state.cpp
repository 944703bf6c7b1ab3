#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "qfc/oracle.hpp"
#include "qfc/state.hpp"

using namespace qfc;

static const double INV_SQRT2 = 1.0 / std::sqrt(2.0);

static State epr() {
  State s;
  s.add("00", INV_SQRT2);
  s.add("11", INV_SQRT2);
  return s;
}

TEST_CASE("half lengths") {
  auto h3 = half_lengths(3);
  CHECK(h3.lh == 2);
  CHECK(h3.rh == 1);
  CHECK(h3.ilog == 2);

  auto h0 = half_lengths(0);
  CHECK(h0.lh == 0);
  CHECK(h0.rh == 0);
  CHECK(h0.ilog == 0);

  CHECK(half_lengths(1).ilog == 0);
  CHECK(half_lengths(4).ilog == 2);
  CHECK(half_lengths(1024).ilog == 10);
  CHECK(half_lengths(1025).ilog == 11);

  // iterating the left half from 4 reaches 1 in ilog(4)=2 steps
  std::size_t n = 4;
  n = half_lengths(n).lh;
  n = half_lengths(n).lh;
  CHECK(n == 1);

  for (std::size_t m = 1; m <= 64; ++m) {
    auto h = half_lengths(m);
    CHECK(h.lh + h.rh == m);
  }
}

TEST_CASE("tensor conventions") {
  State phi = epr();
  CHECK(tensor(State::scalar(0.0), phi).is_null());
  CHECK(tensor(phi, State::scalar(0.0)).is_null());
  CHECK(tensor(State::null(), phi).is_null());
  CHECK(tensor(phi, State::null()).is_null());

  State su = tensor(State::basis("10"), State::basis("0"));
  CHECK(su == State::basis("100"));

  State scaled = tensor(State::scalar(cplx{0.0, 1.0}), phi);
  CHECK(scaled.length() == 2);
  CHECK(scaled.amplitude("00") == cplx{0.0, INV_SQRT2});

  CHECK(tensor(phi, State::basis("1")).length() == 3);
}

TEST_CASE("tensor associativity on random states") {
  std::mt19937_64 seeds(11);
  for (int trial = 0; trial < 40; ++trial) {
    State a = random_state(seeds(), 1 + trial % 4, 4);
    State b = random_state(seeds(), 1 + (trial / 2) % 3, 4);
    State c = random_state(seeds(), 1 + (trial / 3) % 3, 4);
    State lhs = tensor(tensor(a, b), c);
    State rhs = tensor(a, tensor(b, c));
    CHECK(distance(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("bra_reduce") {
  State phi = epr();
  State r = bra_reduce("0", phi);
  CHECK(r.length() == 1);
  CHECK(r.amplitude("0") == cplx{INV_SQRT2, 0.0});
  CHECK(r.amplitude("1") == cplx{0.0, 0.0});

  State exact = bra_reduce("01", State::basis("01"));
  CHECK(exact.is_scalar());
  CHECK(exact.scalar_value() == cplx{1.0, 0.0});

  CHECK(bra_reduce("010", State::basis("01")).is_null());
  CHECK(bra_reduce("0", State::null()).is_null());
  CHECK(bra_reduce("1", State::basis("01")).is_null());  // no matching component
}

TEST_CASE("bra_reduce undoes a basis tensor prefix") {
  std::mt19937_64 seeds(5);
  for (int trial = 0; trial < 30; ++trial) {
    State phi = random_state(seeds(), 2 + trial % 5, 6);
    for (const std::string& u : {std::string("0"), std::string("10"), std::string("011")}) {
      State combined = tensor(State::basis(u), phi);
      CHECK(bra_reduce(u, combined) == phi);
      CHECK(combined.length() == u.size() + phi.length());
    }
  }
}

TEST_CASE("inner") {
  State plus;
  plus.add("0", INV_SQRT2);
  plus.add("1", INV_SQRT2);
  State self = inner(plus, plus);
  CHECK(self.is_scalar());
  CHECK(std::abs(self.scalar_value() - cplx{1.0, 0.0}) < 1e-15);

  State partial = inner(State::basis("0"), epr());
  CHECK(partial.length() == 1);
  CHECK(std::abs(partial.amplitude("0") - cplx{INV_SQRT2, 0.0}) < 1e-15);

  CHECK(inner(plus, State::null()).is_null());
  CHECK_THROWS_AS(inner(State::null(), plus), std::invalid_argument);
}

TEST_CASE("norm") {
  CHECK(epr().norm() == doctest::Approx(1.0));
  CHECK(State::null().norm() == 0.0);
  CHECK(State::basis("0").scaled(0.6).norm() == doctest::Approx(0.6));
  CHECK(State::scalar(cplx{0.0, -0.25}).norm() == doctest::Approx(0.25));

  // norm^2 equals the direct amplitude-square sum
  State s = random_state(77, 6, 12);
  double direct = 0.0;
  for (const auto& [k, a] : s.amplitudes()) direct += std::norm(a);
  CHECK(s.norm() * s.norm() == doctest::Approx(direct));
}

TEST_CASE("half_swap") {
  // the length-3 component map from the worked example
  CHECK(half_swap(State::basis("001")) == State::basis("100"));
  CHECK(half_swap(State::basis("011")) == State::basis("101"));

  CHECK(half_swap(State::basis("1")) == State::basis("1"));
  CHECK(half_swap(State::null()).is_null());

  std::mt19937_64 seeds(19);
  for (std::size_t len = 2; len <= 9; ++len) {
    State s = random_state(seeds(), len, 8);
    State once = half_swap(s);
    CHECK(once.length() == len);
    CHECK(once.norm() == doctest::Approx(s.norm()));
    // inverse split undoes the forward one at every length
    CHECK(distance(half_swap(once, true), s) <= 1e-15);
    if (len % 2 == 0) CHECK(distance(half_swap(once), s) <= 1e-15);
  }
}

TEST_CASE("zero amplitudes vanish") {
  State s;
  s.add("01", cplx{0.5, 0.0});
  s.add("01", cplx{-0.5, 0.0});
  CHECK(s.is_null());

  State t;
  t.add("01", cplx{0.5, 0.0});
  t.add("10", cplx{0.0, 0.0});
  CHECK(t.amplitudes().size() == 1);
}

TEST_CASE("state text format round trip") {
  State s;
  s.add("0101", cplx{0.12345678901234567, -1.5});
  s.add("1111", cplx{1.0 / 3.0, 2e-17});
  std::ostringstream out;
  write_state(out, s);
  std::istringstream in(out.str());
  State back = read_state(in);
  CHECK(back == s);

  std::ostringstream null_out;
  write_state(null_out, State::null());
  std::istringstream null_in(null_out.str());
  CHECK(read_state(null_in).is_null());

  // scalars use "-" for the empty bitstring
  std::ostringstream sc_out;
  write_state(sc_out, State::scalar(cplx{0.25, 0.75}));
  std::istringstream sc_in(sc_out.str());
  State sc = read_state(sc_in);
  CHECK(sc.is_scalar());
  CHECK(sc.scalar_value() == cplx{0.25, 0.75});

  std::istringstream bad("length 2\n010 1 0\n");
  CHECK_THROWS_AS(read_state(bad), state_format_error);
}
