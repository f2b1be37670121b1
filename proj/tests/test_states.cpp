#include <doctest.h>

#include <cmath>

#include "qneg/error.hpp"
#include "qneg/grid_fourier.hpp"
#include "qneg/laguerre.hpp"
#include "qneg/states.hpp"
#include "support.hpp"

using namespace qneg;
using oracle::pi;

TEST_CASE("order parameter domain") {
  CHECK(OrderParameter(1.0).damping() == 0.0);
  CHECK(OrderParameter(0.0).damping() == doctest::Approx(pi * pi / 2.0));
  CHECK(OrderParameter(-1.0).damping() == doctest::Approx(pi * pi));
  CHECK_THROWS_AS(OrderParameter(1.5), DomainError);
  try {
    OrderParameter(1.5);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("s <= 1") != std::string::npos);
  }
}

TEST_CASE("state invariants") {
  CHECK_THROWS_AS(StateSpec(Thermal{-0.1}), DomainError);
  CHECK_THROWS_AS(StateSpec(Fock{-1}), DomainError);
  CHECK_THROWS_AS(StateSpec(PhotonAddedThermal{0.0}), DomainError);
  CHECK_THROWS_AS(StateSpec(Mixture{}), DomainError);
  CHECK_THROWS_AS(StateSpec(Mixture{{{0.5, Fock{1}}, {0.4, Fock{0}}}}), DomainError);
  CHECK_THROWS_AS(StateSpec(Mixture{{{1.2, Fock{1}}, {-0.2, Fock{0}}}}), DomainError);
  CHECK_NOTHROW(StateSpec(Mixture{{{0.5, Fock{1}}, {0.5, Fock{0}}}}));

  StateSpec nested = Fock{1};
  for (int depth = 0; depth < 4; ++depth) nested = Mixture{{{1.0, nested}}};
  CHECK_NOTHROW(validate(nested));
  CHECK_THROWS_AS(StateSpec(Mixture{{{1.0, nested}}}), DomainError);
}

TEST_CASE("laguerre recurrence against the explicit sum") {
  gen::Source src(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = src.integer(0, 20);
    const double x = src.uniform(0.0, 30.0);
    // The explicit sum cancels badly; compare against the size of its largest term.
    CAPTURE(n);
    CAPTURE(x);
    CHECK(std::abs(laguerre(n, x) - oracle::laguerre_sum(n, x)) <= 1e-13 * oracle::laguerre_term_bound(n, x));
  }
  CHECK_THROWS_AS(laguerre(-1, 0.0), DomainError);
}

TEST_CASE("characteristic function examples") {
  gen::Source src(11);
  for (int i = 0; i < 50; ++i) {
    const auto st = src.state();
    const OrderParameter s(src.uniform(-1.0, 1.0));
    CHECK(std::abs(char_fn(st, s, Complex(0.0, 0.0)) - 1.0) < 1e-15);
  }
  const double r = 1.0 / pi;
  CHECK(std::abs(char_fn(Fock{1}, OrderParameter(0.0), Complex(r, 0.0))) < 1e-15);
  const double spat = char_fn(PhotonAddedThermal{2.0}, OrderParameter(1.0), Complex(0.1, 0.0)).real();
  CHECK(spat == doctest::Approx((1.0 - 0.03 * pi * pi) * std::exp(-0.02 * pi * pi)).epsilon(1e-14));
  CHECK(spat == doctest::Approx(0.575).epsilon(5e-3));
}

TEST_CASE("hermiticity of every characteristic function") {
  gen::Source src(0x4E5);
  for (int i = 0; i < 300; ++i) {
    const auto st = src.state();
    const OrderParameter s(src.uniform(-1.0, 1.0));
    const Complex b = src.beta(1.0);
    const Complex plus = char_fn(st, s, b), minus = char_fn(st, s, -b);
    CAPTURE(st.describe());
    CHECK(std::abs(minus - std::conj(plus)) <= 1e-13 * std::max(1.0, std::abs(plus)));
  }
}

TEST_CASE("mixture linearity is exact") {
  gen::Source src(21);
  for (int i = 0; i < 100; ++i) {
    const auto a = src.pure_state(), b = src.pure_state();
    const double p = src.uniform(0.05, 0.95);
    const StateSpec mix = Mixture{{{p, a}, {1.0 - p, b}}};
    const OrderParameter s(src.uniform(-1.0, 1.0));
    const Complex beta = src.beta(0.8);
    const Complex expect = p * char_fn(a, s, beta) + (1.0 - p) * char_fn(b, s, beta);
    CHECK(std::abs(char_fn(mix, s, beta) - expect) <= 1e-15 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("fock s-family matches the Gaussian-damped s = 1 function") {
  gen::Source src(5);
  for (int i = 0; i < 200; ++i) {
    const int n = src.integer(0, 8);
    const double s = src.uniform(-1.0, 1.0);
    const Complex b = src.beta(1.0);
    const double expect = std::exp((s - 1.0) * pi * pi * std::norm(b) / 2.0) * oracle::laguerre_sum(n, pi * pi * std::norm(b));
    CHECK(char_fn(Fock{n}, OrderParameter(s), b).real() == doctest::Approx(expect).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("squeezed vacuum carries s inside its exponent") {
  const double r = 0.4, s = 0.3, x = 0.2, y = -0.3;
  const double expect = std::exp(pi * pi / 2.0 * ((s - std::exp(2 * r)) * x * x + (s - std::exp(-2 * r)) * y * y));
  CHECK(char_fn(SqueezedVacuum{r}, OrderParameter(s), Complex(x, y)).real() == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("closed-form quasiprobabilities") {
  CHECK(*analytic_quasiprob(Fock{1}, OrderParameter(0.0), 0.0) == doctest::Approx(-2.0 / pi));
  CHECK(*analytic_quasiprob(PhotonAddedThermal{2.0}, OrderParameter(1.0), 0.0) == doctest::Approx(-1.0 / (4.0 * pi)));
  CHECK(*analytic_quasiprob(Thermal{1.0}, OrderParameter(1.0), 0.0) == doctest::Approx(1.0 / pi));
  CHECK_FALSE(analytic_quasiprob(Coherent{{1.0, 0.0}}, OrderParameter(1.0), 0.0).has_value());
  CHECK_FALSE(analytic_quasiprob(Fock{2}, OrderParameter(1.0), 0.0).has_value());
  CHECK_FALSE(analytic_quasiprob(SqueezedVacuum{0.3}, OrderParameter(0.0), 0.0).has_value());
  CHECK_FALSE(analytic_quasiprob(Thermal{0.0}, OrderParameter(1.0), 0.0).has_value());

  gen::Source src(8);
  for (int i = 0; i < 100; ++i) {
    const int n = src.integer(0, 6);
    const double s = src.uniform(-0.95, 0.95);
    const Complex a = src.beta(3.0);
    CHECK(*analytic_quasiprob(Fock{n}, OrderParameter(s), a) ==
          doctest::Approx(oracle::fock_ps(n, s, std::norm(a))).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("oracle consistency: transform of chi_s matches the closed forms") {
  const GridSpec spec(8.0, 512);
  struct Case {
    StateSpec state;
    double s;
  };
  const std::vector<Case> cases = {
      {Fock{1}, 0.0},   {Fock{2}, -0.5},           {Fock{3}, 0.3},     {Fock{1}, 0.6},
      {Thermal{1.0}, 1.0}, {Thermal{0.5}, 0.0},    {Coherent{{0.7, -0.4}}, 0.0},
      {PhotonAddedThermal{2.0}, 1.0}, {PhotonAddedThermal{0.7}, 1.0},
      {Mixture{{{0.4, Fock{1}}, {0.6, Thermal{1.0}}}}, 0.0}};
  for (const auto& c : cases) {
    CAPTURE(c.state.describe());
    CAPTURE(c.s);
    const OrderParameter s(c.s);
    const auto p = fourier_paper(
        sample_function([&](Complex b) { return char_fn(c.state, s, b); }, spec, Domain::Beta));
    const int n = spec.samples();
    double err = 0.0;
    for (int j = n / 4; j < 3 * n / 4; j += 3)
      for (int k = n / 4; k < 3 * n / 4; k += 3)
        err = std::max(err, std::abs(p(j, k).real() - *analytic_quasiprob(c.state, s, p.node(j, k))));
    CHECK(err < 1e-4);
  }
}

TEST_CASE("spat closed form against its own negative-volume oracle") {
  const double closed = oracle::spat_negativity(2.0);
  const double radial = oracle::radial_negativity([](double r2) { return oracle::spat_p(2.0, r2); }, 3.0);
  CHECK(closed == doctest::Approx(radial).epsilon(1e-9));
  CHECK(closed == doctest::Approx(0.0748).epsilon(1e-3));
}

TEST_CASE("growth bound") {
  gen::Source src(13);
  std::vector<Complex> betas = src.betas(200, 2.0);
  const auto coh = bound_check(Coherent{{1.0, 0.5}}, OrderParameter(1.0), betas);
  CHECK(coh.holds);
  CHECK(coh.max_ratio <= 1.0 + 1e-15);

  std::vector<Complex> real_axis;
  for (int i = 1; i <= 50; ++i) real_axis.emplace_back(0.05 * i, 0.0);
  const auto sq = bound_check(SqueezedVacuum{1.0}, OrderParameter(1.0), real_axis);
  CHECK(sq.holds);
  CHECK(sq.max_ratio < 1.0);

  const std::vector<Complex> at_two = {Complex(2.0, 0.0), Complex(0.0, 2.0)};
  const auto f3 = bound_check(Fock{3}, OrderParameter(1.0), at_two);
  CHECK(f3.max_ratio == doctest::Approx(std::abs(oracle::laguerre_sum(3, 4 * pi * pi)) * std::exp(-2 * pi * pi)));
  CHECK(f3.max_ratio < 1e-3);

  for (int i = 0; i < 30; ++i) {
    const auto st = src.state();
    CAPTURE(st.describe());
    CHECK(bound_check(st, OrderParameter(1.0), betas).holds);
  }
}
