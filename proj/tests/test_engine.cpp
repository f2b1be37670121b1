#include <doctest.h>

#include <cmath>

#include "qneg/engine.hpp"
#include "qneg/error.hpp"
#include "support.hpp"

using namespace qneg;
using oracle::pi;

namespace {

const FilterSpec kEps = FilterSpec::power_exp(0.21, 1.0);

}  // namespace

TEST_CASE("verdict rules") {
  const std::vector<double> settling = {0.0716, 0.0741, 0.0746, 0.07476, 0.07479};
  const auto v = classify(settling);
  REQUIRE(std::holds_alternative<Converged>(v));
  CHECK(std::get<Converged>(v).limit_estimate == 0.07479);
  CHECK(std::get<Converged>(v).uncertainty == doctest::Approx(0.07479 - 0.0746));

  const std::vector<double> growing = {0.06, 0.1, 0.23, 1.4, 2180.0};
  const auto d = classify(growing);
  REQUIRE(std::holds_alternative<Diverging>(d));
  CHECK(std::get<Diverging>(d).growth_rate == doctest::Approx(2180.0 / 1.4));

  // Growing but still small, or too few points: inconclusive.
  CHECK(std::holds_alternative<Inconclusive>(classify(std::vector<double>{0.1, 0.2, 0.4, 0.8, 1.6})));
  CHECK(std::holds_alternative<Inconclusive>(classify(std::vector<double>{1.0, 20.0})));
  CHECK(std::holds_alternative<Inconclusive>(classify(std::vector<double>{1e-5, 3e-5, 2e-5, 5e-5})));
  CHECK(std::holds_alternative<Converged>(classify(std::vector<double>{0.0, 0.0, 0.0, 0.0})));
  CHECK(describe(Verdict{Diverging{2.0}}) == "diverging");
}

TEST_CASE("geometric schedule") {
  const auto w = geometric_schedule(2.0, 2.0, 5);
  CHECK(w == std::vector<double>{2, 4, 8, 16, 32});
}

TEST_CASE("grid resolution follows the decay of chi_s Omega") {
  const auto chi = characteristic(Fock{1});
  const auto spec = resolve_grid(chi, OrderParameter(0.0), std::nullopt);
  CHECK(spec.half_extent() == 8.0);
  CHECK(spec.samples() == 256);

  const auto wide = resolve_grid(characteristic(Coherent{{1.0, 0.0}}), OrderParameter(1.0), kEps.with_width(8.0));
  CHECK(wide.half_extent() >= 8.0 * std::pow(25.0, 1.0 / 2.21));
  CHECK_THROWS_AS(resolve_grid(characteristic(Coherent{{1.0, 0.0}}), OrderParameter(1.0), std::nullopt), GuardError);

  GridPolicy capped;
  capped.max_samples = 512;
  CHECK_THROWS_AS(resolve_grid(characteristic(Coherent{{1.0, 0.0}}), OrderParameter(1.0), kEps.with_width(8.0), capped),
                  GuardError);

  GridPolicy fixed;
  fixed.half_extent = 5.0;
  fixed.samples = 128;
  CHECK(resolve_grid(chi, OrderParameter(0.0), std::nullopt, fixed) == GridSpec(5.0, 128));
}

TEST_CASE("boundary guard message") {
  try {
    (void)negativity(characteristic(SqueezedVacuum{0.5}), OrderParameter(1.0), std::nullopt, GridSpec(6.0, 256));
    FAIL("expected GuardError");
  } catch (const GuardError& e) {
    CHECK(std::string(e.what()).find("increase R or apply filter") != std::string::npos);
  }
}

TEST_CASE("filtered quasiprobability examples") {
  const auto thermal = filtered_quasiprob(Thermal{1.0}, OrderParameter(1.0), std::nullopt, GridSpec(8.0, 256));
  CHECK(thermal.values().real().minCoeff() >= -1e-8);

  const GridSpec spec(8.0, 512);
  const auto w = filtered_quasiprob(Fock{1}, OrderParameter(0.0), std::nullopt, spec);
  double err = 0.0;
  for (int j = 128; j < 384; ++j)
    for (int k = 128; k < 384; ++k) err = std::max(err, std::abs(w(j, k).real() - oracle::fock_ps(1, 0.0, std::norm(w.node(j, k)))));
  CHECK(err < 1e-4);

  const auto spat = filtered_quasiprob(PhotonAddedThermal{2.0}, OrderParameter(1.0), kEps.with_width(4.0),
                                       GridSpec(8.0, 256));
  const int o = spat.spec().origin_index();
  CHECK(spat(o, o).real() < 0.0);
  CHECK(spat.values().real().maxCoeff() > 0.0);
  CHECK(spat.values().isFinite().all());
}

TEST_CASE("negativity examples") {
  CHECK(negativity(Thermal{2.0}, OrderParameter(1.0), kEps.with_width(6.0)).value < 1e-3);
  const auto fock = negativity(Fock{1}, OrderParameter(0.0), std::nullopt);
  CHECK(fock.value == doctest::Approx(2.0 * std::exp(-0.5) - 1.0).epsilon(1e-3));
  CHECK(std::abs(fock.value - oracle::fock_ns(1, 0.0)) < 1e-3);
  CHECK(fock.diagnostics.total_mass == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(fock.diagnostics.imag_residue < 1e-8);
  CHECK(fock.diagnostics.parseval_residual < 1e-6);
  CHECK(fock.state == "fock(n=1)");
}

TEST_CASE("spat sweep settles near the closed form") {
  const auto report = sweep_w(PhotonAddedThermal{2.0}, OrderParameter(1.0), kEps, {2, 4, 8, 16, 32});
  REQUIRE(report.entries.size() == 5);
  for (std::size_t i = 1; i < report.entries.size(); ++i) {
    REQUIRE(report.entries[i].result);
    CHECK(report.entries[i].result->value >= report.entries[i - 1].result->value);
  }
  REQUIRE(std::holds_alternative<Converged>(report.verdict));
  CHECK(std::get<Converged>(report.verdict).limit_estimate ==
        doctest::Approx(oracle::spat_negativity(2.0)).epsilon(0.05));
}

TEST_CASE("squeezed sweeps diverge at representable widths and fail beyond them") {
  const auto small = sweep_w(SqueezedVacuum{0.8}, OrderParameter(1.0), kEps, geometric_schedule(0.5, 1.1, 5));
  CHECK(std::holds_alternative<Diverging>(small.verdict));
  // Widths of 2 and beyond need magnitudes far outside double range.
  CHECK_THROWS_AS(sweep_w(SqueezedVacuum{0.8}, OrderParameter(1.0), kEps, {2, 4, 8, 16, 32}), GuardError);
}

TEST_CASE("coherent filtered negativity sits on the filter constant") {
  const double delta = filter_negativity_delta(0.21).delta;
  for (double w : {2.0, 4.0}) {
    const auto r = negativity(Coherent{{1.0, 0.0}}, OrderParameter(1.0), kEps.with_width(w));
    CAPTURE(w);
    CHECK(r.value == doctest::Approx(delta).epsilon(0.2));
  }
}

TEST_CASE("sweep schedule preconditions") {
  CHECK_THROWS_AS(sweep_w(Fock{1}, OrderParameter(1.0), kEps, {2, 4, 8}), ContractError);
  CHECK_THROWS_AS(sweep_w(Fock{1}, OrderParameter(1.0), kEps, {2, 8, 4, 16}), ContractError);
  CHECK_THROWS_AS(sweep_s(Fock{1}, {0.0, -0.5}), ContractError);
  CHECK_THROWS_AS(sweep_s(Fock{1}, {0.0, 1.5}), DomainError);
}

TEST_CASE("s-sweeps of Fock states") {
  const auto one = sweep_s(Fock{1}, {-0.5, 0.0, 0.5});
  REQUIRE(one.size() == 3);
  for (const auto& e : one) {
    REQUIRE(e.value);
    CHECK(e.method == "unfiltered");
  }
  CHECK(*one[0].value < *one[1].value);
  CHECK(*one[1].value < *one[2].value);
  CHECK(*one[1].value == doctest::Approx(0.21306).epsilon(1e-3));

  double previous = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const double v = *sweep_s(Fock{n}, {0.0}).front().value;
    CHECK(v > previous);
    previous = v;
  }
}

TEST_CASE("squeezed vacuum below its threshold order has no negativity") {
  const double s = std::exp(-1.0) - 0.1;
  const auto est = sweep_s(SqueezedVacuum{0.5}, {s}).front();
  REQUIRE(est.value);
  CHECK(*est.value < 1e-3);
}

TEST_CASE("s-monotonicity across the catalog") {
  const std::vector<StateSpec> states = {Fock{1}, Fock{4}, Thermal{1.0}, Coherent{{0.5, 1.0}},
                                         PhotonAddedThermal{1.0}, Mixture{{{0.6, Fock{2}}, {0.4, Thermal{0.3}}}}};
  const std::vector<double> s_list = {-0.6, -0.2, 0.0, 0.3, 0.6};
  for (const auto& st : states) {
    CAPTURE(st.describe());
    const auto table = sweep_s(st, s_list);
    for (std::size_t i = 1; i < table.size(); ++i) {
      REQUIRE(table[i].value);
      CHECK(*table[i].value >= *table[i - 1].value - 1e-3);
    }
  }
}

TEST_CASE("gaussian filter at s = 1 equals the s-ordered negativity") {
  for (int n : {1, 2})
    for (double s : {0.0, -0.5}) {
      const auto g = FilterSpec::gaussian_for_order(OrderParameter(s));
      const GridSpec spec(8.0, 512);
      const double via_filter = negativity(characteristic(Fock{n}), OrderParameter(1.0), g, spec).value;
      const double direct = negativity(characteristic(Fock{n}), OrderParameter(s), std::nullopt, spec).value;
      CAPTURE(n);
      CAPTURE(s);
      CHECK(std::abs(via_filter - direct) < 1e-4);
    }
}

TEST_CASE("finiteness and normalization of filtered quasiprobabilities") {
  gen::Source src(0xF1F1);
  for (int i = 0; i < 12; ++i) {
    const auto st = src.state();
    const bool squeezed_like = st.describe().find("squeezed") != std::string::npos;
    const double w = squeezed_like ? 0.55 : src.uniform(1.0, 6.0);
    CAPTURE(st.describe());
    const auto r = negativity(st, OrderParameter(1.0), kEps.with_width(w));
    CHECK(std::isfinite(r.value));
    CHECK(r.value >= 0.0);
    CHECK(r.diagnostics.total_mass == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("grid refinement leaves the negativity in place") {
  const auto chi = characteristic(PhotonAddedThermal{2.0});
  const auto f = kEps.with_width(8.0);
  const auto spec = resolve_grid(chi, OrderParameter(1.0), f);
  const double coarse = negativity(chi, OrderParameter(1.0), f, spec).value;
  const double fine = negativity(chi, OrderParameter(1.0), f, GridSpec(spec.half_extent(), 2 * spec.samples())).value;
  CHECK(std::abs(coarse - fine) < 1e-3);
}

TEST_CASE("evaluation is deterministic") {
  const auto a = negativity(Fock{2}, OrderParameter(0.3), std::nullopt);
  const auto b = negativity(Fock{2}, OrderParameter(0.3), std::nullopt);
  CHECK(a.value == b.value);
  CHECK(a.diagnostics.total_mass == b.diagnostics.total_mass);
}

TEST_CASE("observer sees every evaluation") {
  int calls = 0;
  set_evaluation_observer([&](const CharacteristicFunction&, const NegativityResult&) { ++calls; });
  (void)sweep_w(PhotonAddedThermal{2.0}, OrderParameter(1.0), kEps, {2, 4, 8, 16});
  set_evaluation_observer({});
  CHECK(calls == 4);
}

TEST_CASE("robustness decomposition") {
  const auto spat = robustness_decomposition(PhotonAddedThermal{2.0}, OrderParameter(1.0), kEps.with_width(8.0));
  CHECK(spat.mixture_negativity < 1e-8);
  CHECK(spat.r_w == doctest::Approx(oracle::spat_negativity(2.0)).epsilon(0.05));
  CHECK(spat.sigma_mass == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(spat.sigma_grid.values().real().minCoeff() >= 0.0);

  const auto wigner = robustness_decomposition(Fock{1}, OrderParameter(0.0), std::nullopt);
  CHECK(wigner.r_w == doctest::Approx(0.213).epsilon(2e-3));
  CHECK(wigner.mixture_negativity < 1e-8);

  try {
    (void)robustness_decomposition(Thermal{1.0}, OrderParameter(1.0), std::nullopt);
    FAIL("expected ContractError");
  } catch (const ContractError& e) {
    CHECK(std::string(e.what()).find("already classical") != std::string::npos);
  }
}
