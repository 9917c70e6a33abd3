#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "cavnet/error.hpp"
#include "cavnet/optics.hpp"

using namespace cavnet;
using namespace cavnet::optics;

namespace {

// Independent high-precision evaluation of the loss budget and coupling formulas.
constexpr double kXi[] = {0.94062999030092193, 0.89685550607437341, 0.94489590783391145, 0.94489590783391145};
constexpr double kM[] = {16.843520913481146, 9.6951370057723136, 18.147472550421711, 18.147472550421711};
constexpr double kD = 0.0069755570667648951;
constexpr double kGammaInt[] = {0.047815016167310637, 0.049752305162760837, 0.047626884838809753,
                                0.047626884838809753};
constexpr double kGammaOut1Raw = 0.14610296011634583;
constexpr double kGammaOut1 = 0.029220592023269167;
constexpr double kGammaOut34 = 0.015672922723083729;
constexpr double kGammaDet = 1.0450781486467919;

void check_complex(Complex got, Complex want, double rel = 1e-12) {
  CHECK(std::abs(got - want) <= rel * std::max(1.0, std::abs(want)));
}

}  // namespace

TEST_CASE("loss parameter, round trips and internal loss") {
  const NetworkSpec net = NetworkSpec::reference_geometry();
  for (int j = 0; j < 4; ++j) {
    const CavitySpec& c = net.cavities[static_cast<std::size_t>(j)];
    const double xi = loss_parameter(c);
    CHECK(xi == doctest::Approx(kXi[j]).epsilon(1e-13));
    CHECK(round_trips(xi) == doctest::Approx(kM[j]).epsilon(1e-12));
    const InternalLoss loss = internal_dissipation(c);
    CHECK(loss.D == doctest::Approx(kD).epsilon(1e-13));
    CHECK(loss.gamma == doctest::Approx(kGammaInt[j]).epsilon(1e-12));
  }
}

TEST_CASE("external and detector rates") {
  const NetworkSpec net = NetworkSpec::reference_geometry();
  CHECK(external_dissipation(net.cavities[0]) == doctest::Approx(kGammaOut1).epsilon(1e-12));
  CavitySpec no_feedback = net.cavities[0];
  no_feedback.feedback_recovery = 0.0;
  CHECK(external_dissipation(no_feedback) == doctest::Approx(kGammaOut1Raw).epsilon(1e-12));
  CHECK(external_dissipation(net.cavities[2]) == doctest::Approx(kGammaOut34).epsilon(1e-12));
  CHECK(detector_rate(net.cavities[1]) == doctest::Approx(kGammaDet).epsilon(1e-12));

  CavitySpec perfect = net.cavities[2];
  perfect.r_out = 1.0;
  CHECK(external_dissipation(perfect) == 0.0);
}

TEST_CASE("derived rate set routes the sink mirror to the detector") {
  const RateSet rates = derive_rates(NetworkSpec::reference_geometry(), 0.25, false);
  CHECK(rates.n_sites == 4);
  CHECK(rates.detector_site == 2);
  CHECK(rates.detector_rate == doctest::Approx(kGammaDet).epsilon(1e-12));
  CHECK(rates.dissipation[0] == doctest::Approx(kGammaInt[0] + kGammaOut1).epsilon(1e-12));
  CHECK(rates.dissipation[1] == doctest::Approx(kGammaInt[1]).epsilon(1e-12));
  CHECK(rates.dissipation[2] == doctest::Approx(kGammaInt[2] + kGammaOut34).epsilon(1e-12));
  CHECK(rates.diagnostics[1].gamma_out == 0.0);
  for (double g : rates.dephasing) CHECK(g == 0.25);
  for (double r : rates.dissipation) CHECK(r >= 0.0);
  CHECK_NOTHROW(rates.validate());
}

TEST_CASE("directed couplings under the buildup denominator") {
  const NetworkSpec net = NetworkSpec::reference_geometry();
  check_complex(coupling(1, 2, net), 10.240228071168544);
  check_complex(coupling(2, 1, net), 17.790516582989144);
  check_complex(coupling(1, 3, net), Complex(0.0, 25.716276076073087));
  check_complex(coupling(3, 1, net), Complex(0.0, 23.868482660640603));
  check_complex(coupling(3, 2, net), Complex(0.0, 13.738707643340651));
}

TEST_CASE("symmetric couplings under both denominator modes") {
  NetworkSpec net = NetworkSpec::reference_geometry();
  const RateSet buildup = derive_rates(net, 0.0, false);
  check_complex(buildup.coupling(1, 2), 13.497368162486897);
  check_complex(buildup.coupling(1, 3), Complex(0.0, 24.775158720339154));
  check_complex(buildup.coupling(1, 4), Complex(0.0, 24.775158720339154));
  check_complex(buildup.coupling(2, 3), Complex(0.0, 18.796499639150999));
  check_complex(buildup.coupling(2, 4), Complex(0.0, 18.796499639150999));
  check_complex(buildup.coupling(3, 4), 19.167780478083659);
  check_complex(buildup.coupling(3, 1), std::conj(buildup.coupling(1, 3)));

  net.coupling_denominator_mode = DenominatorMode::Literal1MinusM;
  const RateSet literal = derive_rates(net, 0.0, false);
  check_complex(literal.coupling(1, 2), -0.089989453279715641);
  check_complex(literal.coupling(1, 3), Complex(0.0, -0.085973780133452916));
  check_complex(literal.coupling(2, 4), Complex(0.0, -0.11605227499717908));
  check_complex(literal.coupling(3, 4), -0.06159643288408115);
}

TEST_CASE("loss parameter is monotone in each input") {
  CavitySpec c;
  double prev = 0.0;
  for (double r = 0.5; r < 0.999; r += 0.05) {
    c.r_in = r;
    const double xi = loss_parameter(c);
    CHECK(xi > prev);
    prev = xi;
  }
  c = CavitySpec{};
  prev = 0.0;
  for (double r = 0.5; r <= 1.0; r += 0.05) {
    c.r_out = r;
    const double xi = loss_parameter(c);
    CHECK(xi > prev);
    prev = xi;
  }
  c = CavitySpec{};
  prev = 1.0;
  for (double a = 0.0; a < 5.0; a += 0.5) {
    c.absorption_alpha = a;
    const double xi = loss_parameter(c);
    CHECK(xi < prev);
    prev = xi;
  }
}

TEST_CASE("propagation phase is periodic and snaps at resonance") {
  const double lambda = 800e-9;
  CHECK(propagation_phase(0.2, lambda) == 0.0);
  CHECK(propagation_phase(0.01, lambda) == 0.0);
  const double off = 0.2 + lambda / 4.0;
  CHECK(propagation_phase(off, lambda) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-6));
  for (double l : {1e-7, 3.3e-7, 0.123456789}) {
    CHECK(std::abs(std::polar(1.0, propagation_phase(l, lambda)) -
                   std::polar(1.0, propagation_phase(l + 7 * lambda, lambda))) < 1e-6);
  }
  const double p = propagation_phase(0.3e-6, lambda);
  CHECK(p >= -std::numbers::pi);
  CHECK(p < std::numbers::pi);
}

TEST_CASE("uncoupled pairs and missing connectivity") {
  NetworkSpec net = NetworkSpec::reference_geometry();
  net.reflection_counts.erase({1, 4});
  net.reflection_counts.erase({4, 1});
  const RateSet rates = derive_rates(net, 0.0, false);
  CHECK(rates.coupling(1, 4) == Complex(0.0));
  CHECK_THROWS_AS(inter_cavity_transfer(1, 4, net), SpecError);

  net.reflection_counts.erase({1, 3});
  try {
    derive_rates(net, 0.0, false);
    FAIL("expected a validation error");
  } catch (const SpecError& e) {
    CHECK(e.field() == "network.reflection_counts(3,1)");
  }
}

TEST_CASE("invalid cavities name the offending field") {
  NetworkSpec net = NetworkSpec::reference_geometry();
  net.cavities[2].r_in = -0.1;
  try {
    derive_rates(net, 0.0, false);
    FAIL("expected a validation error");
  } catch (const SpecError& e) {
    CHECK(e.field() == "network.cavities[2].r_in");
  }
  net = NetworkSpec::reference_geometry();
  net.bs_transmittivity_eta = 1.0;
  CHECK_THROWS_AS(net.validate(), SpecError);
  CHECK_THROWS_AS(derive_rates(NetworkSpec::reference_geometry(), -1.0, false), SpecError);
}

TEST_CASE("preset rate set") {
  const RateSet rates = paper_preset_rates(1.0);
  CHECK(rates.coupling(1, 2) == Complex(4.3));
  CHECK(rates.coupling(1, 3) == Complex(5.7));
  CHECK(rates.coupling(1, 4) == Complex(7.6));
  CHECK(rates.coupling(2, 3) == Complex(6.1));
  CHECK(rates.coupling(2, 4) == Complex(4.5));
  CHECK(rates.coupling(4, 3) == Complex(5.9));
  for (double g : rates.dissipation) CHECK(g == 0.07);
  for (double g : rates.dephasing) CHECK(g == 1.0);
  CHECK(rates.detector_rate == 1.0);
  CHECK(rates.diagnostics.empty());
  CHECK(derive_rates(NetworkSpec::reference_geometry(), 0.0, true).coupling(1, 4) == Complex(7.6));
}

TEST_CASE("beamsplitter amplitudes at a general transmittivity") {
  NetworkSpec net = NetworkSpec::reference_geometry();
  const Complex t_half = inter_cavity_transfer(1, 2, net);
  net.bs_transmittivity_eta = 0.3;
  const Complex t_direct = inter_cavity_transfer(1, 2, net);
  // Direct links reflect once.
  CHECK(std::abs(t_direct) / std::abs(t_half) == doctest::Approx(std::sqrt(0.7 / 0.5)));
}
