#include <doctest.h>

#include <sstream>

#include "approx.hpp"
#include "cavnet/error.hpp"
#include "cavnet/io.hpp"
#include "cavnet/liouville.hpp"

using namespace cavnet;

TEST_CASE("network round trip") {
  optics::NetworkSpec net = optics::NetworkSpec::reference_geometry();
  net.coupling_denominator_mode = optics::DenominatorMode::Literal1MinusM;
  net.cavities[3].distance_l = 0.2 + 1e-7;
  const optics::NetworkSpec back = network_from_json(to_json(net));
  REQUIRE(back.n_sites() == 4);
  CHECK(back.cavities[0].feedback_recovery == 0.8);
  CHECK(back.cavities[3].distance_l == net.cavities[3].distance_l);
  CHECK(back.direct_pairs == net.direct_pairs);
  CHECK(back.reflection_counts == net.reflection_counts);
  CHECK(back.coupling_denominator_mode == optics::DenominatorMode::Literal1MinusM);
  CHECK(to_json(back) == to_json(net));
}

TEST_CASE("network defaults and errors") {
  const Json minimal = Json::parse(R"({"cavities": [
      {"r_in": 0.9, "r_out": 0.99, "length_d": 0.01, "absorption_alpha": 0.35},
      {"r_in": 0.9, "r_out": 0.9, "length_d": 0.01, "absorption_alpha": 0.35}]})");
  const optics::NetworkSpec net = network_from_json(minimal);
  CHECK(net.bs_transmittivity_eta == 0.5);
  CHECK(net.is_direct(1, 2));
  CHECK(net.reflection_counts.at({2, 1}) == 1);

  Json bad = minimal;
  bad["cavities"][1]["r_out"] = -0.5;
  try {
    network_from_json(bad);
    FAIL("expected a validation error");
  } catch (const SpecError& e) {
    CHECK(e.field() == "network.cavities[1].r_out");
  }

  Json extra = minimal;
  extra["colour"] = "blue";
  try {
    network_from_json(extra);
    FAIL("expected a validation error");
  } catch (const SpecError& e) {
    CHECK(e.field() == "network.colour");
  }

  Json missing = minimal;
  missing["cavities"][0].erase("r_in");
  CHECK_THROWS_AS(network_from_json(missing), SpecError);

  Json mode = minimal;
  mode["coupling_denominator_mode"] = "other";
  CHECK_THROWS_AS(network_from_json(mode), SpecError);
}

TEST_CASE("density matrix round trip") {
  const Basis b = build_basis(2, true, true);
  Matrix m = Matrix::Zero(b.dim(), b.dim());
  m(b.vacuum(0), b.vacuum(0)) = 0.5;
  m(b.site(2, 1), b.site(2, 1)) = 0.5;
  m(b.vacuum(0), b.site(2, 1)) = Complex(0.0, 0.5);
  m(b.site(2, 1), b.vacuum(0)) = Complex(0.0, -0.5);
  const DensityMatrix rho(b, m);
  const Json doc = to_json(rho);
  CHECK(doc["labels"][5] == "SITE1|ANC1");
  const DensityMatrix back = density_matrix_from_json(doc);
  CHECK(back.basis() == b);
  CHECK(test::max_abs_diff(back.data(), m) == 0.0);

  Json broken = doc;
  broken["data"].erase(0);
  CHECK_THROWS_AS(density_matrix_from_json(broken), SpecError);
}

TEST_CASE("shortest round-trip number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(20.0) == "20");
  CHECK(format_number(1e-20) == "1e-20");
  const double x = 0.41870908164148307;
  CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("trajectory CSV layout") {
  CHECK(trajectory_csv_header(2) ==
        std::vector<std::string>{"time_ns", "pop_site1", "pop_site2", "pop_vac", "pop_sink", "p_sink_integral"});
  const Basis b = build_basis(2, true, false);
  RateSet r;
  r.n_sites = 2;
  r.set_coupling(1, 2, 1.0);
  r.dissipation = {0.1, 0.1};
  r.dephasing = {0.0, 0.0};
  r.detector_rate = 0.5;
  const Trajectory tr = evolve(initial_state(b, InitialState::single_photon_site(1)), build_liouvillian(r, b), 0.01,
                               1e-3, {5, true});
  std::ostringstream os;
  write_trajectory_csv(os, tr);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "time_ns,pop_site1,pop_site2,pop_vac,pop_sink,p_sink_integral");
  std::getline(is, line);
  CHECK(line == "0,1,0,0,0,0");
  int rows = 1;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("rate set serialization") {
  const Json doc = to_json(optics::paper_preset_rates(1.0));
  CHECK(doc["n_sites"] == 4);
  CHECK(doc["couplings"].size() == 6);
  CHECK(doc["couplings"][0]["pair"] == Json::array({1, 2}));
  CHECK(doc["couplings"][0]["abs"] == 4.3);
  CHECK(doc["detector_rate"] == 1.0);
}
