#include <doctest.h>

#include "approx.hpp"
#include "cavnet/error.hpp"
#include "cavnet/statespace.hpp"

using namespace cavnet;

TEST_CASE("basis dimensions and label order") {
  const Basis b = build_basis(4, true, false);
  CHECK(b.dim() == 6);
  CHECK(b.labels().front().name() == "VAC");
  CHECK(b.labels()[2].name() == "SITE2");
  CHECK(b.labels().back().name() == "SINK");
  CHECK(b.site(3) == 3);
  CHECK(b.sink() == 5);

  const Basis a = build_basis(4, false, true);
  CHECK(a.dim() == 10);
  CHECK(a.network_dim() == 5);
  CHECK(a.labels()[5].name() == "VAC|ANC1");
  CHECK(a.site(1, 1) == 6);
  CHECK(a.index_of({LabelKind::Site, 4, 1}) == 9);

  CHECK(build_basis(1, false, false).dim() == 2);
  CHECK(build_basis(3, true, true).dim() == 10);
}

TEST_CASE("basis rejects bad indices") {
  CHECK_THROWS_AS(build_basis(0, true, false), SpecError);
  const Basis b = build_basis(2, false, false);
  CHECK_THROWS_AS(b.site(3), SpecError);
  CHECK_THROWS_AS(b.sink(), SpecError);
  CHECK_THROWS_AS(b.vacuum(1), SpecError);
}

TEST_CASE("single photon initial state") {
  const Basis b = build_basis(4, true, false);
  const DensityMatrix rho = initial_state(b, InitialState::single_photon_site(1));
  CHECK(rho.site_population(1) == doctest::Approx(1.0));
  CHECK(rho.sink_population() == 0.0);
  CHECK(rho.data().trace().real() == doctest::Approx(1.0));
  const Diagnostics d = validate(rho);
  CHECK(d.hermiticity_defect == 0.0);
  CHECK(d.trace_defect < 1e-15);
  CHECK(d.min_eigenvalue > -1e-15);
  CHECK(within_tolerance(d));
  CHECK_THROWS_AS(initial_state(b, InitialState::single_photon_site(5)), SpecError);
}

TEST_CASE("EPR initial state") {
  const Basis b = build_basis(4, false, true);
  const DensityMatrix rho = initial_state(b, InitialState::epr_with_ancilla(1));
  const Matrix& m = rho.data();
  CHECK(m(b.vacuum(0), b.vacuum(0)).real() == doctest::Approx(0.5));
  CHECK(m(b.site(1, 1), b.site(1, 1)).real() == doctest::Approx(0.5));
  CHECK(m(b.vacuum(0), b.site(1, 1)).real() == doctest::Approx(0.5));
  CHECK(rho.site_population(1) == doctest::Approx(0.5));
  CHECK(rho.vacuum_population() == doctest::Approx(0.5));
  CHECK(within_tolerance(validate(rho)));
  CHECK_THROWS_AS(initial_state(build_basis(4, true, false), InitialState::epr_with_ancilla(1)), SpecError);
}

TEST_CASE("validate reports each defect") {
  const Basis b = build_basis(2, false, false);
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  CHECK(within_tolerance(validate(m)));

  Matrix skew = m;
  skew(0, 1) = Complex(0.0, 1e-6);
  CHECK(validate(skew).hermiticity_defect == doctest::Approx(1e-6));
  CHECK_FALSE(within_tolerance(validate(skew)));

  Matrix heavy = m;
  heavy(2, 2) = 1e-6;
  CHECK(validate(heavy).trace_defect == doctest::Approx(1e-6));
  CHECK_FALSE(within_tolerance(validate(heavy)));

  Matrix negative = m;
  negative(0, 0) = 1.0 + 1e-6;
  negative(2, 2) = -1e-6;
  CHECK(validate(negative).min_eigenvalue == doctest::Approx(-1e-6));
  CHECK_FALSE(within_tolerance(validate(negative)));

  Matrix slack = m;
  slack(0, 0) = 0.5 + 5e-10;
  slack(2, 2) = -5e-10;
  CHECK(within_tolerance(validate(slack)));

  CHECK_THROWS_AS(DensityMatrix(b, Matrix::Zero(2, 2)), SpecError);
}
