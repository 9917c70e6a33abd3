#include <doctest.h>

#include "approx.hpp"
#include "cavnet/error.hpp"
#include "cavnet/liouville.hpp"
#include "cavnet/oracle.hpp"

using namespace cavnet;
using namespace cavnet::oracle;

namespace {

RateSet network(int n) {
  RateSet r;
  r.n_sites = n;
  r.set_coupling(1, 2, Complex(1.1, 0.3));
  if (n >= 3) {
    r.set_coupling(2, 3, 0.8);
    r.set_coupling(1, 3, Complex(0.0, -0.6));
  }
  r.dissipation.assign(static_cast<std::size_t>(n), 0.05);
  r.dissipation[0] = 0.12;
  r.dephasing.assign(static_cast<std::size_t>(n), 0.4);
  r.detector_rate = 0.7;
  r.detector_site = 2;
  return r;
}

void check_equivalence(int n, const InitialState& init) {
  const RateSet rates = network(n);
  const Basis basis = build_basis(n, true, false);
  const FockBasis fock(n, true);
  const DensityMatrix rho0 = initial_state(basis, init);
  const Trajectory tr = evolve(rho0, build_liouvillian(rates, basis), 5.0, 1e-3, {5000, true});
  const Matrix full = fock_propagate(rates, fock, embed(rho0, fock), 5.0, 1e-3);
  CHECK(test::max_abs_diff(project(full, fock, basis), tr.states.back()) < 1e-8);
  CHECK(weight_outside_manifold(full, fock) < 1e-14);
  CHECK(std::abs(full.trace() - 1.0) < 1e-12);
}

}  // namespace

TEST_CASE("Fock register layout") {
  const FockBasis f(3, true);
  CHECK(f.n_modes() == 4);
  CHECK(f.dim() == 16);
  CHECK(f.site_bit(1) == 0);
  CHECK(f.sink_bit() == 3);
  CHECK(f.excitations(0b1011) == 3);
  CHECK_THROWS_AS(FockBasis(5, true), SpecError);
  CHECK_THROWS_AS(FockBasis(0, false), SpecError);
  CHECK_NOTHROW(FockBasis(5, false));
}

TEST_CASE("hard-core annihilators") {
  const FockBasis f(2, true);
  for (int bit = 0; bit < f.n_modes(); ++bit) {
    const Matrix a = annihilator(f, bit);
    CHECK((a * a).norm() == 0.0);
    const Matrix n = a.adjoint() * a;
    for (Index s = 0; s < f.dim(); ++s) CHECK(n(s, s).real() == static_cast<double>((s >> bit) & 1));
  }
  CHECK_THROWS_AS(annihilator(f, 3), SpecError);
}

TEST_CASE("oracle generator preserves trace") {
  const FockBasis f(3, true);
  const Matrix gen = fock_generator(network(3), f);
  Eigen::VectorXcd trace_row = Eigen::VectorXcd::Zero(f.dim() * f.dim());
  for (Index s = 0; s < f.dim(); ++s) trace_row(s * f.dim() + s) = 1.0;
  CHECK((trace_row.transpose() * gen).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("embed and project round trip") {
  const Basis b = build_basis(3, true, false);
  const FockBasis f(3, true);
  const DensityMatrix rho = initial_state(b, InitialState::single_photon_site(2));
  const Matrix big = embed(rho, f);
  CHECK(big(0b010, 0b010).real() == 1.0);
  CHECK(test::max_abs_diff(project(big, f, b), rho.data()) == 0.0);
  CHECK_THROWS_AS(embed(rho, FockBasis(2, true)), SpecError);
  CHECK_THROWS_AS(embed(initial_state(build_basis(3, true, true), InitialState::epr_with_ancilla(1)), f), SpecError);
}

TEST_CASE("single-excitation solver agrees with the Fock oracle") {
  check_equivalence(2, InitialState::single_photon_site(1));
  check_equivalence(3, InitialState::single_photon_site(1));
  check_equivalence(3, InitialState::single_photon_site(3));
}

TEST_CASE("superposition with the vacuum agrees with the Fock oracle") {
  const RateSet rates = network(3);
  const Basis basis = build_basis(3, true, false);
  const FockBasis fock(3, true);
  Matrix m = Matrix::Zero(5, 5);
  m(0, 0) = m(1, 1) = 0.5;
  m(0, 1) = m(1, 0) = 0.5;
  const DensityMatrix rho0(basis, m);
  const Trajectory tr = evolve(rho0, build_liouvillian(rates, basis), 5.0, 1e-3, {5000, true});
  const Matrix full = fock_propagate(rates, fock, embed(rho0, fock), 5.0, 1e-3);
  CHECK(test::max_abs_diff(project(full, fock, basis), tr.states.back()) < 1e-8);
}
