#include "cavnet/oracle.hpp"

#include <bit>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "cavnet/error.hpp"

namespace cavnet::oracle {

namespace {

Matrix identity(Index d) { return Matrix::Identity(d, d); }

/// Fock index of every single-excitation basis label (ancilla-free).
std::vector<Index> manifold_map(const FockBasis& fock, const Basis& basis) {
  if (basis.has_ancilla()) throw SpecError("basis", "oracle does not model the ancilla");
  if (basis.n_sites() != fock.n_sites() || basis.has_sink() != fock.has_sink())
    throw SpecError("basis", "single-excitation and Fock bases describe different networks");
  std::vector<Index> map;
  for (const Label& l : basis.labels()) {
    switch (l.kind) {
      case LabelKind::Vacuum: map.push_back(0); break;
      case LabelKind::Site: map.push_back(Index{1} << fock.site_bit(l.site)); break;
      case LabelKind::Sink: map.push_back(Index{1} << fock.sink_bit()); break;
    }
  }
  return map;
}

}  // namespace

FockBasis::FockBasis(int n_sites, bool include_sink) : n_sites_(n_sites), include_sink_(include_sink) {
  if (n_sites < 1) throw SpecError("n_sites", "must be at least 1");
  if (n_modes() > kMaxModes)
    throw SpecError("n_modes", std::to_string(n_modes()) + " modes exceed the oracle cap of " +
                                   std::to_string(kMaxModes));
}

int FockBasis::excitations(Index state) const {
  return std::popcount(static_cast<unsigned long long>(state));
}

Matrix annihilator(const FockBasis& basis, int bit) {
  if (bit < 0 || bit >= basis.n_modes()) throw SpecError("mode", "bit outside the Fock register");
  Matrix a = Matrix::Zero(basis.dim(), basis.dim());
  const Index mask = Index{1} << bit;
  for (Index s = 0; s < basis.dim(); ++s)
    if (s & mask) a(s & ~mask, s) = 1.0;
  return a;
}

Matrix fock_generator(const RateSet& rates, const FockBasis& basis, Conventions conv) {
  rates.validate();
  if (rates.n_sites != basis.n_sites()) throw SpecError("rates", "site count differs from the Fock basis");
  if (rates.detector_rate > 0.0 && !basis.has_sink())
    throw SpecError("basis", "detector rate is nonzero but the Fock basis has no sink");

  const Index d = basis.dim();
  const double s = conv.frequency_scale;
  std::vector<Matrix> a;
  for (int i = 1; i <= basis.n_sites(); ++i) a.push_back(annihilator(basis, basis.site_bit(i)));
  auto mode = [&a](int site) -> const Matrix& { return a[static_cast<std::size_t>(site - 1)]; };

  Matrix h = Matrix::Zero(d, d);
  for (const auto& [pair, g] : rates.couplings) {
    const Matrix& ak = mode(pair.first);
    const Matrix& aj = mode(pair.second);
    h += g * ak.adjoint() * aj + std::conj(g) * aj.adjoint() * ak;
  }

  const Matrix id = identity(d);
  Matrix gen = Complex(0.0, -s) * (Matrix(Eigen::kroneckerProduct(id, h)) -
                                   Matrix(Eigen::kroneckerProduct(h.transpose(), id)));

  // rate * (2 L rho L^dagger - {LdL, rho}), with LdL supplied as written.
  auto add_channel = [&](double rate, const Matrix& L, const Matrix& LdL) {
    if (rate == 0.0) return;
    gen += (s * rate) * (2.0 * Matrix(Eigen::kroneckerProduct(L.conjugate(), L)) -
                         Matrix(Eigen::kroneckerProduct(id, LdL)) -
                         Matrix(Eigen::kroneckerProduct(LdL.transpose(), id)));
  };

  for (int i = 1; i <= basis.n_sites(); ++i) {
    const auto idx = static_cast<std::size_t>(i - 1);
    const Matrix& ai = mode(i);
    add_channel(rates.dissipation[idx], ai, ai.adjoint() * ai);
    const Matrix n = ai.adjoint() * ai;
    add_channel(rates.dephasing[idx], n, ai.adjoint() * ai * ai.adjoint() * ai);
  }
  if (rates.detector_rate > 0.0) {
    const Matrix det = annihilator(basis, basis.sink_bit());
    const Matrix& a2 = mode(rates.detector_site);
    add_channel(rates.detector_rate, det.adjoint() * a2, a2.adjoint() * det * det.adjoint() * a2);
  }
  return gen;
}

Matrix fock_propagate(const RateSet& rates, const FockBasis& basis, const Matrix& rho0, double t,
                      double dt, Conventions conv) {
  const Index d = basis.dim();
  if (rho0.rows() != d || rho0.cols() != d) throw SpecError("rho0", "not a Fock-space matrix");
  if (!(dt > 0.0) || !(t >= 0.0)) throw SpecError("dt", "need dt > 0 and t >= 0");
  const auto steps = static_cast<long long>(std::llround(t / dt));
  const Matrix gen = fock_generator(rates, basis, conv);

  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), d * d);
  for (long long n = 0; n < steps; ++n) {
    const Eigen::VectorXcd k1 = gen * v;
    const Eigen::VectorXcd k2 = gen * (v + 0.5 * dt * k1);
    const Eigen::VectorXcd k3 = gen * (v + 0.5 * dt * k2);
    const Eigen::VectorXcd k4 = gen * (v + dt * k3);
    v += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

Matrix embed(const DensityMatrix& rho, const FockBasis& basis) {
  const std::vector<Index> map = manifold_map(basis, rho.basis());
  Matrix out = Matrix::Zero(basis.dim(), basis.dim());
  for (std::size_t i = 0; i < map.size(); ++i)
    for (std::size_t j = 0; j < map.size(); ++j)
      out(map[i], map[j]) = rho.data()(static_cast<Index>(i), static_cast<Index>(j));
  return out;
}

Matrix project(const Matrix& fock, const FockBasis& fock_basis, const Basis& basis) {
  const std::vector<Index> map = manifold_map(fock_basis, basis);
  Matrix out(basis.dim(), basis.dim());
  for (std::size_t i = 0; i < map.size(); ++i)
    for (std::size_t j = 0; j < map.size(); ++j)
      out(static_cast<Index>(i), static_cast<Index>(j)) = fock(map[i], map[j]);
  return out;
}

double weight_outside_manifold(const Matrix& fock, const FockBasis& basis) {
  double w = 0.0;
  for (Index s = 0; s < basis.dim(); ++s)
    if (basis.excitations(s) > 1) w += std::abs(fock(s, s).real());
  return w;
}

}  // namespace cavnet::oracle
