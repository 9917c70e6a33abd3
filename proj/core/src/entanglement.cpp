#include "cavnet/entanglement.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "cavnet/error.hpp"

namespace cavnet {

Matrix partial_trace(const DensityMatrix& rho, const Subsystem& keep) {
  const Basis& basis = rho.basis();
  if (keep.ancilla && !basis.has_ancilla())
    throw SpecError("keep.ancilla", "basis has no ancilla factor");
  if (keep.mode_site && (*keep.mode_site < 1 || *keep.mode_site > basis.n_sites()))
    throw SpecError("keep.mode_site", "site " + std::to_string(*keep.mode_site) + " not in basis");

  const Index net = basis.network_dim();
  const Index kept_dim = (keep.ancilla ? 2 : 1) * (keep.mode_site ? 2 : 1);
  const Index dim = basis.dim();

  // Split every basis index into (kept index, traced index).
  std::vector<Index> kept(static_cast<std::size_t>(dim));
  std::vector<Index> traced(static_cast<std::size_t>(dim));
  for (Index i = 0; i < dim; ++i) {
    const Index anc = i / net;
    Index label = i % net;
    Index occupied = 0;
    if (keep.mode_site && label == *keep.mode_site) {
      occupied = 1;
      label = 0;  // the rest of the network is in its vacuum
    }
    Index k = 0;
    Index t = label;
    if (keep.ancilla) k = anc; else t += anc * net;
    if (keep.mode_site) k = 2 * k + occupied;
    kept[static_cast<std::size_t>(i)] = k;
    traced[static_cast<std::size_t>(i)] = t;
  }

  Matrix out = Matrix::Zero(kept_dim, kept_dim);
  const Matrix& data = rho.data();
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j)
      if (traced[static_cast<std::size_t>(i)] == traced[static_cast<std::size_t>(j)])
        out(kept[static_cast<std::size_t>(i)], kept[static_cast<std::size_t>(j)]) += data(i, j);
  return out;
}

Matrix partial_transpose(const Matrix& rho, Index dim_a, Index dim_b) {
  if (dim_a < 1 || dim_b < 1 || rho.rows() != dim_a * dim_b || rho.cols() != rho.rows())
    throw SpecError("bipartition", "dimensions " + std::to_string(dim_a) + "x" +
                                       std::to_string(dim_b) + " do not match a " +
                                       std::to_string(rho.rows()) + "x" +
                                       std::to_string(rho.cols()) + " matrix");
  Matrix out(rho.rows(), rho.cols());
  for (Index a = 0; a < dim_a; ++a)
    for (Index b = 0; b < dim_b; ++b)
      for (Index a2 = 0; a2 < dim_a; ++a2)
        for (Index b2 = 0; b2 < dim_b; ++b2)
          out(a2 * dim_b + b, a * dim_b + b2) = rho(a * dim_b + b, a2 * dim_b + b2);
  return out;
}

double log_negativity(const Matrix& rho, Index dim_a, Index dim_b) {
  const Matrix pt = partial_transpose(rho, dim_a, dim_b);
  const Matrix herm = 0.5 * (pt + pt.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  const double norm = solver.eigenvalues().cwiseAbs().sum();
  const double e = std::log2(norm);
  if (e < -1e-9) throw SpecError("rho", "trace norm below 1; state is not normalized");
  return std::max(0.0, e);
}

double log_negativity_ancilla_network(const DensityMatrix& rho) {
  if (!rho.basis().has_ancilla()) throw SpecError("bipartition", "basis has no ancilla");
  return log_negativity(rho.data(), 2, rho.basis().network_dim());
}

}  // namespace cavnet
