#include "cavnet/statespace.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "cavnet/error.hpp"

namespace cavnet {

std::string Label::name() const {
  std::string base;
  switch (kind) {
    case LabelKind::Vacuum: base = "VAC"; break;
    case LabelKind::Site: base = "SITE" + std::to_string(site); break;
    case LabelKind::Sink: base = "SINK"; break;
  }
  if (ancilla >= 0) base += "|ANC" + std::to_string(ancilla);
  return base;
}

Basis::Basis(int n_sites, bool include_sink, bool include_ancilla)
    : n_sites_(n_sites), include_sink_(include_sink), include_ancilla_(include_ancilla) {
  if (n_sites < 1) throw SpecError("n_sites", "must be at least 1, got " + std::to_string(n_sites));
  labels_.reserve(static_cast<std::size_t>(dim()));
  for (int a = 0; a < ancilla_levels(); ++a) {
    const int anc = include_ancilla ? a : -1;
    labels_.push_back({LabelKind::Vacuum, 0, anc});
    for (int i = 1; i <= n_sites; ++i) labels_.push_back({LabelKind::Site, i, anc});
    if (include_sink) labels_.push_back({LabelKind::Sink, 0, anc});
  }
}

Index Basis::offset(int ancilla) const {
  if (ancilla < 0 || ancilla >= ancilla_levels())
    throw SpecError("ancilla", "level " + std::to_string(ancilla) + " not in basis");
  return ancilla * network_dim();
}

Index Basis::vacuum(int ancilla) const { return offset(ancilla); }

Index Basis::site(int i, int ancilla) const {
  if (i < 1 || i > n_sites_)
    throw SpecError("site", "index " + std::to_string(i) + " outside 1.." + std::to_string(n_sites_));
  return offset(ancilla) + i;
}

Index Basis::sink(int ancilla) const {
  if (!include_sink_) throw SpecError("sink", "basis has no sink");
  return offset(ancilla) + n_sites_ + 1;
}

Index Basis::index_of(const Label& label) const {
  const int anc = include_ancilla_ ? label.ancilla : 0;
  if (!include_ancilla_ && label.ancilla >= 0) throw SpecError("ancilla", "basis has no ancilla");
  switch (label.kind) {
    case LabelKind::Vacuum: return vacuum(anc);
    case LabelKind::Site: return site(label.site, anc);
    case LabelKind::Sink: return sink(anc);
  }
  return -1;
}

bool Basis::operator==(const Basis& other) const {
  return n_sites_ == other.n_sites_ && include_sink_ == other.include_sink_ &&
         include_ancilla_ == other.include_ancilla_;
}

Basis build_basis(int n_sites, bool include_sink, bool include_ancilla) {
  return Basis(n_sites, include_sink, include_ancilla);
}

DensityMatrix::DensityMatrix(Basis basis, Matrix data) : basis_(std::move(basis)), data_(std::move(data)) {
  if (data_.rows() != basis_.dim() || data_.cols() != basis_.dim())
    throw SpecError("rho", "matrix is " + std::to_string(data_.rows()) + "x" +
                               std::to_string(data_.cols()) + ", basis dimension is " +
                               std::to_string(basis_.dim()));
}

double DensityMatrix::site_population(int i) const {
  double p = 0.0;
  for (int a = 0; a < basis_.ancilla_levels(); ++a) p += population(basis_.site(i, a));
  return p;
}

double DensityMatrix::vacuum_population() const {
  double p = 0.0;
  for (int a = 0; a < basis_.ancilla_levels(); ++a) p += population(basis_.vacuum(a));
  return p;
}

double DensityMatrix::sink_population() const {
  if (!basis_.has_sink()) return 0.0;
  double p = 0.0;
  for (int a = 0; a < basis_.ancilla_levels(); ++a) p += population(basis_.sink(a));
  return p;
}

DensityMatrix initial_state(const Basis& basis, const InitialState& kind) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.dim());
  switch (kind.kind) {
    case InitialState::Kind::SinglePhotonSite:
      psi(basis.site(kind.site, 0)) = 1.0;
      break;
    case InitialState::Kind::EprWithAncilla: {
      if (!basis.has_ancilla())
        throw SpecError("initial_state", "EPR state requires a basis with an ancilla");
      const Index target = basis.site(kind.site, 1);
      const double amp = 1.0 / std::sqrt(2.0);
      psi(basis.vacuum(0)) = amp;
      psi(target) = amp;
      break;
    }
  }
  return {basis, psi * psi.adjoint()};
}

Diagnostics validate(const Matrix& rho) {
  Diagnostics d;
  d.hermiticity_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  d.trace_defect = std::abs(rho.trace() - Complex(1.0, 0.0));
  const Matrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  return d;
}

Diagnostics validate(const DensityMatrix& rho) { return validate(rho.data()); }

bool within_tolerance(const Diagnostics& d) {
  return d.hermiticity_defect <= tolerance::kHermiticity && d.trace_defect <= tolerance::kTrace &&
         d.min_eigenvalue >= -tolerance::kPositivity;
}

}  // namespace cavnet
