#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cavnet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

enum class LabelKind { Vacuum, Site, Sink };

/// One basis vector of the single-excitation space: the global vacuum, one
/// photon in a site, or one photon absorbed by the sink, optionally paired
/// with an ancilla occupation (0 or 1).
struct Label {
  LabelKind kind = LabelKind::Vacuum;
  int site = 0;      // 1-based, only meaningful for LabelKind::Site
  int ancilla = -1;  // -1 when the basis has no ancilla

  std::string name() const;
  bool operator==(const Label&) const = default;
};

/// Single-excitation state space of an n-site network.
///
/// Index layout is VAC, SITE(1)..SITE(n), SINK (if present); with an ancilla
/// that block is repeated for ancilla 0 then 1 (ancilla is the slow index).
class Basis {
 public:
  Basis(int n_sites, bool include_sink, bool include_ancilla);

  int n_sites() const noexcept { return n_sites_; }
  bool has_sink() const noexcept { return include_sink_; }
  bool has_ancilla() const noexcept { return include_ancilla_; }
  int ancilla_levels() const noexcept { return include_ancilla_ ? 2 : 1; }

  /// Dimension of the network block (vacuum + sites + sink).
  Index network_dim() const noexcept { return 1 + n_sites_ + (include_sink_ ? 1 : 0); }
  Index dim() const noexcept { return network_dim() * ancilla_levels(); }

  const std::vector<Label>& labels() const noexcept { return labels_; }

  Index vacuum(int ancilla = 0) const;
  Index site(int i, int ancilla = 0) const;
  Index sink(int ancilla = 0) const;
  Index index_of(const Label& label) const;

  bool operator==(const Basis& other) const;

 private:
  Index offset(int ancilla) const;

  int n_sites_;
  bool include_sink_;
  bool include_ancilla_;
  std::vector<Label> labels_;
};

Basis build_basis(int n_sites, bool include_sink, bool include_ancilla);

class DensityMatrix {
 public:
  DensityMatrix(Basis basis, Matrix data);

  const Basis& basis() const noexcept { return basis_; }
  const Matrix& data() const noexcept { return data_; }

  double population(Index i) const { return data_(i, i).real(); }
  /// Population of site i summed over ancilla levels.
  double site_population(int i) const;
  double vacuum_population() const;
  /// Zero when the basis has no sink.
  double sink_population() const;

 private:
  Basis basis_;
  Matrix data_;
};

struct InitialState {
  enum class Kind { SinglePhotonSite, EprWithAncilla };

  Kind kind = Kind::SinglePhotonSite;
  int site = 1;

  static InitialState single_photon_site(int i) { return {Kind::SinglePhotonSite, i}; }
  /// (|0>_anc |VAC> + |1>_anc |SITE(i)>) / sqrt(2)
  static InitialState epr_with_ancilla(int i) { return {Kind::EprWithAncilla, i}; }
};

DensityMatrix initial_state(const Basis& basis, const InitialState& kind);

namespace tolerance {
inline constexpr double kHermiticity = 1e-10;
inline constexpr double kTrace = 1e-9;
inline constexpr double kPositivity = 1e-9;  // min eigenvalue >= -kPositivity
}  // namespace tolerance

struct Diagnostics {
  double hermiticity_defect = 0.0;  // max |rho - rho^dagger| elementwise
  double trace_defect = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;      // of the Hermitian part
};

Diagnostics validate(const Matrix& rho);
Diagnostics validate(const DensityMatrix& rho);
bool within_tolerance(const Diagnostics& d);

/// Time series produced by `evolve`. Only the recorded grid points are kept;
/// `sink_probability[i]` is the accumulated detector probability at `times[i]`.
struct Trajectory {
  Basis basis;
  std::vector<double> times;
  std::vector<Matrix> states;
  std::vector<double> sink_probability;
  /// Largest |integral - SINK population| seen over all integration steps.
  double max_quadrature_defect = 0.0;

  std::size_t size() const noexcept { return times.size(); }
  DensityMatrix state(std::size_t i) const { return {basis, states.at(i)}; }
};

}  // namespace cavnet
