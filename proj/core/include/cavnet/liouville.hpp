#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/SparseCore>

#include "cavnet/rates.hpp"
#include "cavnet/statespace.hpp"

namespace cavnet {

/// Rates are read as angular frequencies in ns^-1 scaled by this factor
/// (1 GHz -> frequency_scale ns^-1). It multiplies H and every Lindblad rate.
struct Conventions {
  double frequency_scale = 1.0;
};

using SparseMatrix = Eigen::SparseMatrix<Complex>;

struct JumpChannel {
  enum class Kind { Dissipation, Dephasing, Detection };

  Kind kind = Kind::Dissipation;
  int site = 0;
  double rate = 0.0;  // GHz, before frequency_scale
  SparseMatrix op;
};

/// Generator of
///   d rho/dt = -i [H, rho] + sum_k r_k (2 L_k rho L_k^dagger - {L_k^dagger L_k, rho})
/// on a single-excitation basis. Note the factor 2 on the jump term and the
/// anticommutator without 1/2: a channel of rate r empties a population at 2r.
class Liouvillian {
 public:
  const Basis& basis() const noexcept { return basis_; }
  const Matrix& hamiltonian() const noexcept { return hamiltonian_; }
  const std::vector<JumpChannel>& channels() const noexcept { return channels_; }
  double frequency_scale() const noexcept { return scale_; }
  double detector_rate() const noexcept { return detector_rate_; }
  int detector_site() const noexcept { return detector_site_; }

  Matrix apply(const Matrix& rho) const;

  /// Column-stacked representation: vec(apply(rho)) = superoperator() * vec(rho).
  Matrix superoperator() const;

 private:
  friend Liouvillian build_liouvillian(const RateSet&, const Basis&, Conventions);

  explicit Liouvillian(Basis basis) : basis_(std::move(basis)) {}

  Basis basis_;
  Matrix hamiltonian_;
  std::vector<JumpChannel> channels_;
  Matrix drift_;  // -i s H - s sum_k r_k L_k^dagger L_k
  double scale_ = 1.0;
  double detector_rate_ = 0.0;
  int detector_site_ = 2;
};

/// H[SITE(i), SITE(j)] = g_ij, zero diagonal (rotating frame), identity on the
/// ancilla factor.
Matrix build_hamiltonian(const RateSet& rates, const Basis& basis);

Liouvillian build_liouvillian(const RateSet& rates, const Basis& basis, Conventions conv = {});

/// One classical RK4 step in matrix form.
Matrix rk4_step(const Liouvillian& L, const Matrix& rho, double dt);

struct EvolveOptions {
  std::size_t record_stride = 1;  // keep every n-th grid point (the last is always kept)
  bool validate_states = true;    // run `validate` on every recorded state
};

/// Fixed-step RK4 from 0 to t_end. t_end must be a whole number of steps.
/// p_sink is the trapezoidal integral of 2 Gamma_Det s rho[SITE2, SITE2].
Trajectory evolve(const DensityMatrix& rho0, const Liouvillian& L, double t_end, double dt,
                  EvolveOptions options = {});

/// Same grid and bookkeeping as `evolve`, with exp(dt L) as the step map.
Trajectory evolve_exact(const DensityMatrix& rho0, const Liouvillian& L, double t_end, double dt,
                        EvolveOptions options = {});

double sink_probability_of(const Trajectory& traj);

}  // namespace cavnet
