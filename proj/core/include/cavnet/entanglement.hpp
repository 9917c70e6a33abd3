#pragma once

#include <optional>

#include "cavnet/statespace.hpp"

namespace cavnet {

/// Tensor factor to keep in a partial trace: the ancilla qubit and/or the
/// occupancy qubit of one site mode. Kept factors are ordered ancilla
/// (slow) then mode (fast); keeping nothing yields the 1x1 trace.
struct Subsystem {
  bool ancilla = false;
  std::optional<int> mode_site;
};

/// Reduced state on `keep`. Within the single-excitation manifold the network
/// factor splits as (occupancy of mode) x (rest), with SITE(mode) <-> (1, VAC).
Matrix partial_trace(const DensityMatrix& rho, const Subsystem& keep);

/// Transposes the slow factor A of a (dim_a x dim_b) bipartite matrix.
Matrix partial_transpose(const Matrix& rho, Index dim_a, Index dim_b);

/// log2 of the trace norm of the partial transpose on A (the slow factor).
double log_negativity(const Matrix& rho, Index dim_a, Index dim_b);

/// Ancilla versus the whole network; requires an ancilla basis.
double log_negativity_ancilla_network(const DensityMatrix& rho);

}  // namespace cavnet
