#pragma once

#include "cavnet/liouville.hpp"
#include "cavnet/rates.hpp"
#include "cavnet/statespace.hpp"

/// Brute-force reference dynamics on the full hard-core Fock space of the
/// site modes plus the sink, with every operator built from Kronecker
/// products of per-mode ladder matrices.
namespace cavnet::oracle {

inline constexpr int kMaxModes = 5;

/// Modes are sites 1..n (bits 0..n-1, site 1 least significant) then the sink.
class FockBasis {
 public:
  FockBasis(int n_sites, bool include_sink);

  int n_sites() const noexcept { return n_sites_; }
  bool has_sink() const noexcept { return include_sink_; }
  int n_modes() const noexcept { return n_sites_ + (include_sink_ ? 1 : 0); }
  Index dim() const noexcept { return Index{1} << n_modes(); }

  int site_bit(int site) const { return site - 1; }
  int sink_bit() const { return n_sites_; }
  int excitations(Index state) const;

 private:
  int n_sites_;
  bool include_sink_;
};

/// Hard-core annihilator on one mode: |..1..> -> |..0..>.
Matrix annihilator(const FockBasis& basis, int bit);

/// Dense column-stacked generator of the same master equation as `Liouvillian`.
Matrix fock_generator(const RateSet& rates, const FockBasis& basis, Conventions conv = {});

/// Staged RK4 on the vectorized generator from 0 to t.
Matrix fock_propagate(const RateSet& rates, const FockBasis& basis, const Matrix& rho0, double t,
                      double dt, Conventions conv = {});

/// Places a single-excitation state into the Fock space (ancilla-free bases only).
Matrix embed(const DensityMatrix& rho, const FockBasis& basis);

/// Restricts a Fock-space matrix to vacuum, one-photon and sink states.
Matrix project(const Matrix& fock, const FockBasis& fock_basis, const Basis& basis);

/// Total population on states with more than one excitation.
double weight_outside_manifold(const Matrix& fock, const FockBasis& basis);

}  // namespace cavnet::oracle
