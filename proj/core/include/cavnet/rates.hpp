#pragma once

#include <map>
#include <utility>
#include <vector>

#include "cavnet/statespace.hpp"

namespace cavnet {

/// Unordered site pair stored as (low, high), 1-based.
using SitePair = std::pair<int, int>;

inline SitePair canonical_pair(int k, int j) { return k < j ? SitePair{k, j} : SitePair{j, k}; }

/// Per-cavity intermediate quantities from the loss budget.
struct CavityDiagnostics {
  double xi = 0.0;              // loss parameter
  double m = 0.0;               // mean round trips, 1/(1 - xi)
  double D = 0.0;               // single round-trip absorption fraction
  double gamma_internal = 0.0;  // GHz
  double gamma_out = 0.0;       // GHz, after feedback recovery
};

/// Dynamical parameters of the network. All rates in GHz (ns^-1).
///
/// Couplings are stored once per unordered pair as g_kj with k < j; the
/// reverse direction is its conjugate, so the map is Hermitian by construction.
struct RateSet {
  int n_sites = 0;
  std::map<SitePair, Complex> couplings;
  std::vector<double> dissipation;  // Gamma_j, index j-1
  std::vector<double> dephasing;    // gamma_j, index j-1
  double detector_rate = 0.0;       // Gamma_Det
  int detector_site = 2;
  std::vector<CavityDiagnostics> diagnostics;  // empty for preset rates

  /// g_kj, conjugated when k > j; zero for uncoupled pairs.
  Complex coupling(int k, int j) const;
  void set_coupling(int k, int j, Complex g);

  RateSet with_dephasing(double gamma) const;
  RateSet without_detector() const;

  /// Throws SpecError on negative rates, size mismatches or bad site indices.
  void validate() const;
};

}  // namespace cavnet
