#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cavnet/rates.hpp"

/// Rates of the coupled-cavity network derived from mirror reflectivities,
/// cavity lengths, absorption and the central beamsplitter geometry.
/// Lengths are in metres; every returned rate is in GHz.
namespace cavnet::optics {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct CavitySpec {
  double r_in = 0.9;               // internal mirror (towards the beamsplitter)
  double r_out = 0.9;              // external mirror
  double length_d = 0.01;          // m
  double absorption_alpha = 0.35;  // 1/m
  double distance_l = 0.2;         // m, cavity to beamsplitter
  double feedback_recovery = 0.0;  // fraction of external-mirror loss post-selected away

  void validate(const std::string& path = "cavity") const;
};

enum class DenominatorMode {
  Literal1MinusM,   // 1/(1 - m_j), as printed
  Buildup1MinusXi,  // 1/(1 - xi_j) = m_j, the intracavity buildup
};

struct NetworkSpec {
  std::vector<CavitySpec> cavities;  // cavities[j-1] is site j
  double bs_transmittivity_eta = 0.5;
  double wavelength = 800e-9;  // m
  std::set<SitePair> direct_pairs;
  std::map<std::pair<int, int>, int> reflection_counts;  // ordered (k, j) -> n_r
  DenominatorMode coupling_denominator_mode = DenominatorMode::Buildup1MinusXi;

  int n_sites() const { return static_cast<int>(cavities.size()); }
  bool is_direct(int k, int j) const { return direct_pairs.count(canonical_pair(k, j)) != 0; }
  bool connected(int k, int j) const { return reflection_counts.count({k, j}) != 0; }

  void validate(const std::string& path = "network") const;

  /// Pairs (1,2) and (3,4) direct with one reflection, every other pair
  /// indirect with two.
  static void apply_default_geometry(NetworkSpec& net);
  /// Four cavities with d = 1 cm, alpha = 0.35 /m, l = 20 cm, eta = 0.5,
  /// lambda = 800 nm; R_in = 0.9 everywhere, R_out = 0.99, 0.9, 0.999, 0.999
  /// and 80% feedback recovery on cavity 1.
  static NetworkSpec reference_geometry();
};

double loss_parameter(const CavitySpec& c);
double round_trips(double xi);

struct InternalLoss {
  double gamma = 0.0;  // GHz
  double D = 0.0;
};

InternalLoss internal_dissipation(const CavitySpec& c);
double external_dissipation(const CavitySpec& c);
/// Rate through the external mirror of the sink-coupled cavity, without any
/// feedback reduction.
double detector_rate(const CavitySpec& c);

/// Propagation phase 2*pi*length/lambda reduced to [-pi, pi), snapped to 0
/// for whole numbers of wavelengths.
double propagation_phase(double length, double wavelength);

/// First-order field ratio from the output face of cavity k to the input
/// face of cavity j through the beamsplitter.
Complex inter_cavity_transfer(int k, int j, const NetworkSpec& net);

/// Directed coupling g_kj in GHz, before symmetrization.
Complex coupling(int k, int j, const NetworkSpec& net);

/// One Hermitian coupling per unordered pair: geometric mean of the two
/// directed magnitudes, phase of the lower-to-higher direction.
Complex symmetric_coupling(int k, int j, const NetworkSpec& net);

/// Preset rates: |g| = 4.3, 5.7, 7.6, 6.1, 4.5, 5.9 GHz for
/// (1,2), (1,3), (1,4), (2,3), (2,4), (3,4), Gamma_j = 70 MHz, Gamma_Det = 1 GHz.
RateSet paper_preset_rates(double dephasing_gamma);

RateSet derive_rates(const NetworkSpec& net, double dephasing_gamma, bool paper_preset);

}  // namespace cavnet::optics
