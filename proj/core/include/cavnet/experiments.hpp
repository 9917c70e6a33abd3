#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cavnet/liouville.hpp"
#include "cavnet/rates.hpp"

namespace cavnet {

struct TimeGrid {
  double t_end = 20.0;  // ns
  double dt = 5e-4;     // ns
  std::size_t record_stride = 1;
};

struct EfficiencyCurve {
  double gamma = 0.0;
  Trajectory trajectory;

  std::vector<double> site_population(int site) const;
  const std::vector<double>& p_sink() const { return trajectory.sink_probability; }
};

/// For each gamma, uniform dephasing and evolution from SITE(1).
std::vector<EfficiencyCurve> efficiency_curves(const RateSet& rates, std::span<const double> gammas,
                                               const TimeGrid& grid, Conventions conv = {});

struct SweepPoint {
  double gamma = 0.0;
  double p_sink = 0.0;
};

/// 25 logarithmically spaced rates from 1e-2 to 1e2 GHz.
std::vector<double> default_gamma_grid();

/// p_sink(t_eval) per dephasing rate.
std::vector<SweepPoint> dephasing_sweep(const RateSet& rates, std::span<const double> gamma_grid,
                                        double t_eval, double dt, Conventions conv = {});

struct DisorderConfig {
  enum class Distribution { Uniform };

  double relative_spread = 0.2;
  std::size_t n_samples = 1000;
  std::uint64_t seed = 0;
  Distribution distribution = Distribution::Uniform;

  void validate(const std::string& path = "disorder") const;
};

struct EnsembleCurve {
  std::vector<double> times;
  std::vector<double> mean;
  std::vector<double> std;  // population standard deviation across samples
};

struct DisorderResult {
  EnsembleCurve p_sink;
  EnsembleCurve site1_population;
};

/// Multiplies each coupling magnitude by (1 + delta), delta ~ U[-spread, spread]
/// independently per unordered pair, drawn in ascending pair order from a
/// generator seeded with `seed`.
RateSet perturb_couplings(const RateSet& rates, double spread, std::uint64_t seed);

/// Seed of sample `index` in an ensemble seeded with `seed`.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

DisorderResult disorder_ensemble(const RateSet& rates, const DisorderConfig& cfg, double gamma,
                                 const TimeGrid& grid, Conventions conv = {});

struct EntanglementSeries {
  std::vector<double> times;
  std::vector<double> ancilla_site2;    // E(ancilla | occupancy of site 2)
  std::vector<double> ancilla_network;  // E(ancilla | whole network)
};

/// EPR pair between an ancilla and SITE(1), detector removed, rates
/// otherwise unchanged.
EntanglementSeries entanglement_protocol(const RateSet& rates, double gamma, const TimeGrid& grid,
                                         Conventions conv = {});

}  // namespace cavnet
