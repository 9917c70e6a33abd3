#include "cavnet/experiments.hpp"

#include <cmath>
#include <mutex>
#include <optional>
#include <random>

#include "cavnet/entanglement.hpp"
#include "cavnet/error.hpp"
#include "cavnet/parallel.hpp"

namespace cavnet {

namespace {

Basis transport_basis(const RateSet& rates) { return build_basis(rates.n_sites, true, false); }

Trajectory run_from_site1(const RateSet& rates, const TimeGrid& grid, Conventions conv) {
  const Basis basis = transport_basis(rates);
  const Liouvillian L = build_liouvillian(rates, basis, conv);
  const DensityMatrix rho0 = initial_state(basis, InitialState::single_photon_site(1));
  return evolve(rho0, L, grid.t_end, grid.dt, {grid.record_stride, true});
}

void check_gamma(double gamma, const std::string& field) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw SpecError(field, "dephasing rate must be finite and >= 0");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

EnsembleCurve summarize(const std::vector<double>& times, const std::vector<std::vector<double>>& samples) {
  EnsembleCurve curve;
  curve.times = times;
  const std::size_t n_t = times.size();
  const auto n = static_cast<double>(samples.size());
  curve.mean.assign(n_t, 0.0);
  curve.std.assign(n_t, 0.0);
  for (std::size_t t = 0; t < n_t; ++t) {
    // Shifted by the first sample so that identical samples give exactly zero spread.
    const double shift = samples.front()[t];
    double sum = 0.0;
    for (const auto& s : samples) sum += s[t] - shift;
    const double offset = sum / n;
    double sq = 0.0;
    for (const auto& s : samples) sq += (s[t] - shift - offset) * (s[t] - shift - offset);
    curve.mean[t] = shift + offset;
    curve.std[t] = std::sqrt(sq / n);
  }
  return curve;
}

}  // namespace

std::vector<double> EfficiencyCurve::site_population(int site) const {
  std::vector<double> out;
  out.reserve(trajectory.size());
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    double p = 0.0;
    for (int a = 0; a < trajectory.basis.ancilla_levels(); ++a) {
      const Index k = trajectory.basis.site(site, a);
      p += trajectory.states[i](k, k).real();
    }
    out.push_back(p);
  }
  return out;
}

std::vector<EfficiencyCurve> efficiency_curves(const RateSet& rates, std::span<const double> gammas,
                                               const TimeGrid& grid, Conventions conv) {
  for (std::size_t i = 0; i < gammas.size(); ++i) check_gamma(gammas[i], "gammas[" + std::to_string(i) + "]");
  std::vector<std::optional<EfficiencyCurve>> slots(gammas.size());
  parallel_for(gammas.size(), [&](std::size_t i) {
    slots[i].emplace(EfficiencyCurve{gammas[i], run_from_site1(rates.with_dephasing(gammas[i]), grid, conv)});
  });
  std::vector<EfficiencyCurve> curves;
  curves.reserve(slots.size());
  for (auto& s : slots) curves.push_back(std::move(*s));
  return curves;
}

std::vector<double> default_gamma_grid() {
  constexpr int kPoints = 25;
  std::vector<double> grid;
  grid.reserve(kPoints);
  for (int i = 0; i < kPoints; ++i)
    grid.push_back(std::pow(10.0, -2.0 + 4.0 * static_cast<double>(i) / (kPoints - 1)));
  return grid;
}

std::vector<SweepPoint> dephasing_sweep(const RateSet& rates, std::span<const double> gamma_grid,
                                        double t_eval, double dt, Conventions conv) {
  if (gamma_grid.empty()) throw SpecError("gamma_grid", "must not be empty");
  if (!(t_eval > 0.0)) throw SpecError("t_eval", "must be > 0");
  for (std::size_t i = 0; i < gamma_grid.size(); ++i)
    check_gamma(gamma_grid[i], "gamma_grid[" + std::to_string(i) + "]");

  const auto steps = static_cast<std::size_t>(std::llround(t_eval / dt));
  const TimeGrid grid{t_eval, dt, std::max<std::size_t>(1, steps)};
  std::vector<SweepPoint> out(gamma_grid.size());
  parallel_for(gamma_grid.size(), [&](std::size_t i) {
    const Trajectory traj = run_from_site1(rates.with_dephasing(gamma_grid[i]), grid, conv);
    out[i] = {gamma_grid[i], sink_probability_of(traj)};
  });
  return out;
}

void DisorderConfig::validate(const std::string& path) const {
  if (!(relative_spread >= 0.0 && relative_spread < 1.0))
    throw SpecError(path + ".relative_spread", "must satisfy 0 <= spread < 1");
  if (n_samples < 1) throw SpecError(path + ".n_samples", "must be >= 1");
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ index);
}

RateSet perturb_couplings(const RateSet& rates, double spread, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RateSet out = rates;
  for (auto& [pair, g] : out.couplings) {
    const double delta = spread * (2.0 * unit_uniform(rng) - 1.0);
    g *= 1.0 + delta;
  }
  return out;
}

DisorderResult disorder_ensemble(const RateSet& rates, const DisorderConfig& cfg, double gamma,
                                 const TimeGrid& grid, Conventions conv) {
  cfg.validate();
  check_gamma(gamma, "gamma");
  const RateSet base = rates.with_dephasing(gamma);

  std::vector<std::vector<double>> p_sink(cfg.n_samples);
  std::vector<std::vector<double>> site1(cfg.n_samples);
  std::vector<double> times;
  std::once_flag times_flag;

  parallel_for(cfg.n_samples, [&](std::size_t i) {
    const RateSet sample = perturb_couplings(base, cfg.relative_spread, sample_seed(cfg.seed, i));
    const Trajectory traj = run_from_site1(sample, grid, conv);
    std::call_once(times_flag, [&] { times = traj.times; });
    p_sink[i] = traj.sink_probability;
    std::vector<double>& pop = site1[i];
    pop.reserve(traj.size());
    const Index k = traj.basis.site(1);
    for (const Matrix& rho : traj.states) pop.push_back(rho(k, k).real());
  });

  return {summarize(times, p_sink), summarize(times, site1)};
}

EntanglementSeries entanglement_protocol(const RateSet& rates, double gamma, const TimeGrid& grid,
                                         Conventions conv) {
  check_gamma(gamma, "gamma");
  if (rates.n_sites < 2) throw SpecError("rates.n_sites", "entanglement protocol needs site 2");
  const RateSet noisy = rates.without_detector().with_dephasing(gamma);
  const Basis basis = build_basis(rates.n_sites, false, true);
  const Liouvillian L = build_liouvillian(noisy, basis, conv);
  const Trajectory traj =
      evolve(initial_state(basis, InitialState::epr_with_ancilla(1)), L, grid.t_end, grid.dt,
             {grid.record_stride, true});

  EntanglementSeries out;
  out.times = traj.times;
  const Subsystem keep{true, 2};
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const DensityMatrix rho = traj.state(i);
    out.ancilla_site2.push_back(log_negativity(partial_trace(rho, keep), 2, 2));
    out.ancilla_network.push_back(log_negativity_ancilla_network(rho));
  }
  return out;
}

}  // namespace cavnet
