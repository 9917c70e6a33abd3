#include "cavnet/optics.hpp"

#include <cmath>
#include <numbers>

#include "cavnet/error.hpp"

namespace cavnet::optics {

namespace {

constexpr double kPerSecondToGHz = 1e-9;

void require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw SpecError(field, message);
}

/// Single round-trip flight time in seconds.
double round_trip_time(const CavitySpec& c) { return 2.0 * c.length_d / kSpeedOfLight; }

std::string pair_name(int k, int j) {
  return "(" + std::to_string(k) + "," + std::to_string(j) + ")";
}

}  // namespace

void CavitySpec::validate(const std::string& path) const {
  require(r_in > 0.0 && r_in < 1.0, path + ".r_in", "must satisfy 0 < r_in < 1");
  require(r_out > 0.0 && r_out <= 1.0, path + ".r_out", "must satisfy 0 < r_out <= 1");
  require(length_d > 0.0 && std::isfinite(length_d), path + ".length_d", "must be > 0");
  require(absorption_alpha >= 0.0 && std::isfinite(absorption_alpha), path + ".absorption_alpha",
          "must be >= 0");
  require(distance_l >= 0.0 && std::isfinite(distance_l), path + ".distance_l", "must be >= 0");
  require(feedback_recovery >= 0.0 && feedback_recovery < 1.0, path + ".feedback_recovery",
          "must satisfy 0 <= feedback_recovery < 1");
}

void NetworkSpec::validate(const std::string& path) const {
  require(!cavities.empty(), path + ".cavities", "at least one cavity required");
  for (std::size_t i = 0; i < cavities.size(); ++i)
    cavities[i].validate(path + ".cavities[" + std::to_string(i) + "]");
  require(bs_transmittivity_eta > 0.0 && bs_transmittivity_eta < 1.0, path + ".bs_transmittivity_eta",
          "must satisfy 0 < eta < 1");
  require(wavelength > 0.0 && std::isfinite(wavelength), path + ".wavelength", "must be > 0");

  const int n = n_sites();
  auto valid_site = [n](int s) { return s >= 1 && s <= n; };
  for (const auto& [k, j] : direct_pairs) {
    require(valid_site(k) && valid_site(j) && k < j, path + ".direct_pairs",
            "pair " + pair_name(k, j) + " is not an ordered pair of distinct sites");
  }
  for (const auto& [pair, n_r] : reflection_counts) {
    const auto [k, j] = pair;
    const std::string field = path + ".reflection_counts" + pair_name(k, j);
    require(valid_site(k) && valid_site(j) && k != j, field, "not a pair of distinct sites");
    require(reflection_counts.count({j, k}) != 0, field, "reverse direction missing");
    const int interactions = is_direct(k, j) ? 1 : 2;
    require(n_r >= 0 && n_r <= interactions, field,
            "n_r must lie in 0.." + std::to_string(interactions) + " for a " +
                (interactions == 1 ? "direct" : "indirect") + " link");
  }
}

void NetworkSpec::apply_default_geometry(NetworkSpec& net) {
  net.direct_pairs.clear();
  net.reflection_counts.clear();
  const int n = net.n_sites();
  if (n >= 2) net.direct_pairs.insert({1, 2});
  if (n >= 4) net.direct_pairs.insert({3, 4});
  for (int k = 1; k <= n; ++k) {
    for (int j = 1; j <= n; ++j) {
      if (k == j) continue;
      net.reflection_counts[{k, j}] = net.is_direct(k, j) ? 1 : 2;
    }
  }
}

NetworkSpec NetworkSpec::reference_geometry() {
  NetworkSpec net;
  const double r_out[] = {0.99, 0.9, 0.999, 0.999};
  for (double r : r_out) {
    CavitySpec c;
    c.r_in = 0.9;
    c.r_out = r;
    c.length_d = 0.01;
    c.absorption_alpha = 0.35;
    c.distance_l = 0.20;
    net.cavities.push_back(c);
  }
  net.cavities[0].feedback_recovery = 0.8;
  net.bs_transmittivity_eta = 0.5;
  net.wavelength = 800e-9;
  apply_default_geometry(net);
  return net;
}

double loss_parameter(const CavitySpec& c) {
  const double xi = std::sqrt(c.r_in * c.r_out * std::exp(-2.0 * c.length_d * c.absorption_alpha));
  if (!(xi > 0.0 && xi < 1.0))
    throw SpecError("cavity", "loss parameter xi = " + std::to_string(xi) + " must lie in (0, 1)");
  return xi;
}

double round_trips(double xi) {
  if (!(xi > 0.0 && xi < 1.0))
    throw SpecError("xi", "loss parameter " + std::to_string(xi) + " must lie in (0, 1)");
  return 1.0 / (1.0 - xi);
}

InternalLoss internal_dissipation(const CavitySpec& c) {
  const double xi = loss_parameter(c);
  const double m = round_trips(xi);
  const double D = -std::expm1(-2.0 * c.absorption_alpha * c.length_d);
  // D/(m t) * sum_{i=0}^{m} xi^(2i), summed in closed form with real m.
  const double gamma =
      D * (1.0 - std::pow(xi, 2.0 * (m + 1.0))) / ((1.0 - xi * xi) * m * round_trip_time(c));
  return {gamma * kPerSecondToGHz, D};
}

double external_dissipation(const CavitySpec& c) {
  return (1.0 - c.feedback_recovery) * detector_rate(c);
}

double detector_rate(const CavitySpec& c) {
  const double m = round_trips(loss_parameter(c));
  return (1.0 - std::pow(c.r_out, m + 1.0)) / (m * round_trip_time(c)) * kPerSecondToGHz;
}

double propagation_phase(double length, double wavelength) {
  const double cycles = length / wavelength;
  double frac = cycles - std::round(cycles);
  if (std::abs(frac) < 1e-6) frac = 0.0;
  return 2.0 * std::numbers::pi * frac;
}

Complex inter_cavity_transfer(int k, int j, const NetworkSpec& net) {
  const int n = net.n_sites();
  if (k == j || k < 1 || j < 1 || k > n || j > n || !net.connected(k, j))
    throw SpecError("reflection_counts", "pair " + pair_name(k, j) + " is not in the connectivity");

  const int n_r = net.reflection_counts.at({k, j});
  const int interactions = net.is_direct(k, j) ? 1 : 2;
  if (n_r < 0 || n_r > interactions)
    throw SpecError("reflection_counts" + pair_name(k, j), "inconsistent with link type");

  const double eta = net.bs_transmittivity_eta;
  // Every beamsplitter interaction contributes sqrt(1 - eta) when reflected
  // and sqrt(eta) when transmitted; at eta = 1/2 each is the familiar 1/sqrt(2).
  const double amplitude = std::pow(std::sqrt(1.0 - eta), n_r) *
                           std::pow(std::sqrt(eta), interactions - n_r);

  auto phase = [&](int site) {
    return propagation_phase(net.cavities[static_cast<std::size_t>(site - 1)].distance_l,
                             net.wavelength);
  };
  const Complex i_unit(0.0, 1.0);
  const Complex reflection_phase = std::pow(i_unit, n_r);

  Complex paths(1.0, 0.0);
  if (interactions == 2) {
    paths = 0.0;
    for (int p = 1; p <= n; ++p) {
      if (p == k || p == j) continue;
      const double r_in = net.cavities[static_cast<std::size_t>(p - 1)].r_in;
      paths += std::sqrt(r_in) * std::polar(1.0, 2.0 * phase(p));
    }
  }
  return reflection_phase * amplitude * std::polar(1.0, phase(k) + phase(j)) * paths;
}

Complex coupling(int k, int j, const NetworkSpec& net) {
  const Complex transfer = inter_cavity_transfer(k, j, net);
  const CavitySpec& ck = net.cavities[static_cast<std::size_t>(k - 1)];
  const CavitySpec& cj = net.cavities[static_cast<std::size_t>(j - 1)];

  // Intracavity group velocity is c for both (air-spaced cavities).
  const double rate = std::sqrt(kSpeedOfLight * kSpeedOfLight / (ck.length_d * cj.length_d)) *
                      kPerSecondToGHz;
  const double mirrors = std::sqrt((1.0 - ck.r_in) * (1.0 - cj.r_in));
  const double absorption = std::exp(-ck.absorption_alpha * ck.length_d);
  const double cavity_phase = propagation_phase(ck.length_d, net.wavelength);

  const double xi_j = loss_parameter(cj);
  const double denominator = net.coupling_denominator_mode == DenominatorMode::Literal1MinusM
                                 ? 1.0 - round_trips(xi_j)
                                 : 1.0 - xi_j;

  const Complex two_i(0.0, 2.0);
  return transfer / two_i * rate * mirrors * std::polar(1.0, -cavity_phase) * absorption /
         denominator;
}

Complex symmetric_coupling(int k, int j, const NetworkSpec& net) {
  const int lo = std::min(k, j);
  const int hi = std::max(k, j);
  const Complex forward = coupling(lo, hi, net);
  const Complex backward = coupling(hi, lo, net);
  const Complex g = std::polar(std::sqrt(std::abs(forward) * std::abs(backward)), std::arg(forward));
  return k < j ? g : std::conj(g);
}

RateSet paper_preset_rates(double dephasing_gamma) {
  if (!(dephasing_gamma >= 0.0)) throw SpecError("dephasing_gamma", "must be >= 0");
  RateSet rates;
  rates.n_sites = 4;
  rates.set_coupling(1, 2, 4.3);
  rates.set_coupling(1, 3, 5.7);
  rates.set_coupling(1, 4, 7.6);
  rates.set_coupling(2, 3, 6.1);
  rates.set_coupling(2, 4, 4.5);
  rates.set_coupling(3, 4, 5.9);
  rates.dissipation.assign(4, 0.07);
  rates.dephasing.assign(4, dephasing_gamma);
  rates.detector_rate = 1.0;
  rates.detector_site = 2;
  return rates;
}

RateSet derive_rates(const NetworkSpec& net, double dephasing_gamma, bool paper_preset) {
  if (paper_preset) {
    if (net.n_sites() != 4 && !net.cavities.empty())
      throw SpecError("network.cavities", "preset rates require a 4-site network");
    return paper_preset_rates(dephasing_gamma);
  }
  net.validate();
  if (!(dephasing_gamma >= 0.0)) throw SpecError("dephasing_gamma", "must be >= 0");

  const int n = net.n_sites();
  RateSet rates;
  rates.n_sites = n;
  rates.detector_site = std::min(2, n);
  rates.dephasing.assign(static_cast<std::size_t>(n), dephasing_gamma);

  for (int j = 1; j <= n; ++j) {
    const CavitySpec& c = net.cavities[static_cast<std::size_t>(j - 1)];
    CavityDiagnostics diag;
    diag.xi = loss_parameter(c);
    diag.m = round_trips(diag.xi);
    const InternalLoss internal = internal_dissipation(c);
    diag.D = internal.D;
    diag.gamma_internal = internal.gamma;
    if (j == rates.detector_site) {
      // The sink cavity's external mirror feeds the detector, not the loss.
      diag.gamma_out = 0.0;
      rates.detector_rate = detector_rate(c);
    } else {
      diag.gamma_out = external_dissipation(c);
    }
    rates.dissipation.push_back(diag.gamma_internal + diag.gamma_out);
    rates.diagnostics.push_back(diag);
  }

  for (int k = 1; k <= n; ++k) {
    for (int j = k + 1; j <= n; ++j) {
      if (!net.connected(k, j)) continue;
      rates.set_coupling(k, j, symmetric_coupling(k, j, net));
    }
  }
  return rates;
}

}  // namespace cavnet::optics
