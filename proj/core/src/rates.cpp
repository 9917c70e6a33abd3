#include "cavnet/rates.hpp"

#include <cmath>

#include "cavnet/error.hpp"

namespace cavnet {

Complex RateSet::coupling(int k, int j) const {
  if (k == j) return {};
  const auto it = couplings.find(canonical_pair(k, j));
  if (it == couplings.end()) return {};
  return k < j ? it->second : std::conj(it->second);
}

void RateSet::set_coupling(int k, int j, Complex g) {
  if (k == j) throw SpecError("couplings", "self-coupling of site " + std::to_string(k));
  couplings[canonical_pair(k, j)] = k < j ? g : std::conj(g);
}

RateSet RateSet::with_dephasing(double gamma) const {
  RateSet out = *this;
  out.dephasing.assign(static_cast<std::size_t>(n_sites), gamma);
  return out;
}

RateSet RateSet::without_detector() const {
  RateSet out = *this;
  out.detector_rate = 0.0;
  return out;
}

namespace {

void check_rates(const std::vector<double>& v, int n, const char* name) {
  if (static_cast<int>(v.size()) != n)
    throw SpecError(name, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || v[i] < 0.0)
      throw SpecError(std::string(name) + "[" + std::to_string(i) + "]", "rate must be finite and >= 0");
  }
}

}  // namespace

void RateSet::validate() const {
  if (n_sites < 1) throw SpecError("n_sites", "must be at least 1");
  check_rates(dissipation, n_sites, "dissipation");
  check_rates(dephasing, n_sites, "dephasing");
  if (!std::isfinite(detector_rate) || detector_rate < 0.0)
    throw SpecError("detector_rate", "rate must be finite and >= 0");
  if (detector_site < 1 || detector_site > n_sites)
    throw SpecError("detector_site", "outside 1.." + std::to_string(n_sites));
  for (const auto& [pair, g] : couplings) {
    const auto [k, j] = pair;
    if (k < 1 || j > n_sites || k >= j)
      throw SpecError("couplings", "bad pair (" + std::to_string(k) + "," + std::to_string(j) + ")");
    if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
      throw SpecError("couplings", "non-finite coupling");
  }
}

}  // namespace cavnet
