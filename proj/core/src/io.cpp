#include "cavnet/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>

#include "cavnet/error.hpp"

namespace cavnet {

namespace {

using optics::CavitySpec;
using optics::DenominatorMode;
using optics::NetworkSpec;

const Json& member(const Json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw SpecError(path + "." + key, "required key missing");
  return *it;
}

double number(const Json& value, const std::string& path) {
  if (!value.is_number()) throw SpecError(path, "expected a number");
  return value.get<double>();
}

int integer(const Json& value, const std::string& path) {
  if (!value.is_number_integer()) throw SpecError(path, "expected an integer");
  return value.get<int>();
}

double number_or(const Json& obj, const std::string& key, double fallback, const std::string& path) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, path + "." + key);
}

std::pair<int, int> site_pair(const Json& value, const std::string& path) {
  if (!value.is_array() || value.size() != 2) throw SpecError(path, "expected [k, j]");
  return {integer(value[0], path + "[0]"), integer(value[1], path + "[1]")};
}

const char* mode_name(DenominatorMode mode) {
  return mode == DenominatorMode::Literal1MinusM ? "literal_1_minus_m" : "buildup_1_minus_xi";
}

}  // namespace

void require_known_keys(const Json& obj, const std::vector<std::string>& allowed, const std::string& path) {
  if (!obj.is_object()) throw SpecError(path, "expected an object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      throw SpecError(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
  }
}

Json to_json(const DensityMatrix& rho) {
  const Basis& basis = rho.basis();
  Json labels = Json::array();
  for (const Label& l : basis.labels()) labels.push_back(l.name());
  Json data = Json::array();
  for (Index i = 0; i < basis.dim(); ++i)
    for (Index j = 0; j < basis.dim(); ++j)
      data.push_back({rho.data()(i, j).real(), rho.data()(i, j).imag()});
  return {{"n_sites", basis.n_sites()},
          {"include_sink", basis.has_sink()},
          {"include_ancilla", basis.has_ancilla()},
          {"labels", labels},
          {"data", data}};
}

DensityMatrix density_matrix_from_json(const Json& doc) {
  const std::string path = "density_matrix";
  require_known_keys(doc, {"n_sites", "include_sink", "include_ancilla", "labels", "data"}, path);
  const Json& sink = member(doc, "include_sink", path);
  const Json& anc = member(doc, "include_ancilla", path);
  if (!sink.is_boolean() || !anc.is_boolean()) throw SpecError(path, "include_* flags must be booleans");
  const Basis basis(integer(member(doc, "n_sites", path), path + ".n_sites"), sink.get<bool>(),
                    anc.get<bool>());

  const Json& labels = member(doc, "labels", path);
  if (!labels.is_array() || labels.size() != basis.labels().size())
    throw SpecError(path + ".labels", "label count does not match the basis");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].is_string() || labels[i].get<std::string>() != basis.labels()[i].name())
      throw SpecError(path + ".labels[" + std::to_string(i) + "]",
                      "expected " + basis.labels()[i].name());
  }

  const Json& data = member(doc, "data", path);
  const Index dim = basis.dim();
  if (!data.is_array() || data.size() != static_cast<std::size_t>(dim * dim))
    throw SpecError(path + ".data", "expected " + std::to_string(dim * dim) + " entries");
  Matrix m(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      const std::string p = path + ".data[" + std::to_string(i * dim + j) + "]";
      const Json& z = data[static_cast<std::size_t>(i * dim + j)];
      if (!z.is_array() || z.size() != 2) throw SpecError(p, "expected [re, im]");
      m(i, j) = Complex(number(z[0], p), number(z[1], p));
    }
  }
  return {basis, m};
}

Json to_json(const NetworkSpec& net) {
  Json cavities = Json::array();
  for (const CavitySpec& c : net.cavities) {
    cavities.push_back({{"r_in", c.r_in},
                        {"r_out", c.r_out},
                        {"length_d", c.length_d},
                        {"absorption_alpha", c.absorption_alpha},
                        {"distance_l", c.distance_l},
                        {"feedback_recovery", c.feedback_recovery}});
  }
  Json direct = Json::array();
  for (const auto& [k, j] : net.direct_pairs) direct.push_back({k, j});
  Json counts = Json::array();
  for (const auto& [pair, n_r] : net.reflection_counts) counts.push_back({pair.first, pair.second, n_r});
  return {{"cavities", cavities},
          {"bs_transmittivity_eta", net.bs_transmittivity_eta},
          {"wavelength", net.wavelength},
          {"direct_pairs", direct},
          {"reflection_counts", counts},
          {"coupling_denominator_mode", mode_name(net.coupling_denominator_mode)}};
}

NetworkSpec network_from_json(const Json& doc, const std::string& path) {
  require_known_keys(doc,
                     {"cavities", "bs_transmittivity_eta", "wavelength", "direct_pairs",
                      "reflection_counts", "coupling_denominator_mode"},
                     path);
  NetworkSpec net;
  const Json& cavities = member(doc, "cavities", path);
  if (!cavities.is_array() || cavities.empty())
    throw SpecError(path + ".cavities", "expected a non-empty array");
  for (std::size_t i = 0; i < cavities.size(); ++i) {
    const std::string p = path + ".cavities[" + std::to_string(i) + "]";
    const Json& c = cavities[i];
    require_known_keys(c,
                       {"r_in", "r_out", "length_d", "absorption_alpha", "distance_l",
                        "feedback_recovery"},
                       p);
    CavitySpec spec;
    spec.r_in = number(member(c, "r_in", p), p + ".r_in");
    spec.r_out = number(member(c, "r_out", p), p + ".r_out");
    spec.length_d = number(member(c, "length_d", p), p + ".length_d");
    spec.absorption_alpha = number(member(c, "absorption_alpha", p), p + ".absorption_alpha");
    spec.distance_l = number_or(c, "distance_l", 0.0, p);
    spec.feedback_recovery = number_or(c, "feedback_recovery", 0.0, p);
    net.cavities.push_back(spec);
  }
  net.bs_transmittivity_eta = number_or(doc, "bs_transmittivity_eta", 0.5, path);
  net.wavelength = number_or(doc, "wavelength", 800e-9, path);

  NetworkSpec::apply_default_geometry(net);
  if (const auto it = doc.find("direct_pairs"); it != doc.end()) {
    if (!it->is_array()) throw SpecError(path + ".direct_pairs", "expected an array of [k, j]");
    net.direct_pairs.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto [k, j] = site_pair((*it)[i], path + ".direct_pairs[" + std::to_string(i) + "]");
      net.direct_pairs.insert(canonical_pair(k, j));
    }
    for (auto& [pair, n_r] : net.reflection_counts) n_r = net.is_direct(pair.first, pair.second) ? 1 : 2;
  }
  if (const auto it = doc.find("reflection_counts"); it != doc.end()) {
    if (!it->is_array()) throw SpecError(path + ".reflection_counts", "expected an array of [k, j, n_r]");
    net.reflection_counts.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string p = path + ".reflection_counts[" + std::to_string(i) + "]";
      const Json& e = (*it)[i];
      if (!e.is_array() || e.size() != 3) throw SpecError(p, "expected [k, j, n_r]");
      net.reflection_counts[{integer(e[0], p), integer(e[1], p)}] = integer(e[2], p);
    }
  }
  if (const auto it = doc.find("coupling_denominator_mode"); it != doc.end()) {
    const std::string p = path + ".coupling_denominator_mode";
    if (!it->is_string()) throw SpecError(p, "expected a string");
    const auto mode = it->get<std::string>();
    if (mode == "literal_1_minus_m") net.coupling_denominator_mode = DenominatorMode::Literal1MinusM;
    else if (mode == "buildup_1_minus_xi") net.coupling_denominator_mode = DenominatorMode::Buildup1MinusXi;
    else throw SpecError(p, "expected literal_1_minus_m or buildup_1_minus_xi, got " + mode);
  }
  net.validate(path);
  return net;
}

Json to_json(const RateSet& rates) {
  Json couplings = Json::array();
  for (const auto& [pair, g] : rates.couplings) {
    couplings.push_back({{"pair", {pair.first, pair.second}},
                         {"re", g.real()},
                         {"im", g.imag()},
                         {"abs", std::abs(g)}});
  }
  Json diagnostics = Json::array();
  for (std::size_t i = 0; i < rates.diagnostics.size(); ++i) {
    const CavityDiagnostics& d = rates.diagnostics[i];
    diagnostics.push_back({{"site", i + 1},
                           {"xi", d.xi},
                           {"m", d.m},
                           {"D", d.D},
                           {"gamma_internal", d.gamma_internal},
                           {"gamma_out", d.gamma_out}});
  }
  return {{"n_sites", rates.n_sites},
          {"units", "GHz"},
          {"couplings", couplings},
          {"dissipation", rates.dissipation},
          {"dephasing", rates.dephasing},
          {"detector_rate", rates.detector_rate},
          {"detector_site", rates.detector_site},
          {"diagnostics", diagnostics}};
}

std::string format_number(double x) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) return "nan";
  return {buf.data(), end};
}

std::vector<std::string> trajectory_csv_header(int n_sites) {
  std::vector<std::string> header{"time_ns"};
  for (int i = 1; i <= n_sites; ++i) header.push_back("pop_site" + std::to_string(i));
  header.insert(header.end(), {"pop_vac", "pop_sink", "p_sink_integral"});
  return header;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

void write_csv_row(std::ostream& os, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << format_number(values[i]);
  }
  os << '\n';
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const int n = traj.basis.n_sites();
  write_csv_row(os, trajectory_csv_header(n));
  std::vector<double> row;
  for (std::size_t t = 0; t < traj.size(); ++t) {
    const DensityMatrix rho = traj.state(t);
    row.assign({traj.times[t]});
    for (int i = 1; i <= n; ++i) row.push_back(rho.site_population(i));
    row.push_back(rho.vacuum_population());
    row.push_back(rho.sink_population());
    row.push_back(traj.sink_probability[t]);
    write_csv_row(os, row);
  }
}

}  // namespace cavnet
