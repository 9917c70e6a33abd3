#include "cavnet/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cavnet/error.hpp"
#include "cavnet/version.hpp"

namespace cavnet::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kDefaultEnsembleStride = 10;
constexpr double kDefaultStep = 5e-4;
constexpr double kEntangleStep = 2.5e-4;

double number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw SpecError(path, "expected a number");
  return v.get<double>();
}

std::vector<double> numbers(const Json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw SpecError(path, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::uint64_t unsigned_integer(const Json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw SpecError(path, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

void check_rate(double g, const std::string& path) {
  if (!(g >= 0.0) || !std::isfinite(g)) throw SpecError(path, "rate must be finite and >= 0");
}

void prepare_output_dir(const RunConfig& cfg) {
  if (cfg.output_dir.empty()) throw SpecError("output_dir", "no output directory given (--out)");
  std::error_code ec;
  if (fs::exists(cfg.output_dir, ec)) {
    if (!fs::is_directory(cfg.output_dir, ec)) throw SpecError("output_dir", "exists and is not a directory");
    if (!fs::is_empty(cfg.output_dir, ec) && !cfg.force)
      throw SpecError("output_dir", cfg.output_dir.string() + " is not empty; pass --force to overwrite");
  } else {
    fs::create_directories(cfg.output_dir, ec);
    if (ec) throw SpecError("output_dir", "cannot create " + cfg.output_dir.string() + ": " + ec.message());
  }
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

RateSet resolve_rates(const RunConfig& cfg) {
  if (cfg.uses_preset()) return optics::paper_preset_rates(0.0);
  return optics::derive_rates(cfg.network.value_or(optics::NetworkSpec::reference_geometry()), 0.0, false);
}

void print_rate_table(std::ostream& out, const RateSet& rates) {
  out << std::fixed;
  if (!rates.diagnostics.empty()) {
    out << "site        xi         m         D  Gamma_int[MHz]  Gamma_out[MHz]  Gamma_j[MHz]\n";
    for (std::size_t i = 0; i < rates.diagnostics.size(); ++i) {
      const CavityDiagnostics& d = rates.diagnostics[i];
      out << std::setw(4) << i + 1 << std::setprecision(6) << std::setw(10) << d.xi
          << std::setprecision(3) << std::setw(10) << d.m << std::setprecision(6) << std::setw(10) << d.D
          << std::setprecision(3) << std::setw(16) << d.gamma_internal * 1e3 << std::setw(16)
          << d.gamma_out * 1e3 << std::setw(14) << rates.dissipation[i] * 1e3 << '\n';
    }
  } else {
    out << "site  Gamma_j[MHz]\n";
    for (std::size_t i = 0; i < rates.dissipation.size(); ++i)
      out << std::setw(4) << i + 1 << std::setprecision(3) << std::setw(14) << rates.dissipation[i] * 1e3 << '\n';
  }
  out << "Gamma_Det (site " << rates.detector_site << ") = " << std::setprecision(4) << rates.detector_rate
      << " GHz\n";
  out << "pair      Re g[GHz]      Im g[GHz]       |g|[GHz]\n";
  for (const auto& [pair, g] : rates.couplings) {
    out << "(" << pair.first << "," << pair.second << ")" << std::setprecision(4) << std::setw(15) << g.real()
        << std::setw(15) << g.imag() << std::setw(15) << std::abs(g) << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

std::vector<std::string> run_derive(const RunConfig& cfg, const RateSet& rates, std::ostream& out) {
  print_rate_table(out, rates);

  std::ofstream diag = open_output(cfg.output_dir / "diagnostics.csv");
  write_csv_row(diag, csv_header(Experiment::Derive, rates.n_sites));
  const optics::NetworkSpec net = cfg.network.value_or(optics::NetworkSpec::reference_geometry());
  for (std::size_t i = 0; i < rates.diagnostics.size(); ++i) {
    const CavityDiagnostics& d = rates.diagnostics[i];
    write_csv_row(diag, std::vector<double>{static_cast<double>(i + 1), net.cavities[i].r_in, net.cavities[i].r_out,
                                            d.xi, d.m, d.D, d.gamma_internal, d.gamma_out, rates.dissipation[i]});
  }

  std::ofstream couplings = open_output(cfg.output_dir / "couplings.csv");
  write_csv_row(couplings, std::vector<std::string>{"k", "j", "re_ghz", "im_ghz", "abs_ghz"});
  for (const auto& [pair, g] : rates.couplings) {
    write_csv_row(couplings, std::vector<double>{static_cast<double>(pair.first), static_cast<double>(pair.second),
                                                 g.real(), g.imag(), std::abs(g)});
  }

  std::ofstream js = open_output(cfg.output_dir / "rates.json");
  js << to_json(rates).dump(2) << '\n';
  return {"diagnostics.csv", "couplings.csv", "rates.json"};
}

std::vector<std::string> run_simulate(const RunConfig& cfg, const RateSet& rates, std::ostream& out) {
  const TimeGrid grid{cfg.t_end, cfg.step(), cfg.stride()};
  const auto curves = efficiency_curves(rates, cfg.gammas, grid, {cfg.frequency_scale});
  std::ofstream os = open_output(cfg.output_dir / csv_filename(Experiment::Simulate));
  write_csv_row(os, csv_header(Experiment::Simulate, rates.n_sites));
  std::vector<double> row;
  for (const EfficiencyCurve& c : curves) {
    const Trajectory& traj = c.trajectory;
    for (std::size_t t = 0; t < traj.size(); ++t) {
      const DensityMatrix rho = traj.state(t);
      row.assign({c.gamma, traj.times[t]});
      for (int i = 1; i <= rates.n_sites; ++i) row.push_back(rho.site_population(i));
      row.push_back(rho.vacuum_population());
      row.push_back(rho.sink_population());
      row.push_back(traj.sink_probability[t]);
      write_csv_row(os, row);
    }
    out << "gamma = " << format_number(c.gamma) << " GHz: p_sink(" << format_number(cfg.t_end)
        << " ns) = " << format_number(sink_probability_of(traj)) << '\n';
  }
  return {csv_filename(Experiment::Simulate)};
}

std::vector<std::string> run_sweep(const RunConfig& cfg, const RateSet& rates, std::ostream& out) {
  const auto points = dephasing_sweep(rates, cfg.gamma_grid, cfg.t_end, cfg.step(), {cfg.frequency_scale});
  std::ofstream os = open_output(cfg.output_dir / csv_filename(Experiment::Sweep));
  write_csv_row(os, csv_header(Experiment::Sweep));
  for (const SweepPoint& p : points) write_csv_row(os, std::vector<double>{p.gamma, p.p_sink});
  out << "swept " << points.size() << " dephasing rates at t = " << format_number(cfg.t_end) << " ns\n";
  return {csv_filename(Experiment::Sweep)};
}

std::vector<std::string> run_disorder(const RunConfig& cfg, const RateSet& rates, std::ostream& out) {
  DisorderConfig dc = cfg.disorder;
  dc.seed = cfg.seed;
  const TimeGrid grid{cfg.t_end, cfg.step(), cfg.stride()};
  const DisorderResult res = disorder_ensemble(rates, dc, cfg.gamma, grid, {cfg.frequency_scale});
  std::ofstream os = open_output(cfg.output_dir / csv_filename(Experiment::Disorder));
  write_csv_row(os, csv_header(Experiment::Disorder));
  for (std::size_t t = 0; t < res.p_sink.times.size(); ++t) {
    write_csv_row(os, std::vector<double>{res.p_sink.times[t], res.p_sink.mean[t], res.p_sink.std[t],
                                          res.site1_population.mean[t], res.site1_population.std[t]});
  }
  out << dc.n_samples << " samples: mean p_sink(" << format_number(cfg.t_end)
      << " ns) = " << format_number(res.p_sink.mean.back()) << " +/- " << format_number(res.p_sink.std.back())
      << '\n';
  return {csv_filename(Experiment::Disorder)};
}

std::vector<std::string> run_entangle(const RunConfig& cfg, const RateSet& rates, std::ostream& out) {
  const TimeGrid grid{cfg.t_end, cfg.step(), cfg.stride()};
  const EntanglementSeries series = entanglement_protocol(rates, cfg.gamma, grid, {cfg.frequency_scale});
  std::ofstream os = open_output(cfg.output_dir / csv_filename(Experiment::Entangle));
  write_csv_row(os, csv_header(Experiment::Entangle));
  for (std::size_t t = 0; t < series.times.size(); ++t)
    write_csv_row(os, std::vector<double>{series.times[t], series.ancilla_site2[t], series.ancilla_network[t]});
  out << "log-negativity at " << format_number(cfg.t_end) << " ns: "
      << format_number(series.ancilla_site2.back()) << '\n';
  return {csv_filename(Experiment::Entangle)};
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::Derive: return "derive";
    case Experiment::Simulate: return "simulate";
    case Experiment::Sweep: return "sweep";
    case Experiment::Disorder: return "disorder";
    case Experiment::Entangle: return "entangle";
  }
  return "";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
  for (Experiment e : {Experiment::Derive, Experiment::Simulate, Experiment::Sweep, Experiment::Disorder,
                       Experiment::Entangle})
    if (to_string(e) == name) return e;
  return std::nullopt;
}

std::size_t RunConfig::stride() const {
  if (record_stride) return *record_stride;
  return experiment == Experiment::Disorder || experiment == Experiment::Entangle ? kDefaultEnsembleStride : 1;
}

double RunConfig::step() const {
  if (dt) return *dt;
  return experiment == Experiment::Entangle ? kEntangleStep : kDefaultStep;
}

bool RunConfig::uses_preset() const {
  if (paper_preset) return *paper_preset;
  return experiment != Experiment::Derive && !network;
}

RunConfig parse_run_config(const Json& doc, Experiment experiment) {
  require_known_keys(doc,
                     {"experiment", "network", "paper_preset", "gammas", "gamma", "gamma_grid", "t_end", "dt",
                      "record_stride", "disorder", "seed", "frequency_scale", "output_dir"},
                     "");
  RunConfig cfg;
  cfg.experiment = experiment;
  if (const auto it = doc.find("experiment"); it != doc.end()) {
    if (!it->is_string()) throw SpecError("experiment", "expected a string");
    const auto named = parse_experiment(it->get<std::string>());
    if (!named) throw SpecError("experiment", "unknown experiment " + it->get<std::string>());
    if (*named != experiment)
      throw SpecError("experiment", "config selects " + std::string(to_string(*named)) +
                                        " but the command is " + std::string(to_string(experiment)));
  }
  if (const auto it = doc.find("network"); it != doc.end()) cfg.network = network_from_json(*it, "network");
  if (const auto it = doc.find("paper_preset"); it != doc.end()) {
    if (!it->is_boolean()) throw SpecError("paper_preset", "expected a boolean");
    cfg.paper_preset = it->get<bool>();
  }
  if (const auto it = doc.find("gammas"); it != doc.end()) cfg.gammas = numbers(*it, "gammas");
  if (const auto it = doc.find("gamma"); it != doc.end()) cfg.gamma = number(*it, "gamma");
  if (const auto it = doc.find("gamma_grid"); it != doc.end()) cfg.gamma_grid = numbers(*it, "gamma_grid");
  if (const auto it = doc.find("t_end"); it != doc.end()) cfg.t_end = number(*it, "t_end");
  if (const auto it = doc.find("dt"); it != doc.end()) cfg.dt = number(*it, "dt");
  if (const auto it = doc.find("record_stride"); it != doc.end()) {
    cfg.record_stride = static_cast<std::size_t>(unsigned_integer(*it, "record_stride"));
    if (*cfg.record_stride == 0) throw SpecError("record_stride", "must be >= 1");
  }
  if (const auto it = doc.find("disorder"); it != doc.end()) {
    require_known_keys(*it, {"relative_spread", "n_samples", "distribution"}, "disorder");
    if (const auto s = it->find("relative_spread"); s != it->end())
      cfg.disorder.relative_spread = number(*s, "disorder.relative_spread");
    if (const auto s = it->find("n_samples"); s != it->end())
      cfg.disorder.n_samples = static_cast<std::size_t>(unsigned_integer(*s, "disorder.n_samples"));
    if (const auto s = it->find("distribution"); s != it->end()) {
      if (!s->is_string() || s->get<std::string>() != "uniform")
        throw SpecError("disorder.distribution", "only \"uniform\" is supported");
    }
  }
  if (const auto it = doc.find("seed"); it != doc.end()) cfg.seed = unsigned_integer(*it, "seed");
  if (const auto it = doc.find("frequency_scale"); it != doc.end())
    cfg.frequency_scale = number(*it, "frequency_scale");
  if (const auto it = doc.find("output_dir"); it != doc.end()) {
    if (!it->is_string()) throw SpecError("output_dir", "expected a string");
    cfg.output_dir = it->get<std::string>();
  }

  for (std::size_t i = 0; i < cfg.gammas.size(); ++i) check_rate(cfg.gammas[i], "gammas[" + std::to_string(i) + "]");
  for (std::size_t i = 0; i < cfg.gamma_grid.size(); ++i)
    check_rate(cfg.gamma_grid[i], "gamma_grid[" + std::to_string(i) + "]");
  check_rate(cfg.gamma, "gamma");
  if (!(cfg.t_end >= 0.0)) throw SpecError("t_end", "must be >= 0");
  if (cfg.dt && !(*cfg.dt > 0.0)) throw SpecError("dt", "must be > 0");
  if (!(cfg.frequency_scale > 0.0)) throw SpecError("frequency_scale", "must be > 0");
  cfg.disorder.validate("disorder");
  if (cfg.uses_preset() && cfg.network && cfg.network->n_sites() != 4)
    throw SpecError("network", "paper_preset requires a 4-site network");
  return cfg;
}

Json to_json(const RunConfig& cfg) {
  Json doc{{"experiment", to_string(cfg.experiment)},
           {"paper_preset", cfg.uses_preset()},
           {"t_end", cfg.t_end},
           {"dt", cfg.step()},
           {"record_stride", cfg.stride()},
           {"seed", cfg.seed},
           {"frequency_scale", cfg.frequency_scale}};
  if (!cfg.uses_preset()) doc["network"] = cavnet::to_json(cfg.network.value_or(optics::NetworkSpec::reference_geometry()));
  switch (cfg.experiment) {
    case Experiment::Simulate: doc["gammas"] = cfg.gammas; break;
    case Experiment::Sweep: doc["gamma_grid"] = cfg.gamma_grid; break;
    case Experiment::Disorder:
      doc["gamma"] = cfg.gamma;
      doc["disorder"] = {{"relative_spread", cfg.disorder.relative_spread},
                         {"n_samples", cfg.disorder.n_samples},
                         {"distribution", "uniform"}};
      break;
    case Experiment::Entangle: doc["gamma"] = cfg.gamma; break;
    case Experiment::Derive: break;
  }
  return doc;
}

std::vector<std::string> csv_header(Experiment e, int n_sites) {
  switch (e) {
    case Experiment::Derive:
      return {"site", "r_in", "r_out", "xi", "m", "D", "gamma_internal_ghz", "gamma_out_ghz", "dissipation_ghz"};
    case Experiment::Simulate: {
      std::vector<std::string> h{"gamma_ghz"};
      const auto traj = trajectory_csv_header(n_sites);
      h.insert(h.end(), traj.begin(), traj.end());
      return h;
    }
    case Experiment::Sweep: return {"gamma_ghz", "p_sink"};
    case Experiment::Disorder:
      return {"time_ns", "p_sink_mean", "p_sink_std", "pop_site1_mean", "pop_site1_std"};
    case Experiment::Entangle: return {"time_ns", "log_negativity", "log_negativity_ancilla_network"};
  }
  return {};
}

std::string csv_filename(Experiment e) {
  if (e == Experiment::Derive) return "diagnostics.csv";
  return std::string(to_string(e)) + ".csv";
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    prepare_output_dir(cfg);
    const RateSet rates = resolve_rates(cfg);
    std::vector<std::string> files;
    switch (cfg.experiment) {
      case Experiment::Derive: files = run_derive(cfg, rates, out); break;
      case Experiment::Simulate: files = run_simulate(cfg, rates, out); break;
      case Experiment::Sweep: files = run_sweep(cfg, rates, out); break;
      case Experiment::Disorder: files = run_disorder(cfg, rates, out); break;
      case Experiment::Entangle: files = run_entangle(cfg, rates, out); break;
    }
    Json meta{{"tool", "cavnet"},
              {"version", kVersion},
              {"config", to_json(cfg)},
              {"rates", cavnet::to_json(rates)},
              {"outputs", files}};
    std::ofstream os = open_output(cfg.output_dir / "meta.json");
    os << meta.dump(2) << '\n';
    return exit_code::kOk;
  } catch (const SpecError& e) {
    err << "cavnet: invalid input: " << e.what() << '\n';
    return exit_code::kInvalid;
  } catch (const NumericalError& e) {
    err << "cavnet: numerical failure at " << e.what() << '\n';
    return exit_code::kNumerical;
  } catch (const std::exception& e) {
    err << "cavnet: " << e.what() << '\n';
    return exit_code::kFailure;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"Noise-assisted photon transport through a coupled-cavity network"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool force = false;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (overrides output_dir)");
  app.add_option("--seed", seed, "Random seed (overrides seed)");
  app.add_flag("--force", force, "Allow writing into a non-empty output directory");

  const std::pair<Experiment, const char*> commands[] = {
      {Experiment::Derive, "Derive rates from the cavity specifications"},
      {Experiment::Simulate, "Site-1 population and p_sink versus time for each dephasing rate"},
      {Experiment::Sweep, "p_sink at t_end versus dephasing rate"},
      {Experiment::Disorder, "Mean and spread of p_sink under static coupling disorder"},
      {Experiment::Entangle, "Log-negativity between an ancilla and the site-2 photon"},
  };
  for (const auto& [e, help] : commands) app.add_subcommand(std::string(to_string(e)), help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_code::kOk : exit_code::kInvalid;
  }

  const Experiment experiment = *parse_experiment(app.get_subcommands().front()->get_name());
  RunConfig cfg;
  try {
    Json doc = Json::object();
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is) throw SpecError("--config", "cannot open " + config_path);
      try {
        doc = Json::parse(is);
      } catch (const Json::parse_error& e) {
        throw SpecError("--config", std::string("not valid JSON: ") + e.what());
      }
    }
    cfg = parse_run_config(doc, experiment);
  } catch (const SpecError& e) {
    std::cerr << "cavnet: invalid config: " << e.what() << '\n';
    return exit_code::kInvalid;
  }
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (seed) cfg.seed = *seed;
  cfg.force = force;
  return run(cfg, std::cout, std::cerr);
}

}  // namespace cavnet::cli
