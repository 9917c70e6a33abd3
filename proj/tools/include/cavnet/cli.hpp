#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cavnet/experiments.hpp"
#include "cavnet/io.hpp"
#include "cavnet/optics.hpp"

namespace cavnet::cli {

enum class Experiment { Derive, Simulate, Sweep, Disorder, Entangle };

std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;    // I/O and anything unexpected
inline constexpr int kInvalid = 2;    // unreadable config, invariant violation
inline constexpr int kNumerical = 3;  // integration failed mid-run
}  // namespace exit_code

/// Everything a run needs. Physical units: metres, GHz, ns.
struct RunConfig {
  Experiment experiment = Experiment::Derive;
  std::optional<optics::NetworkSpec> network;  // reference geometry when absent
  std::optional<bool> paper_preset;            // see uses_preset()
  std::vector<double> gammas{0.0, 1.0};          // simulate
  double gamma = 1.0;                            // disorder, entangle
  std::vector<double> gamma_grid = default_gamma_grid();  // sweep
  double t_end = 20.0;
  std::optional<double> dt;                    // see step()
  std::optional<std::size_t> record_stride;
  DisorderConfig disorder;
  std::uint64_t seed = 0;
  double frequency_scale = 1.0;
  std::filesystem::path output_dir;
  bool force = false;

  std::size_t stride() const;
  /// 2.5e-4 ns for entangle, 5e-4 ns otherwise, unless set.
  double step() const;
  /// Explicit paper_preset wins; otherwise dynamics runs without a network use
  /// the preset and `derive` always derives.
  bool uses_preset() const;
};

/// Parses a config document for `experiment`. Unknown keys are an error; a
/// document "experiment" key must agree with the requested one.
RunConfig parse_run_config(const Json& doc, Experiment experiment);

/// Resolved configuration as written to meta.json.
Json to_json(const RunConfig& cfg);

/// CSV headers written by each experiment.
std::vector<std::string> csv_header(Experiment e, int n_sites = 4);
std::string csv_filename(Experiment e);

/// Executes one run into cfg.output_dir; returns an exit_code value and
/// reports problems on `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Command-line entry point: cavnet <subcommand> [--config path] [--out dir] [--seed n] [--force]
int main(int argc, char** argv);

}  // namespace cavnet::cli
