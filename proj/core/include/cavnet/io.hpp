#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cavnet/experiments.hpp"
#include "cavnet/optics.hpp"
#include "cavnet/rates.hpp"
#include "cavnet/statespace.hpp"

namespace cavnet {

using Json = nlohmann::json;

/// Throws SpecError naming the first key of `obj` not in `allowed`.
void require_known_keys(const Json& obj, const std::vector<std::string>& allowed,
                        const std::string& path);

/// {"labels": [...], "n_sites", "include_sink", "include_ancilla",
///  "data": [[re, im], ...]} with data in row-major order.
Json to_json(const DensityMatrix& rho);
DensityMatrix density_matrix_from_json(const Json& doc);

Json to_json(const optics::NetworkSpec& net);
/// Keys mirror the NetworkSpec field names. Missing direct_pairs /
/// reflection_counts fall back to the default geometry; unknown keys throw.
optics::NetworkSpec network_from_json(const Json& doc, const std::string& path = "network");

Json to_json(const RateSet& rates);

/// Shortest round-trip decimal form.
std::string format_number(double x);

/// Header: time_ns, pop_site1..pop_siteN, pop_vac, pop_sink, p_sink_integral.
std::vector<std::string> trajectory_csv_header(int n_sites);
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells);
void write_csv_row(std::ostream& os, const std::vector<double>& values);

}  // namespace cavnet
