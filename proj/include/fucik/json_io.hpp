#pragma once

#include <json.hpp>

#include <iosfwd>

#include "fucik/bvp.hpp"

namespace fucik {

inline constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

void to_json(json& j, const Domain& d);
void from_json(const json& j, Domain& d);

void to_json(json& j, const Exponent& pe);
void from_json(const json& j, Exponent& pe);

void to_json(json& j, const Field& f);
Field field_from_json(const json& j);

void to_json(json& j, const FucikParams& ab);
void from_json(const json& j, FucikParams& ab);

json nonlinearity_to_json(const Nonlinearity& f);
Nonlinearity nonlinearity_from_json(const json& j);

json perturbation_to_json(const PerturbationSpec& pert);
PerturbationSpec perturbation_from_json(const json& j);

json spectrum_to_json(const SpectrumData& spec);
SpectrumData spectrum_from_json(const json& j);

json region_to_json(const RegionPrediction& r);

json minimax_summary_json(const MinimaxResult& res);
json path_to_json(const Path& path);
Path path_from_json(const json& j);

json solve_report_json(const SolveReport& report);

/// FNV-1a of the canonical dump; stable across runs for identical content.
std::string config_hash(const json& j);

/// Provenance block attached to every artifact (mesh, exponent, hash, version).
json provenance_json(const Domain& d, const Exponent& pe, const json& config);

// CSV emitters. Field dumps include the boundary zeros.
void write_field_csv(std::ostream& os, const Field& f);
void write_curve_csv(std::ostream& os, const SpectrumData& spec);  // both branches
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& log);
void write_path_csv(std::ostream& os, const Path& path, const Shift& s);
void write_trace_csv(std::ostream& os, const std::vector<std::pair<double, double>>& trace);

}  // namespace fucik
