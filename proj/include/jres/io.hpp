#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "jres/reconstruct.hpp"

namespace jres::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct Tolerances {
    double cluster_radius = kDefaultClusterRadius;
    double quadrature_tol = 1e-10;
    double lift_tol = 1e-6;
};

struct RunConfig {
    std::vector<double> a0, b0;
    std::optional<std::pair<std::vector<double>, std::vector<double>>> perturbation;  // (u, v)
    Tolerances tol;
    int grid = 200;
    std::uint64_t seed = 0;
    int draws = 0;
};

/// Schema errors throw Error(Errc::Schema).
RunConfig parse_config(const json& j);
RunConfig load_config(const std::string& path);

json read_json(const std::string& path);
/// Writes through a temporary file in the same directory, then renames.
void write_atomic(const std::string& path, const std::string& content);
std::string dump(const json& j);

json poly_to_json(const Poly& p);
Poly poly_from_json(const json& j);
json cplx_to_json(cplx z);
cplx cplx_from_json(const json& j);

json background_json(const PeriodicBackground& bg);
json bands_json(const PeriodicBackground& bg);
json states_json(const PerturbedOperator& op, const StateCatalog& cat, const LawReport& laws);
json scattering_json(const ScatteringData& d);
ScatteringData scattering_from_json(const json& j);
json glm_report_json(const Recovery& r, int nu);
json reconstruction_input_json(const ReconstructionInput& in);
ReconstructionInput reconstruction_input_from_json(const json& j);

/// Grid on the unit circle avoiding z^{2q} = 1.
std::string scattering_csv(const PeriodicBackground& bg, const Carriers& c, int grid);

std::string bands_svg(const PeriodicBackground& bg);
std::string states_svg(const PeriodicBackground& bg, const StateCatalog& cat);

}  // namespace jres::io
