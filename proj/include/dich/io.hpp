#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "dich/rates.hpp"

namespace dich {

/// Matrices travel as {"dim": d, "re": [[..]], "im": [[..]]} ("im" optional).
nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

/// Dichotomy files: {"rho": <matrix>, "sigma": <matrix>}.
nlohmann::json dichotomy_to_json(const Dichotomy& d);
Dichotomy dichotomy_from_json(const nlohmann::json& j, const Tolerances& tol = default_config().tol);
Dichotomy load_dichotomy(const std::string& path, const Tolerances& tol = default_config().tol);

nlohmann::json rate_result_to_json(const RateResult& r, double log_base = 0.0);

std::string regime_name(Regime r);

/// FNV-1a hash of the serialized RunConfig, printed into CSV headers so a
/// sweep is reproducible byte for byte.
std::string config_hash(const RunConfig& cfg);
nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

/// Unit conversion for CLI output: divides nats by log(base) when a base is
/// configured (0 = stay in nats).
double to_output_units(double nats, double log_base);

}  // namespace dich
