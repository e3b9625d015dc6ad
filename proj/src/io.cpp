#include "dich/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dich {

using nlohmann::json;

json matrix_to_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json rrow = json::array(), irow = json::array();
    for (int j = 0; j < m.cols(); ++j) {
      rrow.push_back(m(i, j).real());
      irow.push_back(m(i, j).imag());
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  return json{{"dim", m.rows()}, {"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const json& j) {
  const int d = j.at("dim").get<int>();
  if (d < 1) throw std::invalid_argument("matrix json: dim must be >= 1");
  CMatrix m(d, d);
  const auto& re = j.at("re");
  const bool has_im = j.contains("im");
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const double r = re.at(i).at(k).get<double>();
      const double im = has_im ? j.at("im").at(i).at(k).get<double>() : 0.0;
      m(i, k) = cplx(r, im);
    }
  return m;
}

json dichotomy_to_json(const Dichotomy& d) {
  return json{{"rho", matrix_to_json(d.rho.matrix())}, {"sigma", matrix_to_json(d.sigma.matrix())}};
}

Dichotomy dichotomy_from_json(const json& j, const Tolerances& tol) {
  return Dichotomy(DensityOperator(matrix_from_json(j.at("rho")), tol),
                   DensityOperator(matrix_from_json(j.at("sigma")), tol), tol);
}

Dichotomy load_dichotomy(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return dichotomy_from_json(j, tol);
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::FirstOrder: return "first";
    case Regime::Small: return "small";
    case Regime::ModerateLow: return "moderate-lo";
    case Regime::ModerateHigh: return "moderate-hi";
    case Regime::LargeLow: return "large-lo";
    case Regime::LargeHigh: return "large-hi";
    case Regime::ZeroError: return "zero";
    case Regime::ExtremeHigh: return "extreme";
  }
  return "?";
}

double to_output_units(double nats, double log_base) {
  if (log_base <= 0.0) return nats;
  return nats / std::log(log_base);
}

json rate_result_to_json(const RateResult& r, double log_base) {
  // Rates are ratios (unit-free); only raw entropic diagnostics would need
  // base conversion, so log_base is recorded rather than applied.
  json j{{"regime", regime_name(r.regime)},
         {"value", r.value},
         {"second_order", r.second_order},
         {"infinite", r.infinite},
         {"to_achievable", r.to_achievable},
         {"notes", r.notes}};
  switch (r.bound_kind) {
    case BoundKind::TwoSidedTight: j["bound_kind"] = "two-sided-tight"; break;
    case BoundKind::UpperOnly: j["bound_kind"] = "upper-only"; break;
    case BoundKind::LowerAndUpper:
      j["bound_kind"] = "lower-and-upper";
      j["lower_bound"] = r.lower_bound;
      j["upper_bound"] = r.upper_bound;
      j["gap"] = r.gap();
      break;
  }
  if (log_base > 0) j["log_base"] = log_base;
  return j;
}

json config_to_json(const RunConfig& cfg) {
  return json{{"eigen_tol", cfg.tol.eigen_offdiag},
              {"cluster_tol", cfg.tol.cluster_rel},
              {"bracket_tol", cfg.tol.bracket},
              {"commute_tol", cfg.tol.commute},
              {"optimizer_grid", cfg.optimizer_grid},
              {"mu_grid", cfg.mu_grid},
              {"alpha_grid", cfg.alpha_grid},
              {"pinched_n_max", cfg.pinched_n_max},
              {"log_base", cfg.log_base},
              {"seed", cfg.seed}};
}

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  if (j.contains("eigen_tol")) cfg.tol.eigen_offdiag = j["eigen_tol"].get<double>();
  if (j.contains("cluster_tol")) cfg.tol.cluster_rel = j["cluster_tol"].get<double>();
  if (j.contains("bracket_tol")) cfg.tol.bracket = j["bracket_tol"].get<double>();
  if (j.contains("commute_tol")) cfg.tol.commute = j["commute_tol"].get<double>();
  if (j.contains("optimizer_grid")) cfg.optimizer_grid = j["optimizer_grid"].get<int>();
  if (j.contains("mu_grid")) cfg.mu_grid = j["mu_grid"].get<int>();
  if (j.contains("alpha_grid")) cfg.alpha_grid = j["alpha_grid"].get<int>();
  if (j.contains("pinched_n_max")) cfg.pinched_n_max = j["pinched_n_max"].get<int>();
  if (j.contains("log_base")) cfg.log_base = j["log_base"].get<double>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  for (double t : {cfg.tol.eigen_offdiag, cfg.tol.cluster_rel, cfg.tol.bracket, cfg.tol.commute})
    if (!(t > 0)) throw std::invalid_argument("config: tolerances must be positive");
  return cfg;
}

std::string config_hash(const RunConfig& cfg) {
  const std::string s = config_to_json(cfg).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace dich
