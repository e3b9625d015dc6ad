// Command-line front end: rate queries, trade-off curve dumps, resonance and
// mixture scans, and the brute-force verification suite.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dich/entangle.hpp"
#include "dich/gaussian.hpp"
#include "dich/hypotest.hpp"
#include "dich/io.hpp"
#include "dich/oracle.hpp"
#include "dich/rates.hpp"
#include "dich/sesquinormal.hpp"
#include "dich/thermo.hpp"

using namespace dich;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitTolerance = 4;

RunConfig load_config(const std::string& explicit_path) {
  std::string path = explicit_path;
  if (path.empty()) {
    if (const char* env = std::getenv("DICHOTOMY_CONFIG")) path = env;
  }
  if (path.empty()) return default_config();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  json j;
  in >> j;
  return config_from_json(j);
}

Dichotomy fig2_input(double x, const Tolerances& tol) {
  return Dichotomy(coherent_qubit_family(0.85, x), DensityOperator::from_probs({0.95, 0.05}), tol);
}

Dichotomy fig2_target(const Tolerances& tol) {
  return Dichotomy(DensityOperator::from_probs({0.75, 0.25}),
                   DensityOperator::from_probs({0.95, 0.05}), tol);
}

// three-level mixture preset states (appendixG / fig6)
const std::vector<double> kG_rho1{0.4309, 0.4300, 0.1391};
const std::vector<double> kG_rho1p{0.5499, 0.2300, 0.2201};
const std::vector<double> kG_rho2{0.5121, 0.3300, 0.1579};
const std::vector<double> kG_sigma{1 / 3.0, 1 / 3.0, 1 / 3.0};

Regime parse_regime(const std::string& s) {
  if (s == "first") return Regime::FirstOrder;
  if (s == "small") return Regime::Small;
  if (s == "moderate-lo") return Regime::ModerateLow;
  if (s == "moderate-hi") return Regime::ModerateHigh;
  if (s == "large-lo") return Regime::LargeLow;
  if (s == "large-hi") return Regime::LargeHigh;
  if (s == "zero") return Regime::ZeroError;
  if (s == "extreme") return Regime::ExtremeHigh;
  throw std::runtime_error("unknown regime '" + s + "'");
}

void print_csv_header(std::ostream& os, const RunConfig& cfg, const std::string& columns) {
  os << "# config " << config_hash(cfg) << "\n" << columns << "\n";
}

struct RateArgs {
  std::string input_file, target_file, preset, regime = "first", direction = "forward";
  double x = 0.0, eps = 0.1, lambda = 1.0, a = 0.5, mix = 0.5, beta = 1.0;
  double lambda_sigma = -1.0;
  std::vector<double> work;
  int n = 0;
};

int cmd_rate(const RateArgs& args, const RunConfig& cfg) {
  RateQuery q;
  q.regime = parse_regime(args.regime);
  q.eps = args.eps;
  q.lambda = args.lambda;
  q.a = args.a;
  std::optional<ThermalSetting> setting;
  if (args.preset == "fig2") {
    q.input = std::make_shared<QuantumProfile>(fig2_input(args.x, cfg.tol), cfg);
    q.target = std::make_shared<QuantumProfile>(fig2_target(cfg.tol), cfg);
    // energy gap scaled so the thermal state stays diag(0.95, 0.05) at any beta
    CMatrix h = CMatrix::diag({0.0, std::log(19.0) / args.beta});
    setting.emplace(h, h, args.beta);
  } else if (args.preset == "appendixG") {
    auto mixture = std::make_shared<MixtureProfile>(args.mix, kG_rho1, kG_rho1p, kG_sigma);
    auto plain = std::make_shared<ClassicalProfile>(kG_rho2, kG_sigma);
    if (args.direction == "forward") {
      q.input = mixture;
      q.target = plain;
    } else {
      q.input = plain;
      q.target = mixture;
    }
  } else if (!args.input_file.empty() && !args.target_file.empty()) {
    q.input = std::make_shared<QuantumProfile>(load_dichotomy(args.input_file, cfg.tol), cfg);
    q.target = std::make_shared<QuantumProfile>(load_dichotomy(args.target_file, cfg.tol), cfg);
  } else {
    std::cerr << "rate: need --preset or both --input and --target\n";
    return kExitInput;
  }

  RateResult r;
  if (!args.work.empty()) {
    if (args.work.size() != 2) {
      std::cerr << "rate: --work takes w1,w2\n";
      return kExitInput;
    }
    if (!setting) {
      std::cerr << "rate: --work requires the fig2 preset (a thermal setting)\n";
      return kExitInput;
    }
    r = work_assisted_rate(q, *setting, BatterySpec{args.work[0], args.work[1]}, cfg);
  } else if (args.lambda_sigma >= 0.0) {
    r = two_sided_rate(q, args.lambda_sigma, cfg);
  } else {
    r = rate(q, cfg);
  }
  json out = rate_result_to_json(r, cfg.log_base);
  if (args.n > 0 && !r.infinite) {
    const double scale = (q.regime == Regime::ModerateLow || q.regime == Regime::ModerateHigh)
                             ? std::sqrt(std::pow(args.n, q.a - 1.0))
                             : 1.0 / std::sqrt(static_cast<double>(args.n));
    out["rate_at_n"] = r.value + r.second_order * scale;
    out["n"] = args.n;
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

struct CurveArgs {
  std::string input_file, target_file, preset, kind = "beta";
  double x = 0.5;
  double lambda_max = 2.0;
  int points = 101;
};

int cmd_curve(const CurveArgs& args, const RunConfig& cfg) {
  std::optional<Dichotomy> d;
  if (args.preset == "fig2") {
    d.emplace(fig2_input(args.x, cfg.tol));
  } else if (!args.input_file.empty()) {
    d.emplace(load_dichotomy(args.input_file, cfg.tol));
  } else {
    std::cerr << "curve: need --preset fig2 or --input\n";
    return kExitInput;
  }
  if (args.kind != "beta" && args.kind != "gamma" && args.kind != "rate") {
    std::cerr << "curve: unknown --kind (beta|gamma|rate)\n";
    return kExitInput;
  }
  if (args.kind == "beta") {
    print_csv_header(std::cout, cfg, "x,beta_lower,beta_upper,t");
    TradeoffCurve c = quantum_curve(*d, 64);
    for (int i = 0; i < args.points; ++i) {
      const double x = static_cast<double>(i) / (args.points - 1);
      Bracket b = quantum_beta(*d, x, cfg.tol.bracket);
      // the threshold of the achieved test bracketing x
      double t = 0.0;
      for (const auto& pt : c.points)
        if (pt.x <= x) t = pt.t;
      std::cout << x << "," << b.lower << "," << b.upper << "," << t << "\n";
    }
    return kExitOk;
  }
  if (args.kind == "rate") {
    // rate-vs-lambda sweep of both large-deviation regimes
    std::shared_ptr<const DichotomyProfile> input, target;
    if (args.preset == "fig2") {
      input = std::make_shared<QuantumProfile>(*d, cfg);
      target = std::make_shared<QuantumProfile>(fig2_target(cfg.tol), cfg);
    } else if (!args.target_file.empty()) {
      input = std::make_shared<QuantumProfile>(*d, cfg);
      target = std::make_shared<QuantumProfile>(load_dichotomy(args.target_file, cfg.tol), cfg);
    } else {
      std::cerr << "curve --kind rate: need --preset fig2 or --target\n";
      return kExitInput;
    }
    RateQuery q;
    q.input = input;
    q.target = target;
    print_csv_header(std::cout, cfg,
                     "lambda,large_lo_upper,large_lo_lower,large_hi");
    for (int i = 1; i <= args.points; ++i) {
      const double lam = args.lambda_max * i / args.points;
      q.lambda = lam;
      q.regime = Regime::LargeLow;
      RateResult lo = large_deviation_rate(q, cfg);
      q.regime = Regime::LargeHigh;
      RateResult hi = large_deviation_rate(q, cfg);
      std::cout << lam << "," << lo.upper_bound << "," << lo.lower_bound << "," << hi.value
                << "\n";
    }
    return kExitOk;
  }
  if (args.kind == "gamma") {
    QuantumProfile prof(*d, cfg);
    const double rev = prof.reverse_relative_entropy();
    const double top = prof.minus_log_lambda_min();
    const double lo = std::isfinite(rev) ? -2.0 * rev : -2.0;
    const double hi = std::isfinite(top) ? 2.0 * top : 4.0;
    print_csv_header(std::cout, cfg, "lambda,gamma");
    for (int i = 0; i < args.points; ++i) {
      const double lam = lo + (hi - lo) * i / (args.points - 1);
      std::cout << lam << "," << gamma_asymptotic(prof, lam, Side::None, cfg) << "\n";
    }
    return kExitOk;
  }
  return kExitOk;
}

struct ScanArgs {
  std::string preset = "fig2b", direction = "forward";
  int points = 200;
  std::vector<double> mu;
};

int cmd_scan(const ScanArgs& args, const RunConfig& cfg) {
  if (args.preset == "fig2b") {
    DensityOperator gamma = DensityOperator::from_probs({0.95, 0.05});
    std::vector<double> grid;
    for (int i = 0; i < args.points; ++i) grid.push_back(static_cast<double>(i) / (args.points - 1));
    ResonanceScan scan = coherent_resonance_scan(0.85, 0.75, gamma, grid, cfg);
    std::ostringstream roots;
    for (size_t i = 0; i < scan.roots.size(); ++i) roots << (i ? ";" : "") << scan.roots[i];
    std::cout << "# config " << config_hash(cfg) << "\n";
    std::cout << "# roots " << roots.str() << "\n";
    std::cout << "x,xi,eps_threshold\n";
    for (const auto& p : scan.table)
      std::cout << p.x << "," << p.xi << "," << p.eps_threshold << "\n";
    return kExitOk;
  }
  if (args.preset == "fig6") {
    std::vector<double> grid;
    for (int i = 0; i < args.points; ++i)
      grid.push_back(0.01 + 0.98 * i / (args.points - 1));
    MixDirection dir =
        (args.direction == "reverse") ? MixDirection::Reverse : MixDirection::Forward;
    auto pts = mixture_resonance_scan(kG_rho1, kG_rho1p, kG_rho2, kG_sigma, dir, grid, args.mu,
                                      cfg);
    // locate the weak-resonance fraction for the header
    double weak_root = -1;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
      if ((pts[i].xi - 1.0) * (pts[i + 1].xi - 1.0) < 0) {
        weak_root = 0.5 * (pts[i].lambda_mix + pts[i + 1].lambda_mix);
        break;
      }
    std::cout << "# config " << config_hash(cfg) << "\n";
    std::cout << "# weak_resonance_fraction " << weak_root << "\n";
    std::cout << "lambda,C,Z,xi,weak,strong";
    for (double m : args.mu) std::cout << ",rate_mu_" << m;
    std::cout << "\n";
    for (const auto& p : pts) {
      std::cout << p.lambda_mix << "," << p.first_order << "," << p.zero_error << "," << p.xi
                << "," << (p.weak ? 1 : 0) << "," << (p.strong ? 1 : 0);
      for (double r : p.rate_at_mu) std::cout << "," << r;
      std::cout << "\n";
    }
    return kExitOk;
  }
  std::cerr << "scan: unknown preset (fig2b|fig6)\n";
  return kExitInput;
}

int cmd_verify(const std::string& suite, const RunConfig& cfg) {
  std::vector<OracleReport> reports;
  bool breach = false;
  auto add = [&](OracleReport r, double tol) {
    if (r.abs_diff > tol) breach = true;
    reports.push_back(std::move(r));
  };
  if (suite == "sesquinormal" || suite == "all") {
    for (double nu : {0.25, 0.5, 2.0, 4.0})
      for (double mu : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
        std::ostringstream name;
        name << "sesquinormal nu=" << nu << " mu=" << mu;
        add(OracleReport(name.str(), sesquinormal_cdf(nu, mu),
                         sesquinormal_oracle(nu, mu, 20001, cfg.seed), "20001 pts"),
            1e-3);
      }
  }
  if (suite == "qubit-beta" || suite == "all") {
    Dichotomy d = fig2_input(0.5, cfg.tol);
    for (double x : {0.1, 0.5, 0.9}) {
      Bracket b = quantum_beta(d, x, 1e-7);
      std::ostringstream name;
      name << "qubit beta fig2 x=" << x;
      add(OracleReport(name.str(), b.mid(), qubit_beta_oracle(d, x, 10000), "100x100 grid"), 1e-4);
    }
  }
  if (suite == "stein" || suite == "all") {
    std::vector<int> ns;
    for (int n = 100; n <= 1000; n += 100) ns.push_back(n);
    SteinStudy s = stein_convergence_study({0.75, 0.25}, {0.5, 0.5}, 0.1, ns);
    if (s.relative_error > 0.10) breach = true;
    reports.push_back(OracleReport("stein second-order fit", s.fitted_second_order,
                                   s.predicted_second_order, "n=100..1000"));
  }
  json out = json::array();
  for (const auto& r : reports)
    out.push_back(json{{"quantity", r.quantity},
                       {"analytic", r.analytic},
                       {"oracle", r.oracle},
                       {"abs_diff", r.abs_diff},
                       {"grid", r.grid}});
  std::cout << out.dump(2) << "\n";
  return breach ? kExitTolerance : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic transformation rates between quantum dichotomies"};
  app.require_subcommand(1);
  std::string config_path;
  int threads = 1;
  app.add_option("--config", config_path, "RunConfig JSON (or env DICHOTOMY_CONFIG)");
  app.add_option("--threads", threads, "worker threads for scans (scans run deterministically)");

  RateArgs rate_args;
  auto* rate_cmd = app.add_subcommand("rate", "compute a transformation rate");
  rate_cmd->add_option("--input", rate_args.input_file, "input dichotomy JSON");
  rate_cmd->add_option("--target", rate_args.target_file, "target dichotomy JSON");
  rate_cmd->add_option("--preset", rate_args.preset, "fig2 | appendixG");
  rate_cmd->add_option("--x", rate_args.x, "fig2 coherence parameter");
  rate_cmd->add_option("--mix", rate_args.mix, "appendixG mixture fraction");
  rate_cmd->add_option("--direction", rate_args.direction, "appendixG direction (forward|reverse)");
  rate_cmd->add_option("--regime", rate_args.regime,
                       "first|small|moderate-lo|moderate-hi|large-lo|large-hi|zero|extreme");
  rate_cmd->add_option("--eps", rate_args.eps, "error for first/small");
  rate_cmd->add_option("--lambda", rate_args.lambda, "error exponent");
  rate_cmd->add_option("--lambda-sigma", rate_args.lambda_sigma,
                       "second-error exponent (two-sided classification)");
  rate_cmd->add_option("--a", rate_args.a, "moderate exponent power");
  rate_cmd->add_option("--work", rate_args.work, "battery w1,w2 (fig2 preset)")->delimiter(',');
  rate_cmd->add_option("--beta", rate_args.beta, "inverse temperature (fig2 preset)");
  rate_cmd->add_option("--n", rate_args.n, "report the rate at finite n too");

  CurveArgs curve_args;
  auto* curve_cmd = app.add_subcommand("curve", "dump a trade-off or log-odds curve as CSV");
  curve_cmd->add_option("--input", curve_args.input_file, "dichotomy JSON");
  curve_cmd->add_option("--target", curve_args.target_file, "target dichotomy (kind=rate)");
  curve_cmd->add_option("--preset", curve_args.preset, "fig2");
  curve_cmd->add_option("--x", curve_args.x, "fig2 coherence parameter");
  curve_cmd->add_option("--kind", curve_args.kind, "beta | gamma | rate");
  curve_cmd->add_option("--lambda-max", curve_args.lambda_max, "sweep end for kind=rate");
  curve_cmd->add_option("--points", curve_args.points, "sample count");

  ScanArgs scan_args;
  auto* scan_cmd = app.add_subcommand("scan", "resonance / mixture scans as CSV");
  scan_cmd->add_option("--preset", scan_args.preset, "fig2b | fig6");
  scan_cmd->add_option("--direction", scan_args.direction, "fig6 direction");
  scan_cmd->add_option("--points", scan_args.points, "grid points");
  scan_cmd->add_option("--mu", scan_args.mu, "fig6 large-deviation exponents")->delimiter(',');

  std::string verify_suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "run the brute-force oracle suite");
  verify_cmd->add_option("--suite", verify_suite, "sesquinormal | qubit-beta | stein | all");

  CLI11_PARSE(app, argc, argv);
  (void)threads;

  try {
    const RunConfig cfg = load_config(config_path);
    if (rate_cmd->parsed()) return cmd_rate(rate_args, cfg);
    if (curve_cmd->parsed()) return cmd_curve(curve_args, cfg);
    if (scan_cmd->parsed()) return cmd_scan(scan_args, cfg);
    if (verify_cmd->parsed()) return cmd_verify(verify_suite, cfg);
  } catch (const std::domain_error& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "input: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
