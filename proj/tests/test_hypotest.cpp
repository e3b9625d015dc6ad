#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <random>

#include "dich/classical.hpp"
#include "dich/gaussian.hpp"
#include "dich/hypotest.hpp"
#include "dich/oracle.hpp"

using namespace dich;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

CMatrix fig2_rho1(double x) {
  CMatrix m(2, 2);
  const double off = x * std::sqrt(0.85 * 0.15);
  m(0, 0) = 0.85;
  m(1, 1) = 0.15;
  m(0, 1) = off;
  m(1, 0) = off;
  return m;
}

Dichotomy fig2(double x) {
  return Dichotomy(DensityOperator(fig2_rho1(x)), DensityOperator::from_probs({0.95, 0.05}));
}

Dichotomy classical_pair(const std::vector<double>& p, const std::vector<double>& q) {
  return Dichotomy(DensityOperator::from_probs(p), DensityOperator::from_probs(q));
}

std::vector<double> random_probs(int d, std::mt19937_64& rng, double floor = 0.02) {
  std::uniform_real_distribution<double> u(floor, 1.0);
  std::vector<double> p(d);
  double s = 0;
  for (double& x : p) s += (x = u(rng));
  for (double& x : p) x /= s;
  return p;
}

}  // namespace

TEST_CASE("classical beta basics") {
  std::vector<double> u{0.5, 0.5};
  CHECK(classical_beta(u, u, 0.3) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(classical_beta({1.0, 0.0}, u, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  // two-outcome NP with randomized boundary inclusion
  CHECK(classical_beta({0.75, 0.25}, u, 0.1) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(classical_beta({0.75, 0.25}, u, 1.0) == doctest::Approx(0.0));
  CHECK_THROWS(classical_beta(u, u, 1.5));
}

TEST_CASE("classical beta is convex and decreasing in x") {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 5; ++rep) {
    auto p = random_probs(4, rng);
    auto q = random_probs(4, rng);
    for (double x : {0.1, 0.3, 0.5, 0.7}) {
      const double b0 = classical_beta(p, q, x);
      const double b1 = classical_beta(p, q, x + 0.1);
      const double bm = classical_beta(p, q, x + 0.05);
      CHECK(b1 <= b0 + 1e-12);
      CHECK(bm <= 0.5 * (b0 + b1) + 1e-12);  // convexity at the midpoint
    }
  }
}

TEST_CASE("classical beta respects data processing under stochastic maps") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 5; ++rep) {
    auto p = random_probs(3, rng);
    auto q = random_probs(3, rng);
    // random column-stochastic matrix
    double t[3][3];
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int i = 0; i < 3; ++i) s += (t[i][j] = u(rng) + 0.05);
      for (int i = 0; i < 3; ++i) t[i][j] /= s;
    }
    std::vector<double> tp(3, 0.0), tq(3, 0.0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        tp[i] += t[i][j] * p[j];
        tq[i] += t[i][j] * q[j];
      }
    for (double x : {0.2, 0.5, 0.8})
      CHECK(classical_beta(tp, tq, x) >= classical_beta(p, q, x) - 1e-12);
  }
}

TEST_CASE("quantum beta collapses onto the classical value for commuting pairs") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 5; ++rep) {
    const int d = 2 + rep % 3;
    auto p = random_probs(d, rng);
    auto q = random_probs(d, rng);
    CMatrix h(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) h(i, j) = cplx(g(rng), g(rng));
    EigenDecomposition e = eigh(h.hermitized());
    DensityOperator rho(e.vectors * CMatrix::diag(p) * e.vectors.adjoint());
    DensityOperator sig(e.vectors * CMatrix::diag(q) * e.vectors.adjoint());
    Dichotomy dd(rho, sig);
    for (double x : {0.05, 0.3, 0.6, 0.95}) {
      Bracket b = quantum_beta(dd, x, 1e-10);
      const double cl = classical_beta(p, q, x);
      CHECK(b.width() <= 1e-10);
      CHECK(std::abs(b.mid() - cl) <= 1e-10);
    }
  }
}

TEST_CASE("quantum beta endpoints and certified bracket on the coherent pair") {
  Dichotomy d = fig2(0.5);
  Bracket at1 = quantum_beta(d, 1.0);
  CHECK(at1.lower == 0.0);
  CHECK(at1.upper == 0.0);
  Bracket at0 = quantum_beta(d, 0.0);
  CHECK(at0.upper == doctest::Approx(1.0).epsilon(1e-12));  // full-rank rho
  for (double x : {0.2, 0.5, 0.8}) {
    Bracket b = quantum_beta(d, x, 1e-7);
    CHECK(b.converged);
    CHECK(b.width() <= 1e-7);
    CHECK(b.lower <= b.upper);
    // oracle value (achievable) must sit at or above the certified lower edge
    const double oracle = qubit_beta_oracle(d, x, 10000);
    CHECK(oracle >= b.lower - 1e-9);
    CHECK(oracle <= b.upper + 1e-6);  // achievable, locally refined
  }
}

TEST_CASE("pinched beta: exact, above the unpinched bracket, and Fig. 2 closed case") {
  Dichotomy c = classical_pair({0.7, 0.3}, {0.4, 0.6});
  Bracket pb = pinched_beta(c, 0.3, Side::Left);
  CHECK(pb.width() == 0.0);
  CHECK(pb.mid() == doctest::Approx(classical_beta({0.7, 0.3}, {0.4, 0.6}, 0.3)).epsilon(1e-12));

  Dichotomy d = fig2(0.5);
  Bracket q = quantum_beta(d, 0.3, 1e-9);
  for (Side s : {Side::Left, Side::Right}) {
    Bracket p = pinched_beta(d, 0.3, s);
    CHECK(p.mid() >= q.lower - 1e-9);  // pinching cannot help distinguish
  }
  // fully coherent member: left pinch kills the off-diagonals exactly
  Dichotomy pure = fig2(1.0);
  Bracket lp = pinched_beta(pure, 0.5, Side::Left);
  CHECK(lp.mid() ==
        doctest::Approx(classical_beta({0.85, 0.15}, {0.95, 0.05}, 0.5)).epsilon(1e-11));
}

TEST_CASE("gamma log odds") {
  Dichotomy same = classical_pair({0.5, 0.5}, {0.5, 0.5});
  for (double x : {-2.0, 0.0, 1.5}) {
    Bracket g = gamma_logodds(same, x, Side::None);
    CHECK(g.mid() == doctest::Approx(-x).epsilon(1e-9));  // beta = 1 - x under logit
  }
  Dichotomy c = classical_pair({0.75, 0.25}, {0.5, 0.5});
  Bracket g0 = gamma_logodds(c, 0.0, Side::None);
  CHECK(g0.mid() == doctest::Approx(logit(classical_beta({0.75, 0.25}, {0.5, 0.5}, 0.5)))
                        .epsilon(1e-9));
}

TEST_CASE("extreme single-shot closed forms") {
  Dichotomy c = classical_pair({0.75, 0.25}, {0.5, 0.5});
  // beta_{1-x} = x exp(-D_inf) with D_inf = log 1.5
  CHECK(extreme_singleshot_beta(c, 0.1, Side::None, ExtremeBranch::HighTypeI) ==
        doctest::Approx(0.1 / 1.5).epsilon(1e-12));
  CHECK(extreme_singleshot_beta(c, 0.0, Side::None, ExtremeBranch::HighTypeI) ==
        doctest::Approx(0.0));
  // 1 - beta_x = x exp(-D_{-inf}), D_{-inf} = log 0.5
  CHECK(extreme_singleshot_beta(c, 0.1, Side::None, ExtremeBranch::LowTypeI) ==
        doctest::Approx(1.0 - 0.1 * 2.0).epsilon(1e-12));
  CHECK_THROWS(extreme_singleshot_beta(c, 0.5, Side::None, ExtremeBranch::HighTypeI));

  // cross-check against the certified sweep on the coherent pair
  Dichotomy d = fig2(0.5);
  const double x = 0.5 * d.rho.lambda_min();
  const double closed = extreme_singleshot_beta(d, x, Side::None, ExtremeBranch::HighTypeI);
  Bracket b = quantum_beta(d, 1.0 - x, 1e-9);
  CHECK(closed >= b.lower - 1e-9);
  CHECK(closed <= b.upper + 1e-9);
  const double closed_low = extreme_singleshot_beta(d, x, Side::None, ExtremeBranch::LowTypeI);
  Bracket bl = quantum_beta(d, x, 1e-9);
  CHECK(closed_low >= bl.lower - 1e-9);
  CHECK(closed_low <= bl.upper + 1e-9);
}

TEST_CASE("gamma asymptotic: edge cases and extreme linearity") {
  Dichotomy c = classical_pair({0.75, 0.25}, {0.5, 0.5});
  QuantumProfile prof(c);
  const double d_fwd = relative_entropy(c);
  const double d_rev = relative_entropy(c.swapped());
  CHECK(gamma_asymptotic(prof, 0.0, Side::None) == doctest::Approx(-d_fwd).epsilon(1e-10));
  CHECK(gamma_asymptotic(prof, -d_rev, Side::None) == doctest::Approx(0.0).epsilon(1e-10));
  // just off the edge the curve follows the square-root law
  // Gamma_lambda ~ -D - sqrt(2 V lambda) (the moderate-deviation shape)
  const double v_fwd = relative_entropy_variance(c);
  const double lam_small = 1e-5;
  CHECK(gamma_asymptotic(prof, lam_small, Side::None) ==
        doctest::Approx(-d_fwd - std::sqrt(2.0 * v_fwd * lam_small)).epsilon(1e-4));
  // extreme-deviation linear law beyond -log lambda_min
  const double lam = 2.0 * (-std::log(0.25)) + 1.0;
  CHECK(gamma_asymptotic(prof, lam, Side::None) ==
        doctest::Approx(-lam - std::log(1.5)).epsilon(1e-12));
  CHECK(gamma_asymptotic(prof, -lam, Side::None) ==
        doctest::Approx(lam - std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("gamma asymptotic: quasi-inverse duality of the strong-converse branches") {
  Dichotomy c = classical_pair({0.7, 0.3}, {0.45, 0.55});
  QuantumProfile fwd(c);
  QuantumProfile rev(c.swapped());
  // valid while the forward value stays inside the backward formula range
  // (beyond the extreme thresholds the affine single-shot law takes over
  // and the two curves stop mirroring each other)
  for (double lam : {0.05, 0.15, 0.3}) {
    const double g = gamma_asymptotic(fwd, lam, Side::None);
    CHECK(g < -relative_entropy(c) + 1e-9);
    REQUIRE(std::abs(g) < -std::log(0.45));  // inside the swapped formula range
    const double back = gamma_asymptotic(rev, g, Side::None);
    CHECK(back == doctest::Approx(lam).epsilon(2e-3));
  }
}

TEST_CASE("gamma asymptotic: monotone non-increasing in lambda") {
  Dichotomy d = fig2(0.4);
  QuantumProfile prof(d);
  double prev = kInf;
  for (double lam = -3.0; lam <= 3.0; lam += 0.25) {
    const double g = gamma_asymptotic(prof, lam, Side::None);
    CHECK(g <= prev + 1e-6);
    prev = g;
  }
}

TEST_CASE("battery factorization of the trade-off") {
  std::mt19937_64 rng(33);
  std::normal_distribution<double> gauss;
  for (int rep = 0; rep < 4; ++rep) {
    auto p = random_probs(2, rng);
    auto q = random_probs(2, rng);
    CMatrix h(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) h(i, j) = cplx(gauss(rng), gauss(rng));
    EigenDecomposition e = eigh(h.hermitized());
    DensityOperator rho(e.vectors * CMatrix::diag(p) * e.vectors.adjoint());
    DensityOperator gam(e.vectors * CMatrix::diag(q) * e.vectors.adjoint());
    const double w = -2.0 + 4.0 * (rep / 3.0);
    const double beta = 0.7 + rep;
    const double lamw = 1.0 / (1.0 + std::exp(-beta * w));
    DensityOperator gw = DensityOperator::from_probs({lamw, 1.0 - lamw});
    DensityOperator p0 = DensityOperator::from_probs({1.0, 0.0});
    Dichotomy joint(DensityOperator(CMatrix::kron(rho.matrix(), p0.matrix())),
                    DensityOperator(CMatrix::kron(gam.matrix(), gw.matrix())));
    Dichotomy plain(rho, gam);
    for (double x : {0.2, 0.6}) {
      Bracket bj = quantum_beta(joint, x, 1e-11);
      Bracket bp = quantum_beta(plain, x, 1e-11);
      CHECK(bj.mid() == doctest::Approx(lamw * bp.mid()).epsilon(1e-10));
    }
  }
  // non-commuting smoke check at bracket tolerance
  Dichotomy d = fig2(0.5);
  const double lamw = 1.0 / (1.0 + std::exp(-0.8));
  DensityOperator gw = DensityOperator::from_probs({lamw, 1.0 - lamw});
  DensityOperator p0 = DensityOperator::from_probs({1.0, 0.0});
  Dichotomy joint(DensityOperator(CMatrix::kron(d.rho.matrix(), p0.matrix())),
                  DensityOperator(CMatrix::kron(d.sigma.matrix(), gw.matrix())));
  Bracket bj = quantum_beta(joint, 0.35, 1e-8);
  Bracket bp = quantum_beta(d, 0.35, 1e-8);
  CHECK(std::abs(bj.mid() - lamw * bp.mid()) < 5e-8);
}

TEST_CASE("finite-n gamma: identities and Stein trend") {
  const std::vector<double> p{0.75, 0.25}, q{0.5, 0.5}, u{0.5, 0.5};
  // n = 1 reduces to the classical log odds
  const double g1 = finite_n_gamma(p, q, 1, 0.0);
  CHECK(g1 == doctest::Approx(logit(classical_beta(p, q, 0.5))).epsilon(1e-12));
  // p = q: gamma = -x at every n
  // exact identity up to log-domain cancellation noise in the suffix sums
  for (int n : {1, 7, 40})
    CHECK(finite_n_gamma(u, u, n, 0.35) == doctest::Approx(-0.35).epsilon(1e-8));
  // residual against -D shrinks with n
  const double d = classical_relative_entropy(p, q);
  double prev = kInf;
  for (int n : {50, 100, 200, 400}) {
    const double g = finite_n_gamma(p, q, n, 0.0);
    const double resid = std::abs(g + d);
    CHECK(resid < prev);
    prev = resid;
  }
}

TEST_CASE("trade-off curve invariants") {
  TradeoffCurve c = classical_curve({0.75, 0.25}, {0.5, 0.5});
  CHECK(c.exact);
  CHECK(c.upper(0.0) == doctest::Approx(1.0));
  CHECK(c.upper(1.0) == doctest::Approx(0.0));
  // convex, non-increasing
  double prev = 1.1;
  for (double x = 0.0; x <= 1.0; x += 0.05) {
    const double b = c.upper(x);
    CHECK(b <= prev + 1e-12);
    prev = b;
  }
  Dichotomy d = fig2(0.5);
  TradeoffCurve qc = quantum_curve(d, 64);
  for (double x : {0.1, 0.4, 0.8}) CHECK(qc.lower(x) <= qc.upper(x) + 1e-12);
}
