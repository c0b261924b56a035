#include <catch_amalgamated.hpp>
#include <Eigen/Eigenvalues>
#include <algorithm>

#include "fockgate/errors.hpp"
#include "fockgate/hamiltonians.hpp"
#include "oracles.hpp"

using namespace fockgate;
using Catch::Approx;

namespace {
RamanParams params(double g, double w, double theta, double delta, int m) {
  RamanParams p;
  p.g = g;
  p.omega_L = w;
  p.theta = theta;
  p.delta = delta;
  p.m = m;
  return p;
}
}  // namespace

TEST_CASE("derived couplings", "[hamiltonians]") {
  const auto p = params(1.0, 0.1, 0.0, 10.0, 1);
  CHECK(p.lambda() == Approx(0.01).epsilon(1e-15));
  CHECK(effective_params(p).lambda == p.lambda());
  CHECK(p.engineered_shift() == Approx((1.0 - 0.01) / 10.0));
  CHECK_FALSE(p.selectivity_diagnostic());
  auto weak = p;
  weak.omega_L = 0.5;
  REQUIRE(weak.selectivity_diagnostic());
  CHECK(weak.selectivity_diagnostic()->find("0.5") != std::string::npos);
  CHECK_THROWS_AS(params(1, 0.1, 0, 0.0, 1).validate(), InfeasibleError);
  CHECK_THROWS_AS(params(1, -0.1, 0, 10, 1).validate(), InfeasibleError);
}

TEST_CASE("full model entries", "[hamiltonians]") {
  const auto p = params(0.7, 0.2, 0.3, 15.0, 1);
  const HilbertSpace s(3, 5);
  const Matrix h = build_full_H(p, s);
  CHECK(h(s.index(Level::h, 0), s.index(Level::g, 1)) == cplx(0.7));
  CHECK(h(s.index(Level::h, 2), s.index(Level::g, 3)).real() == Approx(0.7 * std::sqrt(3.0)).epsilon(1e-14));
  CHECK(h(s.index(Level::h, 1), s.index(Level::e, 1)) == 0.2 * std::polar(1.0, 0.3));
  CHECK(h(s.index(Level::e, 0), s.index(Level::e, 0)).real() == Approx(p.engineered_shift()));
  CHECK(h(s.index(Level::h, 3), s.index(Level::h, 3)) == cplx(-15.0));
  CHECK(hermiticity_defect(h) < 1e-12);

  CHECK_THROWS_AS(build_full_H(p, HilbertSpace(2, 5)), DimensionError);
  CHECK_THROWS_AS(build_full_H(params(1, 0.1, 0, 10, 4), HilbertSpace(3, 5)), DimensionError);

  auto off = p;
  off.g = 0.0;
  off.omega_L = 0.0;
  off.include_shift = false;
  const Matrix bare = build_full_H(off, s);
  CHECK(max_abs_diff(bare, tensor(s, atomic_sigma(Level::h, Level::h, 3), Matrix::identity(5)) *
                               cplx(-15.0)) == 0.0);
}

TEST_CASE("full model only couples g<->h and h<->e", "[hamiltonians][property]") {
  const auto p = params(1.0, 0.1, 1.2, 20.0, 2);
  const HilbertSpace s(3, 6);
  const Matrix h = build_full_H(p, s);
  for (int a = 0; a < 3; ++a)
    for (int n = 0; n < 6; ++n)
      for (int b = 0; b < 3; ++b)
        for (int n2 = 0; n2 < 6; ++n2) {
          const cplx v = h(s.index(a, n), s.index(b, n2));
          if (a == b && n == n2) continue;
          const bool gh = (a == 0 && b == 2 && n2 == n - 1) || (a == 2 && b == 0 && n2 == n + 1);
          const bool he = (a == 2 && b == 1 && n == n2) || (a == 1 && b == 2 && n == n2);
          if (!gh && !he) CHECK(v == cplx(0.0));
          else CHECK(v != cplx(0.0));
        }
}

TEST_CASE("closed three-level block against a direct 3x3 eigensolve", "[hamiltonians][oracle]") {
  const auto p = params(1.0, 0.1, 0.4, 20.0, 1);
  const HilbertSpace s(3, 4);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> full(oracle::to_eigen(build_full_H(p, s)));

  // {|g,1>, |h,0>, |e,0>} written down by hand.
  Eigen::Matrix3cd b;
  const cplx w = p.omega_L * std::polar(1.0, p.theta);
  b << 0.0, p.g, 0.0,
       p.g, -p.delta, w,
       0.0, std::conj(w), p.engineered_shift();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> small(b);
  for (int i = 0; i < 3; ++i) {
    const double ev = small.eigenvalues()(i);
    double best = 1e9;
    for (Eigen::Index j = 0; j < full.eigenvalues().size(); ++j)
      best = std::min(best, std::abs(full.eigenvalues()(j) - ev));
    CHECK(best < 1e-12);
  }
}

TEST_CASE("adiabatic elimination reproduces the dispersive shift", "[hamiltonians][property]") {
  // Dressed |g,n> in the full model sits at g^2 n/delta up to O(g^4/delta^3).
  for (double delta : {20.0, 40.0}) {
    auto p = params(1.0, 0.0, 0.0, delta, 1);
    p.include_shift = false;
    const HilbertSpace s(3, 6);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(oracle::to_eigen(build_full_H(p, s)));
    for (int n = 1; n <= 4; ++n) {
      const double eff = p.g * p.g * n / delta;
      double best = 1e9;
      for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j)
        best = std::min(best, std::abs(es.eigenvalues()(j) - eff));
      CHECK(best / eff < 5.0 * p.g / delta);
    }
  }
}

TEST_CASE("effective model entries", "[hamiltonians]") {
  const auto p = params(1.0, 0.1, 0.9, 20.0, 2);
  const HilbertSpace s(2, 6);
  const Matrix h = build_effective_H(p, s);
  const double lam = p.lambda();
  CHECK(std::abs(h(s.index(Level::e, 1), s.index(Level::g, 2)) - lam * std::sqrt(2.0) * std::polar(1.0, -0.9)) < 1e-15);
  CHECK(std::abs(h(s.index(Level::g, 2), s.index(Level::e, 1)) - lam * std::sqrt(2.0) * std::polar(1.0, 0.9)) < 1e-15);
  for (int n = 0; n < 6; ++n) {
    CHECK(h(s.index(Level::g, n), s.index(Level::g, n)).real() == Approx(n / 20.0));
    CHECK(h(s.index(Level::e, n), s.index(Level::e, n)).real() == Approx(2.0 / 20.0));
  }
  CHECK(hermiticity_defect(h) < 1e-12);
  CHECK_THROWS_AS(build_effective_H(p, HilbertSpace(3, 6)), DimensionError);
  CHECK_THROWS_AS(build_effective_H(p, HilbertSpace(2, 3)), DimensionError);

  auto bare = p;
  bare.include_shift = false;
  CHECK(build_effective_H(bare, s)(s.index(Level::e, 0), s.index(Level::e, 0)).real() ==
        Approx(0.01 / 20.0));
}

TEST_CASE("decomposition sums back to the effective Hamiltonian", "[hamiltonians]") {
  for (int m = 1; m <= 6; ++m) {
    const auto p = params(1.0, 0.1, 0.25 * m, 20.0, m);
    const HilbertSpace s(2, m + 4);
    const auto d = decompose_effective(p, s);
    CHECK(max_abs_diff(d.total(), build_effective_H(p, s)) < 1e-12);

    int nonzero = 0;
    for (const cplx& v : d.selective.data())
      if (v != cplx{}) {
        ++nonzero;
        CHECK(std::abs(v) == Approx(p.lambda() * std::sqrt(m)).epsilon(1e-14));
      }
    CHECK(nonzero == 2);

    // Diagonal phases live outside the pair; the off-resonant doublets do not.
    for (int a = 0; a < 2; ++a)
      for (int n : {m - 1, m})
        CHECK(apply(d.dispersive_diagonal, StateVector::basis(s, a, n)).norm() == 0.0);
    const auto down = StateVector::basis(s, Level::g, m - 1);
    CHECK(apply(d.off_resonant, down).norm() == Approx(p.lambda() * std::sqrt(m - 1.0)).margin(1e-15));

    const double c = p.dispersive_shift();
    CHECK(d.self_energy(s.index(Level::g, m - 1), s.index(Level::g, m - 1)).real() == Approx(c * (m - 1)));
    CHECK(d.self_energy(s.index(Level::e, m - 1), s.index(Level::e, m - 1)).real() == Approx(c * m));
    CHECK(d.self_energy(s.index(Level::g, m + 1), s.index(Level::g, m + 1)) == cplx(0.0));
  }
  CHECK_THROWS_AS(decompose_effective(params(1, 0.1, 0, 20, 0), HilbertSpace(2, 4)), InfeasibleError);
}

TEST_CASE("effective detuning and selectivity", "[hamiltonians]") {
  const auto p = params(1.0, 0.1, 0.0, 10.0, 3);
  CHECK(effective_detuning(3, p) == 0.0);
  CHECK(effective_detuning(4, p) == Approx(0.1));
  CHECK(effective_detuning(2, p) == Approx(-0.1));
  // |Delta(m +- 1)| / lambda = g / |Omega_L|
  CHECK(std::abs(effective_detuning(4, p)) / p.lambda() == Approx(p.g / p.omega_L));
  CHECK(std::isinf(selectivity_margin(0, p)));
  CHECK(selectivity_margin(4, p) == Approx(10.0 / 2.0));
}

TEST_CASE("multi-quantum coupling", "[hamiltonians]") {
  const HilbertSpace s(2, 6);
  const Matrix h1 = build_multiquantum_H(1, 0.02, 0.5, 3, s);
  CHECK(std::abs(h1(s.index(Level::g, 3), s.index(Level::e, 2))) == Approx(0.02 * std::sqrt(3.0)));

  const Matrix h2 = build_multiquantum_H(2, 0.03, 0.5, 2, s);
  CHECK(hermiticity_defect(h2) < 1e-12);
  // a^dagger^2 |0> = sqrt(2)|2>, computed through the ladder operators.
  const auto osc = HilbertSpace::oscillator(6);
  const auto raised = apply(creation_op(6) * creation_op(6), StateVector::basis(osc, 0, 0));
  CHECK(std::abs(std::abs(h2(s.index(Level::g, 2), s.index(Level::e, 0))) -
                 0.03 * std::abs(raised.amplitude(0, 2))) < 1e-15);
  CHECK(multiquantum_factor(2, 2) == Approx(std::sqrt(2.0)));
  CHECK(multiquantum_factor(5, 3) == Approx(std::sqrt(60.0)));
  // |g,1> has nothing two quanta below it.
  CHECK(apply(h2, StateVector::basis(s, Level::g, 1)).norm() == 0.0);
  CHECK_THROWS_AS(build_multiquantum_H(2, 0.03, 0.0, 1, s), InfeasibleError);
  CHECK_THROWS_AS(build_multiquantum_H(0, 0.03, 0.0, 1, s), InfeasibleError);
}

TEST_CASE("every builder is Hermitian", "[hamiltonians][property]") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 1 + trial % 5;
    const auto p = params(0.5 + u(rng), 0.3 * u(rng), 6.28 * u(rng), (u(rng) < 0.5 ? -1 : 1) * (5 + 30 * u(rng)), m);
    CHECK(hermiticity_defect(build_full_H(p, HilbertSpace(3, m + 3))) < 1e-12);
    CHECK(hermiticity_defect(build_effective_H(p, HilbertSpace(2, m + 3))) < 1e-12);
    const SelectiveCoupling sc{m, 1, p.lambda(), p.theta, p.dispersive_shift()};
    CHECK(hermiticity_defect(build_selective_H(sc, HilbertSpace(2, m + 2))) < 1e-12);
  }
}
