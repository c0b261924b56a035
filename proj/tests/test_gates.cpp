#include <catch_amalgamated.hpp>
#include <numbers>
#include <random>

#include "fockgate/errors.hpp"
#include "fockgate/gates.hpp"
#include "fockgate/propagator.hpp"
#include "oracles.hpp"

using namespace fockgate;
using Catch::Approx;
using std::numbers::pi;

namespace {

StateVector pair_input(const HilbertSpace& s, AtomInput atom, int lo, int hi, cplx a, cplx b) {
  CVector osc(s.fock_cutoff());
  osc[lo] = a;
  osc[hi] = b;
  return StateVector::product(s, atom_amplitudes(atom, s.atom_dim()), osc);
}

std::pair<cplx, cplx> random_qubit(std::mt19937_64& rng) {
  cplx a = oracle::random_complex(rng), b = oracle::random_complex(rng);
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return {a / n, b / n};
}

// The three-step product written with Pade exponentials of H_0m + H_c.
Matrix oracle_gate(const GateParams& gp, const HilbertSpace& s) {
  const SelectiveCoupling first{gp.m, gp.k, gp.lambda, gp.phase_offset, gp.dispersive_shift};
  SelectiveCoupling echo = first;
  echo.theta = gp.phase_offset - gp.k * gp.theta0;
  const Matrix x = tensor(s, atomic_flip(2), Matrix::identity(s.fock_cutoff()));
  return oracle::expm(build_selective_H(echo, s), gp.tau) * x *
         oracle::expm(build_selective_H(first, s), gp.tau);
}

}  // namespace

TEST_CASE("gate parameters", "[gates]") {
  RamanParams p;
  const auto gp = gate_for_phi(3, 0.7, p);
  CHECK(gp.phi == 0.7);
  CHECK(gp.lambda * gp.tau * std::sqrt(3.0) == Approx(0.7).epsilon(1e-14));
  CHECK(gp.theta0 == Approx(p.dispersive_shift() * gp.tau).epsilon(1e-15));
  CHECK(gp.eta == Approx(3.0 * gp.theta0).epsilon(1e-15));
  CHECK(gp.lower() == 2);
  CHECK(gp.echo_phase() == Approx(-gp.theta0));

  // Doubling the laser amplitude halves the pulse length.
  auto p2 = p;
  p2.omega_L *= 2.0;
  CHECK(gate_for_phi(3, 0.7, p2).tau == Approx(gp.tau / 2.0).epsilon(1e-14));

  CHECK_THROWS_AS(gate_for_phi(0, 0.7, p), InfeasibleError);
  CHECK_THROWS_AS(gate_for_phi(1, 0.7, p, 2), InfeasibleError);
  CHECK_THROWS_AS(gate_for_phi(1, -0.1, p), InfeasibleError);
  auto dark = p;
  dark.omega_L = 0.0;
  CHECK_THROWS_AS(gate_for_phi(1, 0.5, dark), InfeasibleError);
  auto broken = gp;
  broken.theta0 += 0.1;
  CHECK_THROWS_AS(broken.validate(), InfeasibleError);
  CHECK(parse_model("full") == Model::full);
  CHECK_THROWS_AS(parse_model("exact"), Error);
}

TEST_CASE("closed-form rotation special cases", "[gates]") {
  RamanParams p;
  auto gp = gate_for_tau(2, 0.0, p);
  const cplx a(0.6, 0.0), b(0.0, 0.8);
  auto id = closed_form_rotation(a, b, gp);
  CHECK(std::abs(id.lower - a) < 1e-15);
  CHECK(std::abs(id.upper - b) < 1e-15);

  // phi = 0 leaves only the lower level's phase, k theta0 ahead of the upper.
  GateParams phase_only = gp;
  phase_only.theta0 = 0.3;
  phase_only.eta = 0.0;
  auto ph = closed_form_rotation(a, b, phase_only);
  CHECK(std::abs(ph.lower - a * std::polar(1.0, 0.3)) < 1e-15);
  CHECK(std::abs(ph.upper - b) < 1e-15);

  // phi = pi/2 (taken with the sign the |-> atom sees) swaps with a factor i.
  GateParams swap = gp;
  swap.phi = pi / 2;
  auto sw = closed_form_rotation(a, b, swap, AtomInput::minus);
  CHECK(std::abs(sw.lower - kI * b) < 1e-15);
  CHECK(std::abs(sw.upper - kI * a) < 1e-15);

  CHECK_THROWS_AS(closed_form_rotation(1.0, 1.0, gp), InfeasibleError);
}

TEST_CASE("closed-form rotation is unitary", "[gates][property]") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
  for (int trial = 0; trial < 100; ++trial) {
    QubitRotation r{1 + trial % 5, 1, u(rng), u(rng), u(rng), u(rng),
                    trial % 2 ? AtomInput::minus : AtomInput::plus};
    const auto m = r.matrix();
    const cplx d00 = std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2];
    const cplx d01 = std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3];
    const cplx d11 = std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3];
    CHECK(std::abs(d00 - 1.0) < 1e-12);
    CHECK(std::abs(d01) < 1e-12);
    CHECK(std::abs(d11 - 1.0) < 1e-12);
  }
}

TEST_CASE("ug_gate equals the Pade product of the three steps", "[gates][oracle]") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
  RamanParams p;
  for (int m = 1; m <= 5; ++m) {
    auto gp = gate_for_phi(m, u(rng), p);
    gp.phase_offset = u(rng);
    const HilbertSpace s(2, m + 2);
    CHECK(max_abs_diff(ug_gate(gp, p, s, Model::ideal), oracle_gate(gp, s)) < 1e-9);
  }
}

TEST_CASE("ideal gate reproduces the closed form", "[gates][oracle]") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
  RamanParams p;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 5;
    auto gp = gate_for_phi(m, u(rng), p);
    gp.phase_offset = trial % 3 == 0 ? u(rng) : 0.0;
    const AtomInput atom = trial % 2 ? AtomInput::minus : AtomInput::plus;
    const auto [a, b] = random_qubit(rng);
    const HilbertSpace s(2, m + 2);
    const auto out = apply(oracle_gate(gp, s), pair_input(s, atom, m - 1, m, a, b));
    const auto expected = closed_form_rotation(a, b, gp, atom).embed(m + 2);
    const Matrix rho = reduced_oscillator_state(out);
    REQUIRE(fidelity(rho, expected) > 1.0 - 1e-9);
    CHECK(purity(rho) > 1.0 - 1e-9);
    CHECK(leakage(out, m) < 1e-14);

    // Exact amplitudes, not just up to a global phase: the atom comes back
    // as +-|a>, and the oscillator carries the closed form verbatim.
    const CVector at = atom_amplitudes(atom, 2);
    cplx lo{}, hi{};
    for (int x = 0; x < 2; ++x) {
      lo += std::conj(at[x]) * out.amplitude(x, m - 1);
      hi += std::conj(at[x]) * out.amplitude(x, m);
    }
    CHECK(std::abs(std::abs(lo) - std::abs(expected.amplitudes()[m - 1])) < 1e-10);
    CHECK(std::abs(std::abs(hi) - std::abs(expected.amplitudes()[m])) < 1e-10);
  }
}

TEST_CASE("|+> and |-> see opposite rotation angles", "[gates]") {
  RamanParams p;
  const auto gp = gate_for_phi(2, 0.9, p);
  const auto rp = qubit_rotation(gp, AtomInput::plus).matrix();
  const auto rm = qubit_rotation(gp, AtomInput::minus).matrix();
  // Same diagonal, opposite off-diagonal: phi -> -phi.
  CHECK(std::abs(rp[0] - rm[0]) < 1e-15);
  CHECK(std::abs(rp[3] - rm[3]) < 1e-15);
  CHECK(std::abs(rp[1] + rm[1]) < 1e-15);
  CHECK(std::abs(rp[2] + rm[2]) < 1e-15);

  const HilbertSpace s(2, 5);
  const Matrix u = ug_gate(gp, p, s, Model::ideal);
  const Matrix kp = induced_oscillator_map(u, s, AtomInput::plus);
  const Matrix km = induced_oscillator_map(u, s, AtomInput::minus);
  CHECK(unitarity_defect(kp) < 1e-12);
  CHECK(unitarity_defect(km) < 1e-12);
  // |-> also comes back with a sign, which flips the diagonal instead.
  CHECK(std::abs(kp(1, 2) - km(1, 2)) < 1e-12);
  CHECK(std::abs(kp(1, 1) + km(1, 1)) < 1e-12);
  CHECK(std::abs(kp(1, 2)) == Approx(std::sin(0.9)).epsilon(1e-12));
}

TEST_CASE("atom in |g> gets entangled", "[gates]") {
  RamanParams p;
  const auto gp = gate_for_phi(1, pi / 4, p);
  const HilbertSpace s(2, 4);
  // The branches carry |1> (atom e) and |0> (atom g): purity cos^4 + sin^4.
  CVector osc(4);
  osc[1] = 1.0;
  const auto out = apply_gate(gp, p, StateVector::product(s, CVector{1.0, 0.0}, osc), Model::ideal);
  CHECK(purity(reduced_oscillator_state(out)) == Approx(0.5).epsilon(1e-12));

  // Equal weights on |0>, |1> hit a blind spot: both branches coincide.
  osc[0] = osc[1] = M_SQRT1_2;
  const auto blind = apply_gate(gp, p, StateVector::product(s, CVector{1.0, 0.0}, osc), Model::ideal);
  CHECK(purity(reduced_oscillator_state(blind)) > 1.0 - 1e-12);
}

TEST_CASE("zero duration is a bare spin flip", "[gates]") {
  RamanParams p;
  const auto gp = gate_for_tau(2, 0.0, p);
  for (Model model : {Model::ideal, Model::effective, Model::full}) {
    const HilbertSpace s(atom_dim_for(model), 5);
    CHECK(max_abs_diff(ug_gate(gp, p, s, model),
                       tensor(s, atomic_flip(s.atom_dim()), Matrix::identity(5))) < 1e-14);
  }
}

TEST_CASE("gates are unitary in every model", "[gates][property]") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
  RamanParams p;
  for (int trial = 0; trial < 6; ++trial) {
    const int m = 1 + trial % 3;
    auto gp = gate_for_phi(m, u(rng), p);
    gp.phase_offset = u(rng);
    for (Model model : {Model::ideal, Model::effective, Model::full})
      CHECK(unitarity_defect(ug_gate(gp, p, HilbertSpace(atom_dim_for(model), m + 4), model)) < 1e-10);
  }
}

TEST_CASE("gate preconditions", "[gates]") {
  RamanParams p;
  const auto gp = gate_for_phi(3, 0.5, p);
  CHECK_THROWS_AS(ug_gate(gp, p, HilbertSpace(2, 4), Model::ideal), DimensionError);
  CHECK_THROWS_AS(ug_gate(gp, p, HilbertSpace(3, 6), Model::ideal), DimensionError);
  CHECK_THROWS_AS(ug_gate(gp, p, HilbertSpace(2, 6), Model::full), DimensionError);
  auto other = p;
  other.delta = 40.0;
  CHECK_THROWS_AS(ug_gate(gp, other, HilbertSpace(2, 6), Model::effective), InfeasibleError);
  const auto gp2 = gate_for_phi(2, 0.5, p, 2, 0.01);
  CHECK_THROWS_AS(ug_gate(gp2, p, HilbertSpace(2, 5), Model::effective), InfeasibleError);
}

TEST_CASE("regrouping identities", "[gates]") {
  RamanParams p;
  for (int m = 1; m <= 4; ++m) {
    auto gp = gate_for_phi(m, 0.3 + 0.4 * m, p);
    gp.phase_offset = 0.2 * m;
    const HilbertSpace s(2, m + 3);
    const auto f = conjugated_factors(gp, p, s);
    CHECK(max_abs(commutator(f.h0m, f.hc)) < 1e-12);
    CHECK(max_abs(commutator(f.hc, f.hxc)) < 1e-12);
    CHECK(max_abs_diff(f.sigma_x * unitary_of(f.h0, gp.tau) * f.sigma_x,
                       unitary_of(f.hx0, gp.tau)) < 1e-10);
    CHECK(max_abs_diff(f.hx0, conjugated_generator_explicit(gp, s)) < 1e-12);
    CHECK(max_abs_diff(echo_generator(gp, s, gp.echo_phase()),
                       echo_generator_projector_form(gp, s, gp.echo_phase())) < 1e-10);
    CHECK(max_abs_diff(self_energy_sum(gp, s), self_energy_sum_closed_form(gp, s)) < 1e-12);
    CHECK(max_abs_diff(regrouped_gate(gp, s), ug_gate(gp, p, s, Model::ideal)) < 1e-10);
  }
}

TEST_CASE("the lower level lags by theta0 in the self-energy sum", "[gates]") {
  RamanParams p;
  const auto gp = gate_for_phi(2, 0.5, p);
  const HilbertSpace s(2, 4);
  const Matrix sum = self_energy_sum(gp, s);
  const double lower = sum(s.index(Level::g, 1), s.index(Level::g, 1)).real();
  const double upper = sum(s.index(Level::g, 2), s.index(Level::g, 2)).real();
  CHECK(lower - upper == Approx(-gp.theta0).epsilon(1e-12));
  CHECK(upper == Approx(2.0 * gp.eta).epsilon(1e-12));
}

TEST_CASE("echo with the opposite phase sign entangles", "[gates]") {
  RamanParams p;
  auto gp = gate_for_phi(1, 0.8, p);
  const HilbertSpace s(2, 4);
  const SelectiveCoupling first{1, 1, gp.lambda, 0.0, gp.dispersive_shift};
  SelectiveCoupling echo = first;
  echo.theta = +gp.theta0;
  const Matrix x = tensor(s, atomic_flip(2), Matrix::identity(4));
  const Matrix wrong = unitary_of(build_selective_H(echo, s), gp.tau) * x *
                       unitary_of(build_selective_H(first, s), gp.tau);
  const auto out = apply(wrong, pair_input(s, AtomInput::plus, 0, 1, M_SQRT1_2, M_SQRT1_2));
  CHECK(purity(reduced_oscillator_state(out)) < 1.0 - 1e-6);
}

TEST_CASE("effective model leaks less as selectivity improves", "[gates]") {
  double previous = 1.0;
  for (double r : {0.5, 0.2, 0.1, 0.05, 0.02}) {
    RamanParams p;
    p.omega_L = r * p.g;
    const auto gp = gate_for_phi(1, pi / 4, p);
    const HilbertSpace s(2, 10);
    const double leak = leakage(apply_gate(gp, p, pair_input(s, AtomInput::plus, 0, 1, 0.0, 1.0),
                                           Model::effective), 1);
    CHECK(leak < previous);
    previous = leak;
  }
}

TEST_CASE("full model keeps |h> nearly empty", "[gates]") {
  RamanParams p;
  const auto gp = gate_for_phi(1, pi / 4, p);
  const HilbertSpace s(3, 6);
  const auto in = pair_input(s, AtomInput::plus, 0, 1, 0.0, 1.0);
  const double hmax = max_transient_h_population(gp, p, in, 100);
  CHECK(hmax < 0.01);
  CHECK(hmax > 0.0);
  const double scale = std::pow(p.g / p.delta, 2);
  CHECK(hmax < 10.0 * scale);
}

TEST_CASE("two-quantum gate under the ideal model", "[gates]") {
  RamanParams p;
  const auto gp = gate_for_phi(3, 1.1, p, 2, 0.004);
  CHECK(gp.lower() == 1);
  CHECK(gp.lambda * gp.tau * std::sqrt(6.0) == Approx(1.1).epsilon(1e-14));
  const HilbertSpace s(2, 5);
  const cplx a(0.6, 0.0), b(0.0, 0.8);
  const auto out = apply_gate(gp, p, pair_input(s, AtomInput::plus, 1, 3, a, b), Model::ideal);
  const auto expected = closed_form_rotation(a, b, gp).embed(5);
  CHECK(fidelity(reduced_oscillator_state(out), expected) > 1.0 - 1e-9);
  CHECK(leakage(out, 3, 2) < 1e-14);
}
