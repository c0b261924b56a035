#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>

#include "fockgate/cli/commands.hpp"
#include "fockgate/cli/csv.hpp"
#include "fockgate/kernels.hpp"
#include "fockgate/propagator.hpp"
#include "fockgate/synthesis.hpp"

namespace fockgate::cli {
namespace {

struct Suite {
  std::vector<Check> checks;
  void upper(std::string name, double measured, double bound) {
    checks.push_back({std::move(name), measured, bound, false});
  }
  void lower(std::string name, double measured, double bound) {
    checks.push_back({std::move(name), measured, bound, true});
  }
};

cplx random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng)};
}

std::pair<cplx, cplx> random_qubit(std::mt19937_64& rng) {
  cplx a = random_complex(rng), b = random_complex(rng);
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return {a / n, b / n};
}

StateVector pair_input(const HilbertSpace& s, AtomInput atom, int lo, int hi, cplx a, cplx b) {
  CVector osc(s.fock_cutoff());
  osc[lo] = a;
  osc[hi] = b;
  return StateVector::product(s, atom_amplitudes(atom, s.atom_dim()), osc);
}

void algebra_checks(Suite& suite, const RamanParams& base, int nc) {
  const Matrix n_op = number_op(nc);
  const Matrix ada = creation_op(nc) * annihilation_op(nc);
  double ladder = 0.0, ccr = 0.0;
  const Matrix comm = commutator(annihilation_op(nc), creation_op(nc));
  for (int i = 0; i < nc - 1; ++i)
    for (int j = 0; j < nc - 1; ++j) {
      ladder = std::max(ladder, std::abs(ada(i, j) - n_op(i, j)));
      ccr = std::max(ccr, std::abs(comm(i, j) - (i == j ? 1.0 : 0.0)));
    }
  suite.upper("ladder.number_operator", ladder, 0.0);
  suite.upper("ladder.canonical_commutator", ccr, 0.0);

  double herm = 0.0, decomposition = 0.0, support = 0.0;
  for (int m = 1; m <= 6; ++m) {
    RamanParams p = base;
    p.m = m;
    const HilbertSpace s2(2, std::max(nc, m + 2)), s3(3, std::max(nc, m + 2));
    const Matrix heff = build_effective_H(p, s2);
    herm = std::max({herm, hermiticity_defect(heff), hermiticity_defect(build_full_H(p, s3))});
    const auto d = decompose_effective(p, s2);
    decomposition = std::max(decomposition, max_abs_diff(d.total(), heff));
    for (int a = 0; a < 2; ++a)
      for (int n : {m - 1, m}) {
        const auto v = StateVector::basis(s2, a, n);
        support = std::max(support, apply(d.dispersive_diagonal, v).norm());
      }
  }
  suite.upper("hamiltonians.hermitian", herm, 0.0);
  suite.upper("decomposition.sum_matches_effective", decomposition, 0.0);
  suite.upper("decomposition.diagonal_outside_pair", support, 0.0);
}

}  // namespace

std::vector<Check> validation_suite(const RunConfig& cfg) {
  Suite suite;
  const Tolerances& tol = cfg.tolerances;
  const int nc = std::max(cfg.fock_cutoff, 8);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  algebra_checks(suite, cfg.physics, nc);
  // Exact identities get the algebraic tolerance.
  for (auto& c : suite.checks) c.bound = tol.algebraic;

  // Operators behind the regrouping, m = 2.
  {
    RamanParams p = cfg.physics;
    p.m = 2;
    const HilbertSpace s(2, nc);
    const GateParams gp = gate_for_phi(2, 0.7, p);
    const auto f = conjugated_factors(gp, p, s);
    suite.upper("commutator.h0m_hc", max_abs(commutator(f.h0m, f.hc)), tol.algebraic);
    suite.upper("commutator.hc_hxc", max_abs(commutator(f.hc, f.hxc)), tol.algebraic);
    suite.upper("conjugation.flipped_propagator",
                max_abs_diff(f.sigma_x * unitary_of(f.h0, gp.tau) * f.sigma_x,
                             unitary_of(f.hx0, gp.tau)),
                tol.unitarity);
    suite.upper("conjugation.explicit_generator",
                max_abs_diff(f.hx0, conjugated_generator_explicit(gp, s)), tol.algebraic);
    suite.upper("echo.projector_form",
                max_abs_diff(echo_generator(gp, s, gp.echo_phase()),
                             echo_generator_projector_form(gp, s, gp.echo_phase())),
                tol.unitarity);
    suite.upper("echo.self_energy_sum",
                max_abs_diff(self_energy_sum(gp, s), self_energy_sum_closed_form(gp, s)),
                tol.unitarity);
    suite.upper("echo.regrouped_gate",
                max_abs_diff(regrouped_gate(gp, s), ug_gate(gp, p, s, Model::ideal)),
                tol.unitarity);
  }

  // Closed form against brute-force propagation, plus disentanglement.
  {
    double worst_fid = 1.0, worst_purity = 1.0, worst_leak = 0.0;
    for (int i = 0; i < cfg.validate.samples; ++i) {
      const int m = 1 + static_cast<int>(rng() % 5);
      RamanParams p = cfg.physics;
      p.m = m;
      GateParams gp = gate_for_phi(m, 2.0 * std::numbers::pi * uni(rng), p);
      const AtomInput atom = (i % 2) ? AtomInput::minus : AtomInput::plus;
      const auto [a, b] = random_qubit(rng);
      const HilbertSpace s(2, std::max(nc, m + 2));
      const StateVector out = apply_gate(gp, p, pair_input(s, atom, m - 1, m, a, b), Model::ideal);
      const Matrix rho = reduced_oscillator_state(out);
      if (cfg.validate.corrupt_theta0) gp.theta0 += cfg.validate.corruption;
      const StateVector expected = closed_form_rotation(a, b, gp, atom).embed(s.fock_cutoff());
      worst_fid = std::min(worst_fid, fidelity(rho, expected));
      worst_purity = std::min(worst_purity, purity(rho));
      worst_leak = std::max(worst_leak, leakage(out, m));
    }
    suite.lower("gate.closed_form_fidelity", worst_fid, 1.0 - tol.fidelity);
    suite.lower("gate.disentangled_purity", worst_purity, 1.0 - tol.fidelity);
    suite.upper("gate.ideal_leakage", worst_leak, tol.algebraic);

    RamanParams p = cfg.physics;
    const HilbertSpace s(2, nc);
    const GateParams gp = gate_for_phi(1, std::numbers::pi / 4, p);
    CVector osc(nc);
    osc[1] = 1.0;  // (|0> + |1>)/sqrt2 would leave both atomic branches equal
    const CVector ground{1.0, 0.0};
    const auto out = apply_gate(gp, p, StateVector::product(s, ground, osc), Model::ideal);
    suite.upper("gate.ground_input_entangles", purity(reduced_oscillator_state(out)), 0.99);
  }

  // Unitarity and propagation.
  {
    RamanParams p = cfg.physics;
    const GateParams gp = gate_for_phi(1, 1.1, p);
    double defect = 0.0;
    for (Model model : {Model::ideal, Model::effective, Model::full})
      defect = std::max(defect, unitarity_defect(ug_gate(gp, p, HilbertSpace(atom_dim_for(model), nc), model)));
    suite.upper("gate.unitarity", defect, tol.unitarity);

    const Propagator prop(build_full_H(p, HilbertSpace(3, nc)));
    suite.upper("propagator.reconstruction", prop.reconstruction_defect(), tol.unitarity);
    suite.upper("propagator.composition",
                max_abs_diff(prop.unitary(3.5), prop.unitary(1.25) * prop.unitary(2.25)),
                tol.unitarity * 10.0);
  }

  // Kernel variants agree.
  {
    const std::size_t n = 37;
    std::vector<cplx> a(n * n), b(n * n), c1(n * n), c2(n * n);
    for (auto& x : a) x = random_complex(rng);
    for (auto& x : b) x = random_complex(rng);
    double diff = 0.0;
    const auto restore = kernels::active_isa();
    if (kernels::detected_isa() == kernels::Isa::avx2) {
      kernels::force_isa(kernels::Isa::scalar);
      kernels::gemm(n, n, n, a, b, c1);
      kernels::force_isa(kernels::Isa::avx2);
      kernels::gemm(n, n, n, a, b, c2);
      kernels::force_isa(restore);
      double scale = 0.0;
      for (std::size_t i = 0; i < c1.size(); ++i) {
        diff = std::max(diff, std::abs(c1[i] - c2[i]));
        scale = std::max(scale, std::abs(c1[i]));
      }
      diff /= scale;
    }
    suite.upper("kernels.vector_matches_scalar", diff, tol.algebraic);
  }

  // Synthesis round trip and parallelizability.
  {
    const RamanParams p = cfg.physics;
    double worst = 1.0;
    for (int i = 0; i < 20; ++i) {
      const int top = 1 + static_cast<int>(rng() % 6);
      CVector amps(nc);
      for (int l = 0; l <= top; ++l) amps[l] = random_complex(rng);
      const StateVector target = StateVector(HilbertSpace::oscillator(nc), amps).normalized();
      const auto plan = plan_general_state(target, p);
      const auto rep = execute_plan(plan, StateVector::basis(HilbertSpace::oscillator(nc), 0, 0),
                                    Model::ideal, p);
      worst = std::min(worst, rep.fidelity);
    }
    suite.lower("synthesis.round_trip_fidelity", worst, 1.0 - tol.fidelity);

    const HilbertSpace s(2, nc);
    const double phi = std::numbers::pi / 3;
    suite.upper("parallel.disjoint_commute",
                commutation_check(gate_for_phi(1, phi, p), gate_for_phi(3, phi, p), p, s),
                tol.fidelity);
    suite.lower("parallel.overlapping_do_not_commute",
                commutation_check(gate_for_phi(2, phi, p), gate_for_phi(3, phi, p), p, s), 1e-3);
  }

  // Two-quantum coupling.
  {
    const HilbertSpace s(2, nc);
    const double lambda2 = 0.01;
    const Matrix h = build_multiquantum_H(2, lambda2, 0.4, 2, s);
    suite.upper("multiquantum.coupling_modulus",
                std::abs(std::abs(h(s.index(Level::g, 2), s.index(Level::e, 0))) - lambda2 * std::sqrt(2.0)),
                tol.algebraic);
    suite.upper("multiquantum.hermitian", hermiticity_defect(h), tol.algebraic);
  }
  return suite.checks;
}

int cmd_validate(const RunConfig& cfg, std::ostream& log) {
  const auto checks = validation_suite(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  const auto path = std::filesystem::path(cfg.out_dir) / "validate.csv";
  std::ofstream file(path);
  if (!file) throw ConfigError("output.dir: cannot write '" + path.string() + "'");
  CsvWriter csv(file, {"check", "measured", "relation", "bound", "passed"});
  std::size_t failed = 0;
  for (const auto& c : checks) {
    const char* rel = c.lower_bound ? ">=" : "<=";
    csv.row({c.name, c.measured, std::string(rel), c.bound, std::string(c.passed() ? "true" : "false")});
    log << (c.passed() ? "PASS " : "FAIL ") << c.name << ": " << format_double(c.measured) << ' '
        << rel << ' ' << format_double(c.bound) << '\n';
    failed += !c.passed();
  }
  log << checks.size() - failed << "/" << checks.size() << " checks passed\n";
  return failed ? kValidationFailed : kOk;
}

}  // namespace fockgate::cli
