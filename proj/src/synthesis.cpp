#include "fockgate/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fockgate/errors.hpp"
#include "fockgate/propagator.hpp"

namespace fockgate {
namespace {

double wrap(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a <= -std::numbers::pi ? a + 2.0 * std::numbers::pi : a;
}

int top_level(std::span<const cplx> amps) {
  for (int n = static_cast<int>(amps.size()) - 1; n >= 0; --n)
    if (amps[n] != cplx{}) return n;
  return -1;
}

Matrix partial_trace_atom(const Matrix& joint, const HilbertSpace& s) {
  const int nc = s.fock_cutoff();
  Matrix rho(nc, nc);
  for (int a = 0; a < s.atom_dim(); ++a)
    for (int n = 0; n < nc; ++n)
      for (int n2 = 0; n2 < nc; ++n2) rho(n, n2) += joint(s.index(a, n), s.index(a, n2));
  return rho;
}

double h_population(const Matrix& joint, const HilbertSpace& s) {
  double pop = 0.0;
  for (int n = 0; n < s.fock_cutoff(); ++n) {
    const std::size_t i = s.index(Level::h, n);
    pop += joint(i, i).real();
  }
  return pop;
}

Matrix conjugate(const Matrix& u, const Matrix& rho) { return u * rho * u.adjoint(); }

// Largest |h> population along both pulses of one full-model gate.
double transient_h(const GateParams& gp, const RamanParams& p, const HilbertSpace& s,
                   const Matrix& rho0, int samples) {
  RamanParams q = p;
  q.m = gp.m;
  q.include_shift = true;
  q.theta = gp.first_pulse_phase();
  const Propagator first(build_full_H(q, s));
  q.theta = gp.echo_phase();
  const Propagator second(build_full_H(q, s));
  const Matrix flip = tensor(s, atomic_flip(3), Matrix::identity(s.fock_cutoff()));

  double worst = 0.0;
  for (int i = 0; i <= samples; ++i)
    worst = std::max(worst, h_population(conjugate(first.unitary(gp.tau * i / samples), rho0), s));
  const Matrix mid = conjugate(flip * first.unitary(gp.tau), rho0);
  for (int i = 0; i <= samples; ++i)
    worst = std::max(worst, h_population(conjugate(second.unitary(gp.tau * i / samples), mid), s));
  return worst;
}

}  // namespace

std::string_view phase_model_name(PhaseModel pm) noexcept {
  switch (pm) {
    case PhaseModel::ideal: return "ideal";
    case PhaseModel::dispersive: return "dispersive";
    case PhaseModel::effective: return "effective";
  }
  return "?";
}

PhaseModel parse_phase_model(std::string_view name) {
  if (name == "ideal") return PhaseModel::ideal;
  if (name == "dispersive") return PhaseModel::dispersive;
  if (name == "effective") return PhaseModel::effective;
  throw Error("unknown phase model '" + std::string(name) +
              "' (expected ideal, dispersive or effective)");
}

std::string_view schedule_name(Schedule s) noexcept {
  return s == Schedule::sequential ? "sequential" : "parallel-groups";
}

Schedule parse_schedule(std::string_view name) {
  if (name == "sequential") return Schedule::sequential;
  if (name == "parallel-groups" || name == "parallel") return Schedule::parallel_groups;
  throw Error("unknown schedule '" + std::string(name) + "'");
}

std::vector<double> CircuitPlan::phase_corrections() const {
  std::vector<double> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.phase_offset);
  return out;
}

Matrix phase_model_map(const GateParams& step, const RamanParams& p, int cutoff, PhaseModel pm) {
  if (step.m >= cutoff) throw DimensionError("phase_model_map: pair exceeds cutoff");
  GateParams gp = step;
  gp.phase_offset = 0.0;
  if (pm == PhaseModel::effective) {
    const HilbertSpace s(2, cutoff);
    return induced_oscillator_map(ug_gate(gp, p, s, Model::effective), s, AtomInput::plus);
  }
  Matrix k = Matrix::identity(cutoff);
  if (pm == PhaseModel::dispersive) {
    for (int n = 0; n < cutoff; ++n) k(n, n) = std::polar(1.0, -(n + gp.m) * gp.theta0);
  }
  const auto r = qubit_rotation(gp).matrix();
  const int lo = gp.lower();
  k(lo, lo) = r[0];
  k(lo, gp.m) = r[1];
  k(gp.m, lo) = r[2];
  k(gp.m, gp.m) = r[3];
  return k;
}

std::vector<std::vector<std::size_t>> group_parallel(const std::vector<GateParams>& steps) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<int> used;  // Fock levels touched by the open group
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const int lo = steps[i].lower(), hi = steps[i].m;
    const bool clash = std::any_of(used.begin(), used.end(), [&](int n) { return n == lo || n == hi; });
    if (groups.empty() || clash) {
      groups.emplace_back();
      used.clear();
    }
    groups.back().push_back(i);
    used.push_back(lo);
    used.push_back(hi);
  }
  return groups;
}

CircuitPlan plan_general_state(const StateVector& target, const RamanParams& p, PhaseModel pm) {
  p.validate();
  if (target.space().atom_dim() != 1) {
    throw DimensionError("plan_general_state: target must be an oscillator-only state");
  }
  if (std::abs(target.norm() - 1.0) > 1e-9) {
    throw InfeasibleError("plan_general_state: target norm " + std::to_string(target.norm()) +
                          " differs from 1");
  }
  const auto t = target.amplitudes();
  const int cutoff = target.space().fock_cutoff();
  const int top = top_level(t);
  if (top + 2 > cutoff) {
    throw InfeasibleError("plan_general_state: target occupies level " + std::to_string(top) +
                          " but cutoff " + std::to_string(cutoff) +
                          " keeps only levels up to cutoff-2 below the guard");
  }

  CircuitPlan plan;
  plan.target = target;
  plan.phase_model = pm;
  plan.params = p;

  std::vector<double> tail(top + 2, 0.0);
  for (int l = top; l >= 0; --l) tail[l] = std::hypot(tail[l + 1], std::abs(t[l]));
  for (int j = 1; j <= top; ++j) {
    const double c = tail[j - 1] > 0.0 ? std::clamp(std::abs(t[j - 1]) / tail[j - 1], 0.0, 1.0) : 1.0;
    plan.steps.push_back(gate_for_phi(j, std::acos(c), p));
  }

  // A laser phase offset theta on a gate conjugates its map by
  // diag(e^{i theta n}); every amplitude a gate creates above its lower level
  // inherits the offset. Solve for the cumulative phase of each level; the
  // linear maps need one pass, the effective map a few.
  std::vector<Matrix> maps;
  for (const auto& gp : plan.steps) maps.push_back(phase_model_map(gp, p, cutoff, pm));
  int ref = 0;
  while (ref <= top && t[ref] == cplx{}) ++ref;
  std::vector<double> cumulative(top + 1, 0.0);
  for (int iter = 0; iter < 50 && !plan.steps.empty(); ++iter) {
    CVector psi(cutoff);
    psi[0] = 1.0;
    for (std::size_t j = 0; j < maps.size(); ++j) {
      const double th = plan.steps[j].phase_offset;
      for (int n = 0; n < cutoff; ++n) psi[n] *= std::polar(1.0, -th * n);
      psi = maps[j] * psi;
      for (int n = 0; n < cutoff; ++n) psi[n] *= std::polar(1.0, th * n);
    }
    const double global = std::arg(t[ref]) - std::arg(psi[ref]);
    double worst = 0.0;
    for (int l = 1; l <= top; ++l) {
      if (l > ref && t[l] != cplx{} && psi[l] != cplx{}) {
        const double err = wrap(std::arg(t[l]) - std::arg(psi[l]) - global);
        worst = std::max(worst, std::abs(err));
        cumulative[l] += err;
      } else {
        cumulative[l] = cumulative[l - 1];
      }
    }
    if (worst < 1e-14) break;
    for (int j = 1; j <= top; ++j) plan.steps[j - 1].phase_offset = wrap(cumulative[j] - cumulative[j - 1]);
  }

  plan.groups = group_parallel(plan.steps);
  return plan;
}

CircuitPlan plan_superposition(cplx alpha, cplx beta, int n, const RamanParams& p, int cutoff,
                               PhaseModel pm) {
  const double nrm = std::norm(alpha) + std::norm(beta);
  if (std::abs(nrm - 1.0) > 1e-9) {
    throw InfeasibleError("plan_superposition: |alpha|^2 + |beta|^2 = " + std::to_string(nrm));
  }
  if (n < 0) throw InfeasibleError("plan_superposition: n must be >= 0");
  if (n == 0 && beta != cplx{}) {
    throw InfeasibleError("plan_superposition: n = 0 leaves no second level for beta");
  }
  if (beta != cplx{} && n + 2 > cutoff) {
    throw InfeasibleError("plan_superposition: level " + std::to_string(n) +
                          " needs cutoff >= " + std::to_string(n + 2));
  }
  CVector amps(cutoff);
  amps[0] = alpha;
  if (n > 0) amps[n] = beta;
  return plan_general_state(StateVector(HilbertSpace::oscillator(cutoff), std::move(amps)), p, pm);
}

ExecutionReport execute_plan(const CircuitPlan& plan, const StateVector& initial, Model model,
                             const RamanParams& p, const ExecutionOptions& opts) {
  if (initial.space().atom_dim() != 1) {
    throw DimensionError("execute_plan: initial state must be oscillator-only");
  }
  const int cutoff = initial.space().fock_cutoff();
  if (plan.target.space() != initial.space()) {
    throw DimensionError("execute_plan: target cutoff " +
                         std::to_string(plan.target.space().fock_cutoff()) +
                         " differs from initial cutoff " + std::to_string(cutoff));
  }
  for (const auto& gp : plan.steps) {
    if (gp.m + 2 > cutoff) {
      throw DimensionError("execute_plan: gate on {" + std::to_string(gp.lower()) + "," +
                           std::to_string(gp.m) + "} needs cutoff >= " + std::to_string(gp.m + 2));
    }
  }

  const HilbertSpace s(atom_dim_for(model), cutoff);
  const CVector plus = atom_amplitudes(AtomInput::plus, s.atom_dim());
  const Matrix atom = outer(plus, plus);

  ExecutionReport rep;
  const auto psi = initial.amplitudes();
  rep.rho = outer(psi, psi);
  if (model == Model::full && opts.h_samples > 0) rep.max_h_population = 0.0;

  for (const auto& gp : plan.steps) {
    const Matrix rho0 = kron(atom, rep.rho);
    rep.rho = partial_trace_atom(conjugate(ug_gate(gp, p, s, model), rho0), s);
    rep.step_purities.push_back(purity(rep.rho));
    if (rep.max_h_population) {
      rep.max_h_population =
          std::max(*rep.max_h_population, transient_h(gp, p, s, rho0, opts.h_samples));
    }
  }

  rep.fidelity = fidelity(rep.rho, plan.target);
  const int top = std::max(top_level(plan.target.amplitudes()), 0);
  for (int n = top + 1; n < cutoff; ++n) rep.leakage += rep.rho(n, n).real();
  rep.guard_population = rep.rho(cutoff - 1, cutoff - 1).real();
  return rep;
}

double commutation_check(const GateParams& ga, const GateParams& gb, const RamanParams& p,
                         const HilbertSpace& s) {
  if (s.atom_dim() != 2) throw DimensionError("commutation_check: needs atom_dim 2");
  const Matrix ra = induced_oscillator_map(ug_gate(ga, p, s, Model::ideal), s, AtomInput::plus);
  const Matrix rb = induced_oscillator_map(ug_gate(gb, p, s, Model::ideal), s, AtomInput::plus);
  return max_abs(commutator(ra, rb));
}

}  // namespace fockgate
