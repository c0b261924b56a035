#include "fockgate/gates.hpp"

#include <cmath>
#include <string>

#include "fockgate/errors.hpp"
#include "fockgate/propagator.hpp"

namespace fockgate {
namespace {

cplx phase(double angle) { return std::polar(1.0, angle); }

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

SelectiveCoupling coupling_for(const GateParams& gp, double theta) {
  return {gp.m, gp.k, gp.lambda, theta, gp.dispersive_shift};
}

void require_space(const GateParams& gp, const HilbertSpace& s, Model model) {
  if (s.atom_dim() != atom_dim_for(model)) {
    throw DimensionError(std::string("ug_gate: model '") + std::string(model_name(model)) +
                         "' needs atom_dim=" + std::to_string(atom_dim_for(model)) + ", got " +
                         std::to_string(s.atom_dim()));
  }
  if (s.fock_cutoff() < gp.m + 2) {
    throw DimensionError("ug_gate: fock_cutoff " + std::to_string(s.fock_cutoff()) +
                         " leaves no guard level above m=" + std::to_string(gp.m) +
                         " (needs >= " + std::to_string(gp.m + 2) + ")");
  }
}

RamanParams pulse_params(const GateParams& gp, const RamanParams& p, double theta) {
  if (gp.k != 1) throw InfeasibleError("effective and full models only support k = 1");
  if (!close(gp.lambda, p.lambda()) || !close(gp.dispersive_shift, p.dispersive_shift())) {
    throw InfeasibleError("ug_gate: gate parameters were derived from different couplings");
  }
  RamanParams q = p;
  q.m = gp.m;
  q.theta = theta;
  q.include_shift = true;
  return q;
}

Matrix pulse_hamiltonian(const GateParams& gp, const RamanParams& p, const HilbertSpace& s,
                         Model model, double theta) {
  switch (model) {
    case Model::ideal: return build_selective_H(coupling_for(gp, theta), s);
    case Model::effective: return build_effective_H(pulse_params(gp, p, theta), s);
    case Model::full: return build_full_H(pulse_params(gp, p, theta), s);
  }
  throw Error("unknown model");
}

// |a><b| restricted to the atom, tensored with |n><n'|.
Matrix joint_projector(const HilbertSpace& s, int a, int n, int b, int n2) {
  Matrix m = Matrix::zero(s.dim());
  m(s.index(a, n), s.index(b, n2)) = 1.0;
  return m;
}

}  // namespace

std::string_view model_name(Model model) noexcept {
  switch (model) {
    case Model::ideal: return "ideal";
    case Model::effective: return "effective";
    case Model::full: return "full";
  }
  return "?";
}

Model parse_model(std::string_view name) {
  if (name == "ideal") return Model::ideal;
  if (name == "effective") return Model::effective;
  if (name == "full") return Model::full;
  throw Error("unknown model '" + std::string(name) + "' (expected ideal, effective or full)");
}

int atom_dim_for(Model model) noexcept { return model == Model::full ? 3 : 2; }

std::string_view atom_input_name(AtomInput a) noexcept {
  return a == AtomInput::plus ? "plus" : "minus";
}

AtomInput parse_atom_input(std::string_view name) {
  if (name == "plus" || name == "+") return AtomInput::plus;
  if (name == "minus" || name == "-") return AtomInput::minus;
  throw Error("unknown atomic input '" + std::string(name) + "' (expected plus or minus)");
}

CVector atom_amplitudes(AtomInput a, int atom_dim) {
  if (atom_dim < 2) throw DimensionError("atom_amplitudes: atom_dim must be >= 2");
  CVector v(atom_dim);
  v[0] = M_SQRT1_2;
  v[1] = atom_sign(a) * M_SQRT1_2;
  return v;
}

void GateParams::validate() const {
  if (m < 1) throw InfeasibleError("GateParams: m must be >= 1");
  if (k < 1) throw InfeasibleError("GateParams: k must be >= 1");
  if (m - k < 0) {
    throw InfeasibleError("GateParams: pair {" + std::to_string(m - k) + "," + std::to_string(m) +
                          "} lies below the vacuum");
  }
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw InfeasibleError("GateParams: tau must be finite and >= 0");
  if (!close(phi, lambda * tau * multiquantum_factor(m, k)) ||
      !close(theta0, dispersive_shift * tau) || !close(eta, dispersive_shift * m * tau)) {
    throw InfeasibleError("GateParams: phi, theta0 or eta inconsistent with tau");
  }
}

GateParams gate_for_tau(int m, double tau, const RamanParams& p, int k,
                        std::optional<double> lambda_k) {
  p.validate();
  GateParams gp;
  gp.m = m;
  gp.k = k;
  if (m < 1 || k < 1 || m - k < 0) {
    throw InfeasibleError("gate: pair {" + std::to_string(m - k) + "," + std::to_string(m) +
                          "} is infeasible (need m >= k >= 1)");
  }
  gp.lambda = lambda_k.value_or(p.lambda());
  gp.dispersive_shift = p.dispersive_shift();
  gp.tau = tau;
  gp.phi = gp.lambda * tau * multiquantum_factor(m, k);
  gp.theta0 = gp.dispersive_shift * tau;
  gp.eta = gp.dispersive_shift * m * tau;
  gp.validate();
  return gp;
}

GateParams gate_for_phi(int m, double phi, const RamanParams& p, int k,
                        std::optional<double> lambda_k) {
  if (!(phi >= 0.0) || !std::isfinite(phi)) throw InfeasibleError("gate: phi must be finite and >= 0");
  if (m < 1 || k < 1 || m - k < 0) {
    throw InfeasibleError("gate: pair {" + std::to_string(m - k) + "," + std::to_string(m) +
                          "} is infeasible (need m >= k >= 1)");
  }
  const double lam = lambda_k.value_or(p.lambda());
  const double rate = lam * multiquantum_factor(m, k);
  if (rate <= 0.0) throw InfeasibleError("gate: coupling lambda must be positive to reach phi");
  GateParams gp = gate_for_tau(m, phi / rate, p, k, lambda_k);
  gp.phi = phi;  // exact, avoids a round trip through tau
  return gp;
}

std::array<cplx, 4> QubitRotation::matrix() const {
  GateParams gp;
  gp.m = m;
  gp.k = k;
  gp.phi = phi;
  gp.theta0 = -theta / k;
  gp.eta = -global_phase / 2.0;
  gp.phase_offset = phase_offset;
  const QubitState c0 = closed_form_rotation(1.0, 0.0, gp, atom);
  const QubitState c1 = closed_form_rotation(0.0, 1.0, gp, atom);
  return {c0.lower, c1.lower, c0.upper, c1.upper};
}

std::pair<cplx, cplx> QubitRotation::apply(cplx alpha, cplx beta) const {
  const auto r = matrix();
  return {r[0] * alpha + r[1] * beta, r[2] * alpha + r[3] * beta};
}

QubitRotation qubit_rotation(const GateParams& gp, AtomInput atom) {
  return {gp.m, gp.k, gp.phi, -gp.k * gp.theta0, -2.0 * gp.eta, gp.phase_offset, atom};
}

StateVector QubitState::embed(int cutoff) const {
  StateVector s(HilbertSpace::oscillator(cutoff));
  s.amplitudes()[HilbertSpace::oscillator(cutoff).index(0, lower_level)] = lower;
  s.amplitudes()[HilbertSpace::oscillator(cutoff).index(0, upper_level)] = upper;
  return s;
}

QubitState closed_form_rotation(cplx alpha, cplx beta, const GateParams& gp, AtomInput atom) {
  const double nrm = std::norm(alpha) + std::norm(beta);
  if (std::abs(nrm - 1.0) > 1e-9) {
    throw InfeasibleError("closed_form_rotation: |alpha|^2 + |beta|^2 = " + std::to_string(nrm) +
                          ", expected 1");
  }
  const double p = -atom_sign(atom) * gp.phi;
  const double t = -gp.k * gp.theta0;
  const cplx b = beta * phase(-gp.phase_offset);
  const cplx global = phase(-2.0 * gp.eta);
  const cplx lower = (alpha * std::cos(p) + kI * b * std::sin(p)) * phase(-t);
  const cplx upper = (b * std::cos(p) + kI * alpha * std::sin(p)) * phase(gp.phase_offset);
  return {gp.m - gp.k, gp.m, global * lower, global * upper};
}

Matrix ug_gate(const GateParams& gp, const RamanParams& p, const HilbertSpace& s, Model model) {
  gp.validate();
  require_space(gp, s, model);
  const Matrix first = pulse_hamiltonian(gp, p, s, model, gp.first_pulse_phase());
  const Matrix second = pulse_hamiltonian(gp, p, s, model, gp.echo_phase());
  const Matrix flip = tensor(s, atomic_flip(s.atom_dim()), Matrix::identity(s.fock_cutoff()));
  return unitary_of(second, gp.tau) * flip * unitary_of(first, gp.tau);
}

StateVector apply_gate(const GateParams& gp, const RamanParams& p, const StateVector& psi,
                       Model model) {
  return apply(ug_gate(gp, p, psi.space(), model), psi);
}

double max_transient_h_population(const GateParams& gp, const RamanParams& p,
                                  const StateVector& psi, int samples) {
  const HilbertSpace& s = psi.space();
  require_space(gp, s, Model::full);
  if (samples < 1) throw InfeasibleError("max_transient_h_population: samples must be >= 1");
  const Propagator first(pulse_hamiltonian(gp, p, s, Model::full, gp.first_pulse_phase()));
  const Propagator second(pulse_hamiltonian(gp, p, s, Model::full, gp.echo_phase()));
  const Matrix flip = tensor(s, atomic_flip(3), Matrix::identity(s.fock_cutoff()));

  double worst = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = gp.tau * i / samples;
    worst = std::max(worst, atomic_population(first.evolve(psi, t), Level::h));
  }
  const StateVector mid = apply(flip, first.evolve(psi, gp.tau));
  for (int i = 0; i <= samples; ++i) {
    const double t = gp.tau * i / samples;
    worst = std::max(worst, atomic_population(second.evolve(mid, t), Level::h));
  }
  return worst;
}

Matrix induced_oscillator_map(const Matrix& joint_unitary, const HilbertSpace& s, AtomInput a) {
  if (joint_unitary.rows() != s.dim() || !joint_unitary.square()) {
    throw DimensionError("induced_oscillator_map: unitary does not match the space");
  }
  const CVector amps = atom_amplitudes(a, s.atom_dim());
  const int nc = s.fock_cutoff();
  Matrix k(nc, nc);
  for (int x = 0; x < s.atom_dim(); ++x)
    for (int y = 0; y < s.atom_dim(); ++y) {
      const cplx w = std::conj(amps[x]) * amps[y];
      if (w == cplx{}) continue;
      for (int n = 0; n < nc; ++n)
        for (int n2 = 0; n2 < nc; ++n2) k(n, n2) += w * joint_unitary(s.index(x, n), s.index(y, n2));
    }
  return k;
}

double leakage(const StateVector& psi, int m, int k) {
  const auto pops = fock_populations(psi);
  double inside = 0.0;
  for (int n : {m - k, m})
    if (n >= 0 && n < static_cast<int>(pops.size())) inside += pops[n];
  double total = 0.0;
  for (double p : pops) total += p;
  return std::max(0.0, total - inside);
}

ConjugatedFactors conjugated_factors(const GateParams& gp, const RamanParams& p,
                                     const HilbertSpace& s) {
  (void)p;
  gp.validate();
  require_space(gp, s, Model::ideal);
  const SelectiveCoupling sc = coupling_for(gp, 0.0);
  ConjugatedFactors f;
  f.sigma_x = tensor(s, atomic_flip(2), Matrix::identity(s.fock_cutoff()));
  f.h0m = build_self_energy_H(sc, s);
  f.hc = build_coupling_H(sc, s);
  f.h0 = f.h0m + f.hc;
  f.hx0 = f.sigma_x * f.h0 * f.sigma_x;
  f.hx0m = f.sigma_x * f.h0m * f.sigma_x;
  f.hxc = f.sigma_x * f.hc * f.sigma_x;
  return f;
}

Matrix conjugated_generator_explicit(const GateParams& gp, const HilbertSpace& s) {
  gp.validate();
  require_space(gp, s, Model::ideal);
  const int lo = gp.lower();
  const double c = gp.dispersive_shift;
  const double coupling = gp.lambda * multiquantum_factor(gp.m, gp.k);
  Matrix gen = Matrix::zero(s.dim());
  for (int a = 0; a < 2; ++a)
    for (int n : {lo, gp.m}) gen += joint_projector(s, a, n, a, n) * cplx(c * gp.m);
  gen -= joint_projector(s, 1, lo, 1, lo) * cplx(gp.k * c);
  gen += (joint_projector(s, 1, gp.m, 0, lo) + joint_projector(s, 0, lo, 1, gp.m)) * cplx(coupling);
  return gen;
}

Matrix echo_generator(const GateParams& gp, const HilbertSpace& s, double theta) {
  gp.validate();
  require_space(gp, s, Model::ideal);
  const Matrix hc = build_coupling_H(coupling_for(gp, theta), s);
  const Matrix x = tensor(s, atomic_flip(2), Matrix::identity(s.fock_cutoff()));
  return (hc + x * hc * x) * cplx(gp.tau);
}

Matrix echo_generator_projector_form(const GateParams& gp, const HilbertSpace& s, double theta) {
  gp.validate();
  require_space(gp, s, Model::ideal);
  const CVector plus = atom_amplitudes(AtomInput::plus, 2);
  const CVector minus = atom_amplitudes(AtomInput::minus, 2);
  const Matrix atomic = outer(plus, plus) - outer(minus, minus);
  Matrix osc(s.fock_cutoff(), s.fock_cutoff());
  osc(gp.m, gp.lower()) = gp.phi * phase(theta);
  osc(gp.lower(), gp.m) = gp.phi * phase(-theta);
  return tensor(s, atomic, osc);
}

Matrix self_energy_sum(const GateParams& gp, const HilbertSpace& s) {
  gp.validate();
  require_space(gp, s, Model::ideal);
  const Matrix h0m = build_self_energy_H(coupling_for(gp, 0.0), s);
  const Matrix x = tensor(s, atomic_flip(2), Matrix::identity(s.fock_cutoff()));
  return (h0m + x * h0m * x) * cplx(gp.tau);
}

Matrix self_energy_sum_closed_form(const GateParams& gp, const HilbertSpace& s) {
  gp.validate();
  require_space(gp, s, Model::ideal);
  Matrix out = Matrix::zero(s.dim());
  for (int a = 0; a < 2; ++a) {
    for (int n : {gp.lower(), gp.m}) out(s.index(a, n), s.index(a, n)) = 2.0 * gp.eta;
    out(s.index(a, gp.lower()), s.index(a, gp.lower())) -= gp.k * gp.theta0;
  }
  return out;
}

Matrix regrouped_gate(const GateParams& gp, const HilbertSpace& s) {
  const Matrix x = tensor(s, atomic_flip(2), Matrix::identity(s.fock_cutoff()));
  const Matrix coupling = echo_generator(gp, s, gp.echo_phase());
  const Matrix energies = self_energy_sum(gp, s);
  // Both generators already carry the factor tau.
  return unitary_of(coupling, 1.0) * unitary_of(energies, 1.0) * x;
}

}  // namespace fockgate
