#pragma once

// The three-step UG_m gate: selective pulse, spin flip, phase-shifted
// selective pulse,
//
//   U = exp(-i H(theta_echo) tau) . sigma_x . exp(-i H(theta_c) tau),
//
// which rotates the Fock pair {m-k, m} without entangling the oscillator with
// an atom prepared in |+> or |->.
//
// The echo pulse phase is theta_echo = theta_c - k theta0, theta0 = (g^2/delta)
// tau. Under the effective Hamiltonian's phase convention the |g,m-k> level
// runs k theta0 behind the rest of the block during the first pulse; the echo
// phase cancels exactly that lag, which is what makes the final state a
// product state. With theta_echo = theta_c + k theta0 the output is entangled.

#include <array>
#include <optional>
#include <string_view>
#include <utility>

#include "fockgate/fock_core.hpp"
#include "fockgate/hamiltonians.hpp"
#include "fockgate/linalg.hpp"

namespace fockgate {

/// ideal: H_0m + H_c only (perfectly selective pair, atom_dim 2)
/// effective: the complete effective Hamiltonian (atom_dim 2)
/// full: three-level rotating-frame Hamiltonian (atom_dim 3)
enum class Model { ideal, effective, full };

std::string_view model_name(Model model) noexcept;
/// Throws Error on anything but "ideal", "effective" or "full".
Model parse_model(std::string_view name);
int atom_dim_for(Model model) noexcept;

/// Eigenstates of sigma_x on {g, e}.
enum class AtomInput { plus, minus };

inline int atom_sign(AtomInput a) noexcept { return a == AtomInput::plus ? 1 : -1; }
std::string_view atom_input_name(AtomInput a) noexcept;
AtomInput parse_atom_input(std::string_view name);
/// (|g> +- |e>)/sqrt(2), zero on |h> when atom_dim == 3.
CVector atom_amplitudes(AtomInput a, int atom_dim);

/// Derived quantities of one UG_m application.
struct GateParams {
  int m = 1;             // upper level of the pair
  int k = 1;             // quanta exchanged; the pair is {m-k, m}
  double tau = 0.0;      // duration of each selective pulse
  double lambda = 0.0;   // lambda (k = 1) or lambda_k
  double dispersive_shift = 0.0;  // g^2 / delta
  double theta0 = 0.0;   // (g^2/delta) tau
  double phi = 0.0;      // lambda tau sqrt(m!/(m-k)!)
  double eta = 0.0;      // (g^2 m/delta) tau
  double phase_offset = 0.0;  // laser phase common to both pulses

  int lower() const noexcept { return m - k; }
  double first_pulse_phase() const noexcept { return phase_offset; }
  double echo_phase() const noexcept { return phase_offset - k * theta0; }

  /// Throws InfeasibleError if the pair lies below the vacuum, tau < 0, or the
  /// derived fields disagree with (tau, lambda, dispersive_shift).
  void validate() const;
};

/// Gate reaching rotation angle `phi` >= 0. For k > 1, `lambda_k` is the
/// sideband coupling; for k = 1 lambda comes from `p`.
GateParams gate_for_phi(int m, double phi, const RamanParams& p, int k = 1,
                        std::optional<double> lambda_k = std::nullopt);
GateParams gate_for_tau(int m, double tau, const RamanParams& p, int k = 1,
                        std::optional<double> lambda_k = std::nullopt);

/// The induced 2x2 map on (|m-k>, |m>) for an atom prepared in |+> or |->,
/// including the pair's phase exp(-2i eta) relative to untouched levels.
struct QubitRotation {
  int m = 1;
  int k = 1;
  double phi = 0.0;
  double theta = 0.0;         // echo phase relative to the first pulse, -k theta0
  double global_phase = 0.0;  // -2 eta
  double phase_offset = 0.0;
  AtomInput atom = AtomInput::plus;

  /// Row-major [[lower<-lower, lower<-upper], [upper<-lower, upper<-upper]].
  std::array<cplx, 4> matrix() const;
  std::pair<cplx, cplx> apply(cplx alpha, cplx beta) const;
  /// Factor picked up by the atom: +1 for |+>, -1 for |->.
  double atom_factor() const noexcept { return atom == AtomInput::plus ? 1.0 : -1.0; }
};

QubitRotation qubit_rotation(const GateParams& gp, AtomInput atom = AtomInput::plus);

/// Two-level oscillator state on {|lower>, |upper>}.
struct QubitState {
  int lower_level = 0;
  int upper_level = 1;
  cplx lower{};
  cplx upper{};

  /// Embeds into an oscillator-only space with the given cutoff.
  StateVector embed(int cutoff) const;
};

/// Output qubit for the input alpha|m-k> + beta|m>:
///
///   (alpha cos p + i beta sin p) e^{-i t} |m-k> + (beta cos p + i alpha sin p) |m>
///
/// times exp(-2i eta), evaluated with p = -phi for |+> (+phi for |->) and
/// t = -k theta0, then conjugated by the common phase offset. Throws
/// InfeasibleError if |alpha|^2 + |beta|^2 differs from 1 by more than 1e-9.
QubitState closed_form_rotation(cplx alpha, cplx beta, const GateParams& gp,
                                AtomInput atom = AtomInput::plus);

/// Full joint unitary of UG_m under `model`. The gate's m, phases and tau
/// override p.m and p.theta. Throws DimensionError when the space does not
/// match the model or fock_cutoff < m + 2.
Matrix ug_gate(const GateParams& gp, const RamanParams& p, const HilbertSpace& s, Model model);

StateVector apply_gate(const GateParams& gp, const RamanParams& p, const StateVector& psi,
                       Model model);

/// Largest |h> population seen on `samples` equally spaced instants of each
/// pulse (full model only).
double max_transient_h_population(const GateParams& gp, const RamanParams& p,
                                  const StateVector& psi, int samples = 200);

/// Oscillator map K = (<a| (x) I) U (|a> (x) I) for atom state `a`. When the
/// gate leaves the atom in |a> (up to sign) K is unitary.
Matrix induced_oscillator_map(const Matrix& joint_unitary, const HilbertSpace& s, AtomInput a);

/// Population outside the Fock pair {m-k, m}, summed over atomic levels.
double leakage(const StateVector& psi, int m, int k = 1);

/// Operators behind the regrouping of the gate (ideal model, atom_dim 2).
struct ConjugatedFactors {
  Matrix sigma_x;    // sigma_x (x) I
  Matrix h0;         // H(0) = H_0m + H_c(0)
  Matrix hx0;        // sigma_x H(0) sigma_x
  Matrix h0m;        // H_0m
  Matrix hx0m;       // sigma_x H_0m sigma_x
  Matrix hc;         // H_c(0)
  Matrix hxc;        // sigma_x H_c(0) sigma_x
};

ConjugatedFactors conjugated_factors(const GateParams& gp, const RamanParams& p,
                                     const HilbertSpace& s);

/// sigma_x H(0) sigma_x written out term by term:
///   (g^2 m/delta) I_s - (k g^2/delta)|e,m-k><e,m-k| + c (|e,m><g,m-k| + h.c.)
Matrix conjugated_generator_explicit(const GateParams& gp, const HilbertSpace& s);

/// (H_c(theta) + H_xc(theta)) tau.
Matrix echo_generator(const GateParams& gp, const HilbertSpace& s, double theta);

/// (|+><+| - |-><-|) (x) phi (e^{i theta}|m><m-k| + h.c.).
Matrix echo_generator_projector_form(const GateParams& gp, const HilbertSpace& s, double theta);

/// (H_x0m + H_0m) tau.
Matrix self_energy_sum(const GateParams& gp, const HilbertSpace& s);

/// 2 eta I_s - k theta0 I_at (x) |m-k><m-k|.
Matrix self_energy_sum_closed_form(const GateParams& gp, const HilbertSpace& s);

/// exp(-i (H_c + H_xc)(theta_echo) tau) exp(-i (H_x0m + H_0m) tau) sigma_x,
/// the regrouped form of the ideal gate.
Matrix regrouped_gate(const GateParams& gp, const HilbertSpace& s);

}  // namespace fockgate
