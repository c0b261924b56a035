#pragma once

// Oscillator state synthesis from UG_m ladders.
//
// A target sum_l t_l |l> with highest occupied level N is reached from |0>
// by UG_1, UG_2, ..., UG_N. Gate j splits the amplitude parked on |j-1|:
//
//   cos phi_j = |t_{j-1}| / sqrt(sum_{l >= j-1} |t_l|^2)
//
// and pushes the rest up to |j>. Magnitudes alone leave relative phases
// wrong; every amplitude created by gate j inherits gate j's laser phase
// offset, so level l ends with exp(i sum_{j<=l} theta_c(j)) on top of the
// phase it would get with all offsets zero. The compiler runs the plan
// through a per-gate oscillator map (see PhaseModel) and solves for the
// offsets.

#include <optional>
#include <string>
#include <vector>

#include "fockgate/fock_core.hpp"
#include "fockgate/gates.hpp"
#include "fockgate/hamiltonians.hpp"
#include "fockgate/linalg.hpp"

namespace fockgate {

/// Which per-gate oscillator map the compiler assumes when solving phases.
/// ideal: closed-form rotation on the pair, identity elsewhere.
/// dispersive: same rotation, plus exp(-i (n + m) theta0) on every level n
///             outside the pair, the phase the effective model imprints on
///             levels that are far from resonance.
/// effective: <+| U |+> of the effective-model gate, which also carries the
///            light shifts of the off-resonant doublets. Not unitary, so the
///            offsets are refined by fixed-point iteration.
enum class PhaseModel { ideal, dispersive, effective };

std::string_view phase_model_name(PhaseModel pm) noexcept;
PhaseModel parse_phase_model(std::string_view name);

enum class Schedule { sequential, parallel_groups };

std::string_view schedule_name(Schedule s) noexcept;
Schedule parse_schedule(std::string_view name);

struct CircuitPlan {
  /// Gates in execution order; each step's phase_offset is its phase correction.
  std::vector<GateParams> steps;
  Schedule schedule = Schedule::sequential;
  /// Indices into `steps`; consecutive runs of pairwise disjoint pairs.
  std::vector<std::vector<std::size_t>> groups;
  /// Oscillator-only target state.
  StateVector target{HilbertSpace::oscillator(2)};
  PhaseModel phase_model = PhaseModel::ideal;
  RamanParams params;

  std::vector<double> phase_corrections() const;
};

/// Plan preparing alpha|0> + beta|n> from |0> on an oscillator of `cutoff`
/// levels. (1, 0) yields an empty plan; n = 0 with beta != 0, unnormalized
/// input or n + 2 > cutoff throw InfeasibleError.
CircuitPlan plan_superposition(cplx alpha, cplx beta, int n, const RamanParams& p, int cutoff,
                               PhaseModel pm = PhaseModel::ideal);

/// Plan preparing `target` (oscillator-only, unit norm within 1e-9) from |0>.
/// The highest occupied level N must satisfy N + 2 <= fock_cutoff.
CircuitPlan plan_general_state(const StateVector& target, const RamanParams& p,
                               PhaseModel pm = PhaseModel::ideal);

/// Greedy grouping of consecutive steps whose pairs are pairwise disjoint.
std::vector<std::vector<std::size_t>> group_parallel(const std::vector<GateParams>& steps);

/// Oscillator map a plan step applies under `pm` (atom in |+>), with the
/// step's phase offset taken as zero.
Matrix phase_model_map(const GateParams& gp, const RamanParams& p, int cutoff, PhaseModel pm);

struct ExecutionReport {
  double fidelity = 0.0;          // <target| rho |target>
  double leakage = 0.0;           // population above the target's highest level
  double guard_population = 0.0;  // population on the top retained level
  std::vector<double> step_purities;  // oscillator purity after each gate
  std::optional<double> max_h_population;  // full model only
  Matrix rho;                     // final oscillator density matrix
};

struct ExecutionOptions {
  /// Instants sampled per pulse when tracking |h> population (full model);
  /// 0 disables tracking.
  int h_samples = 0;
};

/// Runs the plan from the oscillator state `initial`. Before every gate the
/// atom is re-prepared in |+>, so a step maps rho to
/// Tr_atom[U (|+><+| (x) rho) U^dagger]. The gates' own parameters (m, tau,
/// phases) are used; `p` supplies the couplings for the effective and full
/// models. Throws DimensionError if a step's pair needs more levels than
/// `initial` has.
ExecutionReport execute_plan(const CircuitPlan& plan, const StateVector& initial, Model model,
                             const RamanParams& p, const ExecutionOptions& opts = {});

/// max |R_a R_b - R_b R_a| for the oscillator maps induced by two gates under
/// the ideal model with the atom in |+>. `s` must have atom_dim 2.
double commutation_check(const GateParams& ga, const GateParams& gb, const RamanParams& p,
                         const HilbertSpace& s);

/// JSON document describing a plan: steps {m, k, phi, theta0, tau,
/// phase_correction, lambda, eta}, schedule, groups, target, params.
std::string serialize_plan(const CircuitPlan& plan);
/// Inverse of serialize_plan. Throws Error on malformed documents and
/// InfeasibleError when a step's derived fields are inconsistent.
CircuitPlan parse_plan(std::string_view text);

}  // namespace fockgate
