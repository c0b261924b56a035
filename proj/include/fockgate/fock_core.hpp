#pragma once

// Joint atom (x) truncated-Fock bookkeeping.
//
// Basis ordering is atom-major: joint index = atom * fock_cutoff + n, so the
// oscillator block belonging to one atomic level is contiguous. A space with
// atom_dim == 1 is a bare oscillator (used for target states and reduced
// states). The top retained Fock level (fock_cutoff - 1) is the guard level:
// population there signals truncation error and is always reported.

#include <span>
#include <string_view>
#include <vector>

#include "fockgate/linalg.hpp"

namespace fockgate {

/// Atomic levels: g (ground), e (intermediate), h (far-detuned upper).
enum class Level : int { g = 0, e = 1, h = 2 };

/// Parses "g", "e" or "h"; throws LabelError otherwise.
Level parse_level(std::string_view label);
char level_label(Level level) noexcept;

/// Default numerical tolerances. Every check that uses one takes an override.
struct Tolerances {
  double algebraic = 1e-12;  // exact operator identities
  double unitarity = 1e-10;  // propagators, conjugation identities
  double fidelity = 1e-9;    // state comparisons
};

class HilbertSpace {
 public:
  /// Throws DimensionError unless atom_dim >= 1 and fock_cutoff >= 2.
  HilbertSpace(int atom_dim, int fock_cutoff);

  static HilbertSpace oscillator(int fock_cutoff) { return {1, fock_cutoff}; }

  int atom_dim() const noexcept { return atom_dim_; }
  int fock_cutoff() const noexcept { return fock_cutoff_; }
  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(atom_dim_) * static_cast<std::size_t>(fock_cutoff_);
  }
  int guard_level() const noexcept { return fock_cutoff_ - 1; }

  /// Joint index of |atom, n>; throws DimensionError when out of range.
  std::size_t index(int atom, int n) const;
  std::size_t index(Level atom, int n) const { return index(static_cast<int>(atom), n); }

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  int atom_dim_;
  int fock_cutoff_;
};

/// Amplitudes over a HilbertSpace.
class StateVector {
 public:
  StateVector(HilbertSpace space, CVector amplitudes);
  explicit StateVector(HilbertSpace space);  // zero vector

  static StateVector basis(HilbertSpace space, int atom, int n);
  static StateVector basis(HilbertSpace space, Level atom, int n) {
    return basis(space, static_cast<int>(atom), n);
  }
  /// atom_amps (x) fock_amps; lengths must equal the factor dimensions.
  static StateVector product(HilbertSpace space, std::span<const cplx> atom_amps,
                             std::span<const cplx> fock_amps);

  const HilbertSpace& space() const noexcept { return space_; }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  cplx amplitude(int atom, int n) const { return amps_[space_.index(atom, n)]; }
  cplx amplitude(Level atom, int n) const { return amps_[space_.index(atom, n)]; }

  double norm() const;
  /// Scales to unit norm; throws InfeasibleError for a zero or non-finite vector.
  StateVector& normalize();
  StateVector normalized() const { return StateVector(*this).normalize(); }
  bool finite() const noexcept;

 private:
  HilbertSpace space_;
  CVector amps_;
};

/// Applies `op` (dimension must match the space).
StateVector apply(const Matrix& op, const StateVector& psi);

Matrix annihilation_op(int cutoff);
Matrix creation_op(int cutoff);
Matrix number_op(int cutoff);

/// |i><j| on an atom with `atom_dim` levels; throws LabelError if a level
/// does not exist for that dimension.
Matrix atomic_sigma(Level i, Level j, int atom_dim);
Matrix atomic_sigma(std::string_view i, std::string_view j, int atom_dim);

/// sigma_x on {g, e}, identity on any further levels.
Matrix atomic_flip(int atom_dim);

/// atomic (x) oscillator under the atom-major ordering of `space`.
Matrix tensor(const HilbertSpace& space, const Matrix& atomic, const Matrix& oscillator);

/// Partial trace over the atom: rho_osc[n][n'] = sum_a psi[a,n] conj(psi[a,n']).
Matrix reduced_oscillator_state(const StateVector& psi);

/// Tr(rho^2).
double purity(const Matrix& rho);

/// |<a|b>|^2; spaces must match.
double fidelity(const StateVector& a, const StateVector& b);

/// <psi|rho|psi> for an oscillator density matrix.
double fidelity(const Matrix& rho, const StateVector& psi);

/// Population of each Fock level, summed over atomic levels.
std::vector<double> fock_populations(const StateVector& psi);

/// Population of the guard (top) Fock level.
double guard_population(const StateVector& psi);

/// Population of one atomic level, summed over Fock levels.
double atomic_population(const StateVector& psi, Level level);

/// Oscillator-only state embedded from the amplitudes `fock_amps` (shorter
/// inputs are zero padded).
StateVector oscillator_state(int cutoff, std::span<const cplx> fock_amps);

}  // namespace fockgate
