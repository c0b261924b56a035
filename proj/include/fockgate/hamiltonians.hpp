#pragma once

// Model Hamiltonians for the selective atom-oscillator interaction (hbar = 1).
//
// full       three-level atom {g, e, h} in a time-independent rotating frame
// effective  two-level atom {g, e} after eliminating the far-detuned |h>
// selective  the effective model restricted to the Fock pair {m-k, m}
//
// Phase convention: the laser phase theta rides on the sigma_ge a^dagger
// term, so <g,m| H_eff |e,m-1> = lambda sqrt(m) e^{i theta}.

#include <optional>
#include <string>

#include "fockgate/fock_core.hpp"
#include "fockgate/linalg.hpp"

namespace fockgate {

/// Physical couplings of the Raman scheme.
struct RamanParams {
  double g = 1.0;         // cavity coupling (real)
  double omega_L = 0.1;   // |Omega_L|, laser coupling magnitude
  double theta = 0.0;     // laser phase
  double delta = 20.0;    // Raman detuning, nonzero
  int m = 1;              // selected Fock level
  bool include_shift = true;  // apply the engineered Stark shift on |e>

  /// lambda = g |Omega_L| / delta
  double lambda() const noexcept { return g * omega_L / delta; }
  /// g^2 / delta, the per-quantum dispersive shift.
  double dispersive_shift() const noexcept { return g * g / delta; }
  /// Delta_m = (g^2 m - |Omega_L|^2) / delta
  double engineered_shift() const noexcept {
    return (g * g * m - omega_L * omega_L) / delta;
  }
  /// r = |Omega_L| / g; selectivity needs r << 1.
  double selectivity_ratio() const noexcept { return omega_L / g; }

  /// Throws InfeasibleError on zero detuning, negative |Omega_L|, m < 0 or
  /// non-finite values.
  void validate() const;

  /// Human-readable warning when r exceeds 0.2, where neighbouring doublets
  /// are no longer well separated.
  std::optional<std::string> selectivity_diagnostic() const;
};

struct EffectiveParams {
  double lambda = 0.0;
  double theta = 0.0;
  int m = 0;
  double delta = 0.0;
  double g = 0.0;
};

EffectiveParams effective_params(const RamanParams& p);

/// Rotating-frame three-level Hamiltonian
///   -delta sigma_hh + g (sigma_hg a + h.c.)
///   + |Omega_L| (e^{i theta} sigma_he + h.c.) + Delta_m sigma_ee
/// on a space with atom_dim == 3. The Delta_m term is present only with
/// include_shift.
Matrix build_full_H(const RamanParams& p, const HilbertSpace& s);

/// (g^2/delta) a^dagger a sigma_gg + (g^2 m/delta) sigma_ee
///   + lambda (e^{i theta} sigma_ge a^dagger + e^{-i theta} sigma_eg a)
/// on a space with atom_dim == 2. Without include_shift the sigma_ee
/// coefficient is the bare Stark shift |Omega_L|^2/delta.
Matrix build_effective_H(const RamanParams& p, const HilbertSpace& s);

/// Split of the effective Hamiltonian around the selected pair {m-1, m}.
struct EffectiveDecomposition {
  Matrix dispersive_diagonal;  // phases of all levels outside {m-1, m}
  Matrix off_resonant;         // couplings inside doublets {|g,n>,|e,n-1>}, n != m
  Matrix self_energy;          // H_0m on {g,e} x {m-1, m}
  Matrix selective;            // H_c, the resonant doublet {|g,m>,|e,m-1>}

  /// H_0n: every dispersive term, i.e. dispersive_diagonal + off_resonant.
  Matrix dispersive() const { return dispersive_diagonal + off_resonant; }
  Matrix total() const { return dispersive() + self_energy + selective; }
};

/// Requires m >= 1 and include_shift.
EffectiveDecomposition decompose_effective(const RamanParams& p, const HilbertSpace& s);

/// The resonant pair {|g,m>, |e,m-k>} with its self-energy block. k = 1 is
/// the cavity case; k > 1 is the multi-quantum sideband with a free lambda_k.
struct SelectiveCoupling {
  int m = 1;
  int k = 1;
  double lambda = 0.0;           // lambda (k = 1) or lambda_k
  double theta = 0.0;            // laser phase
  double dispersive_shift = 0.0; // g^2 / delta

  /// Modulus of <g,m| H |e,m-k>: lambda sqrt(m! / (m-k)!).
  double coupling() const;
};

SelectiveCoupling selective_coupling(const RamanParams& p);

/// H_0m = (g^2 m/delta) I_s - (k g^2/delta) |g,m-k><g,m-k| on {g,e} x {m-k, m}.
Matrix build_self_energy_H(const SelectiveCoupling& sc, const HilbertSpace& s);
/// H_c = coupling() (e^{i theta} |g,m><e,m-k| + h.c.).
Matrix build_coupling_H(const SelectiveCoupling& sc, const HilbertSpace& s);
/// H_0m + H_c.
Matrix build_selective_H(const SelectiveCoupling& sc, const HilbertSpace& s);

/// Delta(n) = g^2 (n - m) / delta, detuning of |g,n> from |e,n-1>.
double effective_detuning(int n, const RamanParams& p);

/// |Delta(n)| / (lambda sqrt(n)): how many coupling strengths the doublet n
/// sits away from resonance. Infinite for n = 0 (no partner state).
double selectivity_margin(int n, const RamanParams& p);

/// lambda_k (e^{i theta} sigma_ge (a^dagger)^k + e^{-i theta} sigma_eg a^k),
/// the multi-quantum coupling; m selects the doublet {|g,m>, |e,m-k>}.
Matrix build_multiquantum_H(int k, double lambda_k, double theta, int m, const HilbertSpace& s);

/// sqrt(m! / (m-k)!)
double multiquantum_factor(int m, int k);

}  // namespace fockgate
