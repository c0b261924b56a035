#pragma once

#include <vector>

#include "fockgate/fock_core.hpp"
#include "fockgate/linalg.hpp"

namespace fockgate {

/// exp(-i H t) for a fixed Hermitian generator, through its eigendecomposition
/// H = V diag(w) V^dagger. The decomposition is computed once, so evaluating
/// many times is cheap.
class Propagator {
 public:
  /// Throws NotHermitianError when max|H - H^dagger| exceeds
  /// `hermitian_tolerance`; otherwise H is symmetrized to (H + H^dagger)/2.
  explicit Propagator(const Matrix& hamiltonian, double hermitian_tolerance = 1e-10);

  std::size_t dim() const noexcept { return eigenvalues_.size(); }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  const Matrix& eigenvectors() const noexcept { return eigenvectors_; }
  const Matrix& generator() const noexcept { return generator_; }

  Matrix unitary(double t) const;
  StateVector evolve(const StateVector& psi, double t) const;

  /// max|V diag(w) V^dagger - H|
  double reconstruction_defect() const;

 private:
  Matrix generator_;
  std::vector<double> eigenvalues_;
  Matrix eigenvectors_;
};

Matrix unitary_of(const Matrix& hamiltonian, double t);
StateVector evolve(const StateVector& psi, const Matrix& hamiltonian, double t);

}  // namespace fockgate
