#include "fockgate/propagator.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "fockgate/errors.hpp"

namespace fockgate {

Propagator::Propagator(const Matrix& hamiltonian, double hermitian_tolerance) {
  if (!hamiltonian.square()) throw DimensionError("Propagator: generator is not square");
  const double defect = hermiticity_defect(hamiltonian);
  if (!(defect <= hermitian_tolerance)) {
    throw NotHermitianError("Propagator: generator is not Hermitian (max|H - H^dagger| = " +
                            std::to_string(defect) + ")");
  }
  generator_ = (hamiltonian + hamiltonian.adjoint()) * cplx(0.5);

  const auto n = static_cast<Eigen::Index>(generator_.rows());
  using RowMajor = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> h(generator_.data().data(), n, n);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) throw Error("Propagator: eigendecomposition failed");

  eigenvalues_.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  eigenvectors_ = Matrix(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) eigenvectors_(r, c) = solver.eigenvectors()(r, c);
}

Matrix Propagator::unitary(double t) const {
  const std::size_t n = dim();
  Matrix scaled = eigenvectors_;
  for (std::size_t c = 0; c < n; ++c) {
    const cplx ph = std::polar(1.0, -eigenvalues_[c] * t);
    for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= ph;
  }
  return scaled * eigenvectors_.adjoint();
}

StateVector Propagator::evolve(const StateVector& psi, double t) const {
  if (psi.space().dim() != dim()) {
    throw DimensionError("Propagator::evolve: state of dimension " +
                         std::to_string(psi.space().dim()) + " vs generator of dimension " +
                         std::to_string(dim()));
  }
  CVector coeff = eigenvectors_.adjoint() * psi.amplitudes();
  for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] *= std::polar(1.0, -eigenvalues_[i] * t);
  return StateVector(psi.space(), eigenvectors_ * coeff);
}

double Propagator::reconstruction_defect() const {
  Matrix scaled = eigenvectors_;
  for (std::size_t c = 0; c < dim(); ++c)
    for (std::size_t r = 0; r < dim(); ++r) scaled(r, c) *= eigenvalues_[c];
  return max_abs_diff(scaled * eigenvectors_.adjoint(), generator_);
}

Matrix unitary_of(const Matrix& hamiltonian, double t) { return Propagator(hamiltonian).unitary(t); }

StateVector evolve(const StateVector& psi, const Matrix& hamiltonian, double t) {
  return Propagator(hamiltonian).evolve(psi, t);
}

}  // namespace fockgate
