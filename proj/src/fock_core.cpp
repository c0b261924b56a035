#include "fockgate/fock_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fockgate/errors.hpp"

namespace fockgate {

Level parse_level(std::string_view label) {
  if (label == "g") return Level::g;
  if (label == "e") return Level::e;
  if (label == "h") return Level::h;
  throw LabelError("unknown atomic level '" + std::string(label) + "' (expected g, e or h)");
}

char level_label(Level level) noexcept {
  switch (level) {
    case Level::g: return 'g';
    case Level::e: return 'e';
    case Level::h: return 'h';
  }
  return '?';
}

HilbertSpace::HilbertSpace(int atom_dim, int fock_cutoff)
    : atom_dim_(atom_dim), fock_cutoff_(fock_cutoff) {
  if (atom_dim < 1) throw DimensionError("HilbertSpace: atom_dim must be >= 1");
  if (fock_cutoff < 2) throw DimensionError("HilbertSpace: fock_cutoff must be >= 2");
}

std::size_t HilbertSpace::index(int atom, int n) const {
  if (atom < 0 || atom >= atom_dim_ || n < 0 || n >= fock_cutoff_) {
    throw DimensionError("HilbertSpace: |" + std::to_string(atom) + "," + std::to_string(n) +
                         "> outside space with atom_dim=" + std::to_string(atom_dim_) +
                         ", fock_cutoff=" + std::to_string(fock_cutoff_));
  }
  return static_cast<std::size_t>(atom) * fock_cutoff_ + n;
}

StateVector::StateVector(HilbertSpace space, CVector amplitudes)
    : space_(space), amps_(std::move(amplitudes)) {
  if (amps_.size() != space_.dim()) {
    throw DimensionError("StateVector: " + std::to_string(amps_.size()) +
                         " amplitudes for a space of dimension " + std::to_string(space_.dim()));
  }
}

StateVector::StateVector(HilbertSpace space) : space_(space), amps_(space.dim()) {}

StateVector StateVector::basis(HilbertSpace space, int atom, int n) {
  StateVector s(space);
  s.amps_[space.index(atom, n)] = 1.0;
  return s;
}

StateVector StateVector::product(HilbertSpace space, std::span<const cplx> atom_amps,
                                 std::span<const cplx> fock_amps) {
  if (atom_amps.size() != static_cast<std::size_t>(space.atom_dim()) ||
      fock_amps.size() != static_cast<std::size_t>(space.fock_cutoff())) {
    throw DimensionError("StateVector::product: factor lengths do not match the space");
  }
  StateVector s(space);
  for (int a = 0; a < space.atom_dim(); ++a)
    for (int n = 0; n < space.fock_cutoff(); ++n)
      s.amps_[space.index(a, n)] = atom_amps[a] * fock_amps[n];
  return s;
}

double StateVector::norm() const { return std::sqrt(norm2(amps_)); }

StateVector& StateVector::normalize() {
  const double nrm = norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw InfeasibleError("cannot normalize a zero or non-finite state");
  for (auto& a : amps_) a /= nrm;
  return *this;
}

bool StateVector::finite() const noexcept {
  return std::all_of(amps_.begin(), amps_.end(), [](cplx a) {
    return std::isfinite(a.real()) && std::isfinite(a.imag());
  });
}

StateVector apply(const Matrix& op, const StateVector& psi) {
  if (op.rows() != psi.space().dim() || op.cols() != psi.space().dim()) {
    throw DimensionError("apply: operator of size " + std::to_string(op.rows()) +
                         " on a space of dimension " + std::to_string(psi.space().dim()));
  }
  return StateVector(psi.space(), op * psi.amplitudes());
}

Matrix annihilation_op(int cutoff) {
  if (cutoff < 2) throw DimensionError("annihilation_op: cutoff must be >= 2");
  Matrix a(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix creation_op(int cutoff) { return annihilation_op(cutoff).adjoint(); }

Matrix number_op(int cutoff) {
  if (cutoff < 2) throw DimensionError("number_op: cutoff must be >= 2");
  Matrix n(cutoff, cutoff);
  for (int k = 0; k < cutoff; ++k) n(k, k) = k;
  return n;
}

Matrix atomic_sigma(Level i, Level j, int atom_dim) {
  const int ii = static_cast<int>(i), jj = static_cast<int>(j);
  if (ii >= atom_dim || jj >= atom_dim) {
    throw LabelError(std::string("atomic_sigma: level ") +
                     level_label(ii >= atom_dim ? i : j) + " does not exist for atom_dim=" +
                     std::to_string(atom_dim));
  }
  Matrix s(atom_dim, atom_dim);
  s(ii, jj) = 1.0;
  return s;
}

Matrix atomic_sigma(std::string_view i, std::string_view j, int atom_dim) {
  return atomic_sigma(parse_level(i), parse_level(j), atom_dim);
}

Matrix atomic_flip(int atom_dim) {
  if (atom_dim < 2) throw DimensionError("atomic_flip: needs at least levels g and e");
  Matrix x = Matrix::identity(atom_dim);
  x(0, 0) = x(1, 1) = 0.0;
  x(0, 1) = x(1, 0) = 1.0;
  return x;
}

Matrix tensor(const HilbertSpace& space, const Matrix& atomic, const Matrix& oscillator) {
  const auto ad = static_cast<std::size_t>(space.atom_dim());
  const auto fd = static_cast<std::size_t>(space.fock_cutoff());
  if (!atomic.square() || !oscillator.square() || atomic.rows() != ad || oscillator.rows() != fd) {
    throw DimensionError("tensor: factors " + std::to_string(atomic.rows()) + "x" +
                         std::to_string(atomic.cols()) + " and " +
                         std::to_string(oscillator.rows()) + "x" +
                         std::to_string(oscillator.cols()) + " do not match space " +
                         std::to_string(ad) + " x " + std::to_string(fd));
  }
  return kron(atomic, oscillator);
}

Matrix reduced_oscillator_state(const StateVector& psi) {
  const auto& sp = psi.space();
  const int nc = sp.fock_cutoff();
  Matrix rho(nc, nc);
  const auto amps = psi.amplitudes();
  for (int a = 0; a < sp.atom_dim(); ++a) {
    const cplx* block = amps.data() + static_cast<std::size_t>(a) * nc;
    for (int n = 0; n < nc; ++n)
      for (int k = 0; k < nc; ++k) rho(n, k) += block[n] * std::conj(block[k]);
  }
  return rho;
}

double purity(const Matrix& rho) {
  if (!rho.square()) throw DimensionError("purity: density matrix is not square");
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  double p = 0.0;
  for (const auto& v : rho.data()) p += std::norm(v);
  return p;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (!(a.space() == b.space())) throw DimensionError("fidelity: states live in different spaces");
  return std::norm(inner(a.amplitudes(), b.amplitudes()));
}

double fidelity(const Matrix& rho, const StateVector& psi) {
  if (rho.rows() != psi.space().dim() || !rho.square()) {
    throw DimensionError("fidelity: density matrix does not match the state");
  }
  const CVector r = rho * psi.amplitudes();
  return std::real(inner(psi.amplitudes(), r));
}

std::vector<double> fock_populations(const StateVector& psi) {
  const auto& sp = psi.space();
  std::vector<double> pops(sp.fock_cutoff(), 0.0);
  for (int a = 0; a < sp.atom_dim(); ++a)
    for (int n = 0; n < sp.fock_cutoff(); ++n) pops[n] += std::norm(psi.amplitude(a, n));
  return pops;
}

double guard_population(const StateVector& psi) {
  return fock_populations(psi).back();
}

double atomic_population(const StateVector& psi, Level level) {
  const auto& sp = psi.space();
  const int a = static_cast<int>(level);
  if (a >= sp.atom_dim()) return 0.0;
  double p = 0.0;
  for (int n = 0; n < sp.fock_cutoff(); ++n) p += std::norm(psi.amplitude(a, n));
  return p;
}

StateVector oscillator_state(int cutoff, std::span<const cplx> fock_amps) {
  if (fock_amps.size() > static_cast<std::size_t>(cutoff)) {
    throw DimensionError("oscillator_state: " + std::to_string(fock_amps.size()) +
                         " amplitudes exceed cutoff " + std::to_string(cutoff));
  }
  CVector amps(cutoff);
  std::copy(fock_amps.begin(), fock_amps.end(), amps.begin());
  return StateVector(HilbertSpace::oscillator(cutoff), std::move(amps));
}

}  // namespace fockgate
