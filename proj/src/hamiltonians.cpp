#include "fockgate/hamiltonians.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fockgate/errors.hpp"

namespace fockgate {
namespace {

void require_atom_dim(const HilbertSpace& s, int want, const char* who) {
  if (s.atom_dim() != want) {
    throw DimensionError(std::string(who) + ": needs atom_dim=" + std::to_string(want) +
                         ", got " + std::to_string(s.atom_dim()));
  }
}

void require_cutoff(const HilbertSpace& s, int min_cutoff, const char* who) {
  if (s.fock_cutoff() < min_cutoff) {
    throw DimensionError(std::string(who) + ": fock_cutoff " + std::to_string(s.fock_cutoff()) +
                         " too small, needs >= " + std::to_string(min_cutoff));
  }
}

cplx phase(double angle) { return std::polar(1.0, angle); }

}  // namespace

void RamanParams::validate() const {
  const bool finite = std::isfinite(g) && std::isfinite(omega_L) && std::isfinite(theta) &&
                      std::isfinite(delta);
  if (!finite) throw InfeasibleError("RamanParams: non-finite parameter");
  if (delta == 0.0) throw InfeasibleError("RamanParams: detuning delta must be nonzero");
  if (omega_L < 0.0) throw InfeasibleError("RamanParams: omega_L is a magnitude and must be >= 0");
  if (m < 0) throw InfeasibleError("RamanParams: selected level m must be >= 0");
}

std::optional<std::string> RamanParams::selectivity_diagnostic() const {
  if (g == 0.0) return "selectivity undefined: g = 0";
  const double r = selectivity_ratio();
  if (r <= 0.2) return std::nullopt;
  std::ostringstream os;
  os << "weak selectivity: |Omega_L|/g = " << r
     << " > 0.2, neighbouring doublets will be driven";
  return os.str();
}

EffectiveParams effective_params(const RamanParams& p) {
  p.validate();
  return {p.lambda(), p.theta, p.m, p.delta, p.g};
}

Matrix build_full_H(const RamanParams& p, const HilbertSpace& s) {
  p.validate();
  require_atom_dim(s, 3, "build_full_H");
  require_cutoff(s, p.m + 2, "build_full_H");
  const int nc = s.fock_cutoff();
  const Matrix a = annihilation_op(nc);
  const Matrix ad = creation_op(nc);
  const Matrix id = Matrix::identity(nc);
  using enum Level;

  Matrix ham = tensor(s, atomic_sigma(h, h, 3), id) * cplx(-p.delta);
  ham += (tensor(s, atomic_sigma(h, g, 3), a) + tensor(s, atomic_sigma(g, h, 3), ad)) * cplx(p.g);
  ham += tensor(s, atomic_sigma(h, e, 3), id) * (p.omega_L * phase(p.theta));
  ham += tensor(s, atomic_sigma(e, h, 3), id) * (p.omega_L * phase(-p.theta));
  if (p.include_shift) ham += tensor(s, atomic_sigma(e, e, 3), id) * cplx(p.engineered_shift());
  return ham;
}

Matrix build_effective_H(const RamanParams& p, const HilbertSpace& s) {
  p.validate();
  require_atom_dim(s, 2, "build_effective_H");
  require_cutoff(s, p.m + 2, "build_effective_H");
  const int nc = s.fock_cutoff();
  const double c = p.dispersive_shift();
  const double e_shift =
      p.include_shift ? c * p.m : p.omega_L * p.omega_L / p.delta;
  using enum Level;

  Matrix ham = tensor(s, atomic_sigma(g, g, 2), number_op(nc)) * cplx(c);
  ham += tensor(s, atomic_sigma(e, e, 2), Matrix::identity(nc)) * cplx(e_shift);
  ham += tensor(s, atomic_sigma(g, e, 2), creation_op(nc)) * (p.lambda() * phase(p.theta));
  ham += tensor(s, atomic_sigma(e, g, 2), annihilation_op(nc)) * (p.lambda() * phase(-p.theta));
  return ham;
}

EffectiveDecomposition decompose_effective(const RamanParams& p, const HilbertSpace& s) {
  p.validate();
  require_atom_dim(s, 2, "decompose_effective");
  require_cutoff(s, p.m + 2, "decompose_effective");
  if (p.m < 1) throw InfeasibleError("decompose_effective: m must be >= 1 to select {m-1, m}");
  if (!p.include_shift) {
    throw InfeasibleError("decompose_effective: the split assumes the engineered shift Delta_m");
  }
  const int nc = s.fock_cutoff();
  const int m = p.m;
  const double c = p.dispersive_shift();
  const double lam = p.lambda();
  const std::size_t dim = s.dim();
  using enum Level;

  EffectiveDecomposition d{Matrix::zero(dim), Matrix::zero(dim), Matrix::zero(dim),
                           Matrix::zero(dim)};
  for (int n = 0; n < nc; ++n) {
    if (n == m || n == m - 1) continue;
    d.dispersive_diagonal(s.index(g, n), s.index(g, n)) = c * n;
    d.dispersive_diagonal(s.index(e, n), s.index(e, n)) = c * m;
  }
  // Doublets {|g,n>, |e,n-1>} other than the selected one stay dispersive.
  for (int n = 1; n < nc; ++n) {
    if (n == m) continue;
    const cplx v = lam * std::sqrt(static_cast<double>(n)) * phase(p.theta);
    d.off_resonant(s.index(g, n), s.index(e, n - 1)) = v;
    d.off_resonant(s.index(e, n - 1), s.index(g, n)) = std::conj(v);
  }
  const SelectiveCoupling sc = selective_coupling(p);
  d.self_energy = build_self_energy_H(sc, s);
  d.selective = build_coupling_H(sc, s);
  return d;
}

double SelectiveCoupling::coupling() const { return lambda * multiquantum_factor(m, k); }

SelectiveCoupling selective_coupling(const RamanParams& p) {
  p.validate();
  return {p.m, 1, p.lambda(), p.theta, p.dispersive_shift()};
}

namespace {
void check_pair(const SelectiveCoupling& sc, const HilbertSpace& s, const char* who) {
  require_atom_dim(s, 2, who);
  if (sc.k < 1) throw InfeasibleError(std::string(who) + ": k must be >= 1");
  if (sc.m - sc.k < 0) {
    throw InfeasibleError(std::string(who) + ": doublet {|g," + std::to_string(sc.m) + ">,|e," +
                          std::to_string(sc.m - sc.k) + ">} lies below the vacuum");
  }
  require_cutoff(s, sc.m + 1, who);
}
}  // namespace

Matrix build_self_energy_H(const SelectiveCoupling& sc, const HilbertSpace& s) {
  check_pair(sc, s, "build_self_energy_H");
  const double c = sc.dispersive_shift;
  Matrix h = Matrix::zero(s.dim());
  for (int a = 0; a < 2; ++a)
    for (int n : {sc.m - sc.k, sc.m}) h(s.index(a, n), s.index(a, n)) = c * sc.m;
  h(s.index(Level::g, sc.m - sc.k), s.index(Level::g, sc.m - sc.k)) -= c * sc.k;
  return h;
}

Matrix build_coupling_H(const SelectiveCoupling& sc, const HilbertSpace& s) {
  check_pair(sc, s, "build_coupling_H");
  Matrix h = Matrix::zero(s.dim());
  const cplx v = sc.coupling() * phase(sc.theta);
  const std::size_t gm = s.index(Level::g, sc.m);
  const std::size_t em = s.index(Level::e, sc.m - sc.k);
  h(gm, em) = v;
  h(em, gm) = std::conj(v);
  return h;
}

Matrix build_selective_H(const SelectiveCoupling& sc, const HilbertSpace& s) {
  return build_self_energy_H(sc, s) + build_coupling_H(sc, s);
}

double effective_detuning(int n, const RamanParams& p) {
  return p.dispersive_shift() * (n - p.m);
}

double selectivity_margin(int n, const RamanParams& p) {
  if (n <= 0) return std::numeric_limits<double>::infinity();
  return std::abs(effective_detuning(n, p)) / (std::abs(p.lambda()) * std::sqrt(static_cast<double>(n)));
}

double multiquantum_factor(int m, int k) {
  if (k < 0 || m - k < 0) throw InfeasibleError("multiquantum_factor: need 0 <= k <= m");
  double f = 1.0;
  for (int j = m - k + 1; j <= m; ++j) f *= j;
  return std::sqrt(f);
}

Matrix build_multiquantum_H(int k, double lambda_k, double theta, int m, const HilbertSpace& s) {
  require_atom_dim(s, 2, "build_multiquantum_H");
  if (k < 1) throw InfeasibleError("build_multiquantum_H: k must be >= 1");
  if (m < k) {
    throw InfeasibleError("build_multiquantum_H: doublet {|g," + std::to_string(m) + ">,|e," +
                          std::to_string(m - k) + ">} is infeasible for m < k");
  }
  require_cutoff(s, m + 1, "build_multiquantum_H");
  const int nc = s.fock_cutoff();
  Matrix ak = Matrix::identity(nc);
  const Matrix a = annihilation_op(nc);
  for (int j = 0; j < k; ++j) ak = ak * a;
  using enum Level;
  Matrix ham = tensor(s, atomic_sigma(g, e, 2), ak.adjoint()) * (lambda_k * phase(theta));
  ham += tensor(s, atomic_sigma(e, g, 2), ak) * (lambda_k * phase(-theta));
  return ham;
}

}  // namespace fockgate
