#pragma once

// Dense complex matrices. Products go through the dispatched kernels.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fockgate {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr cplx kI{0.0, 1.0};

/// Row-major dense complex matrix with value semantics.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static Matrix zero(std::size_t n) { return Matrix(n, n); }
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const cplx> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<const cplx> data() const noexcept { return data_; }
  std::span<cplx> data() noexcept { return data_; }

  Matrix adjoint() const;
  cplx trace() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(cplx s) noexcept;

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend CVector operator*(const Matrix& a, std::span<const cplx> x);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  CVector data_;
};

inline CVector operator*(const Matrix& a, const CVector& x) {
  return a * std::span<const cplx>(x);
}

/// Kronecker product, `a` being the slow (outer) index.
Matrix kron(const Matrix& a, const Matrix& b);

Matrix commutator(const Matrix& a, const Matrix& b);

/// Largest entry modulus.
double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);

/// max |M - M^dagger|.
double hermiticity_defect(const Matrix& m);

/// max |M^dagger M - I|.
double unitarity_defect(const Matrix& m);

cplx inner(std::span<const cplx> x, std::span<const cplx> y);
double norm2(std::span<const cplx> x);

/// Outer product |x><y|.
Matrix outer(std::span<const cplx> x, std::span<const cplx> y);

}  // namespace fockgate
