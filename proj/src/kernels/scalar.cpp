#include "fockgate/kernels.hpp"

namespace fockgate::kernels::scalar {

void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
          const cplx* b, cplx* c) noexcept {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cplx{};
  // i-p-j order keeps the inner loop streaming along rows of b and c.
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx aip = a[i * k + p];
      if (aip == cplx{}) continue;
      const cplx* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
}

void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x,
          cplx* y) noexcept {
  for (std::size_t i = 0; i < m; ++i) {
    cplx acc{};
    const cplx* row = a + i * n;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) noexcept {
  cplx acc{};
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

}  // namespace fockgate::kernels::scalar
