#pragma once

// Dense complex inner-loop kernels.
//
// Every kernel has a portable scalar reference implementation and, on x86-64
// builds, an AVX2+FMA variant. The variant is chosen once at runtime from the
// CPU feature bits; FOCKGATE_ISA=scalar|avx2 in the environment (or
// force_isa()) pins it. All storage is row-major std::complex<double>, which
// has the interleaved {re, im} layout the vector variants rely on.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace fockgate::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Best variant the running CPU supports (and this build contains).
Isa detected_isa() noexcept;

/// Variant currently used by the dispatching entry points below.
Isa active_isa() noexcept;

/// Pin the dispatch to `isa`, or restore auto-detection with std::nullopt.
/// Requesting a variant the CPU cannot run falls back to scalar.
void force_isa(std::optional<Isa> isa) noexcept;

// c[m x n] = a[m x k] * b[k x n]
void gemm(std::size_t m, std::size_t n, std::size_t k, std::span<const cplx> a,
          std::span<const cplx> b, std::span<cplx> c);

// y[m] = a[m x n] * x[n]
void gemv(std::size_t m, std::size_t n, std::span<const cplx> a,
          std::span<const cplx> x, std::span<cplx> y);

// sum_i conj(x_i) * y_i
cplx dotc(std::span<const cplx> x, std::span<const cplx> y);

namespace scalar {
void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
          const cplx* b, cplx* c) noexcept;
void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x,
          cplx* y) noexcept;
cplx dotc(std::size_t n, const cplx* x, const cplx* y) noexcept;
}  // namespace scalar

#if defined(FOCKGATE_HAVE_AVX2)
namespace avx2 {
void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
          const cplx* b, cplx* c) noexcept;
void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x,
          cplx* y) noexcept;
cplx dotc(std::size_t n, const cplx* x, const cplx* y) noexcept;
}  // namespace avx2
#endif

}  // namespace fockgate::kernels
