#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fockgate/kernels.hpp"

namespace fockgate::kernels {
namespace {

struct Table {
  void (*gemm)(std::size_t, std::size_t, std::size_t, const cplx*, const cplx*,
               cplx*) noexcept;
  void (*gemv)(std::size_t, std::size_t, const cplx*, const cplx*, cplx*) noexcept;
  cplx (*dotc)(std::size_t, const cplx*, const cplx*) noexcept;
};

constexpr Table scalar_table{&scalar::gemm, &scalar::gemv, &scalar::dotc};
#if defined(FOCKGATE_HAVE_AVX2)
constexpr Table avx2_table{&avx2::gemm, &avx2::gemv, &avx2::dotc};
#endif

bool cpu_has_avx2() noexcept {
#if defined(FOCKGATE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa resolve(Isa wanted) noexcept {
  if (wanted == Isa::avx2 && cpu_has_avx2()) return Isa::avx2;
  return Isa::scalar;
}

Isa initial_isa() noexcept {
  if (const char* env = std::getenv("FOCKGATE_ISA")) {
    const std::string_view v{env};
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2") return resolve(Isa::avx2);
  }
  return detected_isa();
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

const Table& table() noexcept {
#if defined(FOCKGATE_HAVE_AVX2)
  if (current().load(std::memory_order_relaxed) == Isa::avx2) return avx2_table;
#endif
  return scalar_table;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("kernels: ") + what);
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

Isa detected_isa() noexcept { return resolve(Isa::avx2); }

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void force_isa(std::optional<Isa> isa) noexcept {
  current().store(isa ? resolve(*isa) : detected_isa(), std::memory_order_relaxed);
}

void gemm(std::size_t m, std::size_t n, std::size_t k, std::span<const cplx> a,
          std::span<const cplx> b, std::span<cplx> c) {
  require(a.size() >= m * k && b.size() >= k * n && c.size() >= m * n,
          "gemm operand too small");
  table().gemm(m, n, k, a.data(), b.data(), c.data());
}

void gemv(std::size_t m, std::size_t n, std::span<const cplx> a,
          std::span<const cplx> x, std::span<cplx> y) {
  require(a.size() >= m * n && x.size() >= n && y.size() >= m,
          "gemv operand too small");
  table().gemv(m, n, a.data(), x.data(), y.data());
}

cplx dotc(std::span<const cplx> x, std::span<const cplx> y) {
  require(x.size() == y.size(), "dotc length mismatch");
  return table().dotc(x.size(), x.data(), y.data());
}

}  // namespace fockgate::kernels
