#pragma once

// Dense double-precision inner loops with one scalar reference variant and
// SIMD variants (AVX2+FMA on x86-64, NEON on AArch64). The variant is picked
// once at runtime from CPU support; SLSPEC_ISA=scalar|avx2|neon overrides it.

#include <cstddef>
#include <span>
#include <string_view>

namespace slspec::kernels {

enum class Isa { scalar, avx2, neon };

struct Table {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
};

std::string_view name(Isa isa) noexcept;

/// True when the variant was compiled in and the running CPU supports it.
bool supported(Isa isa) noexcept;

/// Kernel table for a specific variant; throws Error(domain) if unsupported.
const Table& table(Isa isa);

/// Variant used by the free functions below.
Isa active_isa() noexcept;

double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
double sum(std::span<const double> x);

namespace detail {
const Table& scalar_table() noexcept;
#if defined(SLSPEC_HAVE_AVX2_TU)
const Table& avx2_table() noexcept;
#endif
#if defined(SLSPEC_HAVE_NEON_TU)
const Table& neon_table() noexcept;
#endif
}  // namespace detail

}  // namespace slspec::kernels
