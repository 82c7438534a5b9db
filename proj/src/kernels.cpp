#include "slspec/kernels.hpp"

#include <cstdlib>
#include <string>

#include "slspec/error.hpp"

namespace slspec::kernels {
namespace {

bool cpu_has(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(SLSPEC_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(SLSPEC_HAVE_NEON_TU)
      return true;  // mandatory on AArch64
#else
      return false;
#endif
  }
  return false;
}

const Table* lookup(Isa isa) noexcept {
  if (!cpu_has(isa)) return nullptr;
  switch (isa) {
    case Isa::scalar:
      return &detail::scalar_table();
#if defined(SLSPEC_HAVE_AVX2_TU)
    case Isa::avx2:
      return &detail::avx2_table();
#endif
#if defined(SLSPEC_HAVE_NEON_TU)
    case Isa::neon:
      return &detail::neon_table();
#endif
    default:
      return nullptr;
  }
}

const Table& select_active() noexcept {
  if (const char* env = std::getenv("SLSPEC_ISA")) {
    const std::string want(env);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (want == name(isa)) {
        if (const Table* t = lookup(isa)) return *t;
      }
    }
  }
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (const Table* t = lookup(isa)) return *t;
  }
  return detail::scalar_table();
}

const Table& active() noexcept {
  static const Table& t = select_active();
  return t;
}

}  // namespace

std::string_view name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool supported(Isa isa) noexcept { return lookup(isa) != nullptr; }

const Table& table(Isa isa) {
  if (const Table* t = lookup(isa)) return *t;
  throw Error(ErrorKind::domain,
              "kernel variant not available: " + std::string(name(isa)));
}

Isa active_isa() noexcept { return active().isa; }

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::dimension, "dot: length mismatch");
  return active().dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size())
    throw Error(ErrorKind::dimension, "axpy: length mismatch");
  active().axpy(alpha, x.data(), y.data(), x.size());
}

double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

}  // namespace slspec::kernels
