#include "slspec/kernels.hpp"

namespace slspec::kernels::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

constexpr Table kScalar{Isa::scalar, dot_scalar, axpy_scalar, sum_scalar};

}  // namespace

const Table& scalar_table() noexcept { return kScalar; }

}  // namespace slspec::kernels::detail
