#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "slspec/numerics.hpp"
#include "slspec/spectral_data.hpp"

namespace slspec {

/// Kernel values on the grid triangle t_j <= x_i, packed row by row.
/// Symmetric kernels (F) answer at(i, j) for j > i by symmetry.
class TriangularKernel {
 public:
  TriangularKernel(Grid grid, bool symmetric);

  const Grid& grid() const noexcept { return grid_; }
  bool symmetric() const noexcept { return symmetric_; }

  double at(std::size_t i, std::size_t j) const;
  double& ref(std::size_t i, std::size_t j) noexcept { return values_[offset(i) + j]; }
  /// Row i, entries j = 0..i.
  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + offset(i), i + 1};
  }
  std::span<double> row(std::size_t i) noexcept { return {values_.data() + offset(i), i + 1}; }
  std::vector<double> diagonal() const;

 private:
  static std::size_t offset(std::size_t i) noexcept { return i * (i + 1) / 2; }
  Grid grid_;
  bool symmetric_;
  std::vector<double> values_;
};

struct FOptions {
  /// Modes taken from the data; 0 means all of them.
  std::size_t n_modes = 0;
  /// Sum the asymptotic head n + omega/n, 2/pi + eta/n^2 over all n >= 1 in
  /// closed form. When false the series is cut at n_modes, synthesizing
  /// missing modes from the tail model with zero residuals.
  bool analytic_tail = true;
};

/// F(x, t) = sum_n [cos(l_n x) cos(l_n t) / a~_n - cos(nx) cos(nt) / a0_n],
/// a0_0 = pi, a0_n = pi/2; cos(l x) becomes cosh(|l| x) for mu < 0.
TriangularKernel build_F(const SpectralData& data, const Grid& grid, const FOptions& options = {});

struct GlSolution {
  TriangularKernel G;
  double condition_max = 0.0;  // sampled 1-norm condition estimate
};

/// Nystroem solution of G(x,t) + F(x,t) + int_0^x G(x,s) F(s,t) ds = 0 with
/// trapezoidal weights, one symmetric system per node x_i solved by a
/// bordered Cholesky factorization that is extended row by row.
/// Throws unsolvable-GL when a system is not positive definite or its
/// condition estimate exceeds 1e12.
GlSolution solve_GL(const TriangularKernel& F);

/// Closed-form sums H_j(u) = sum_{n>=1} n^-j [cos((n + omega/n) u) - [j == 0] cos(nu)]
/// for j in {0, 2} and 0 <= u <= 2 pi (continuous from the left at 2 pi).
double head_sum(int j, double omega, double u);

struct ReconstructOptions {
  FOptions f;
  bool smooth_diag = false;
  std::size_t beta_modes = 8;
};

struct Reconstruction {
  Potential q_hat;
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  double beta_consistency = 0.0;
  std::vector<double> beta_ratios;  // phi~'(pi) / phi~(pi) per mode
  std::vector<double> diag;
  double gl_condition_max = 0.0;
  TriangularKernel G;
};

Reconstruction reconstruct(const SpectralData& data, const Grid& grid,
                           const ReconstructOptions& options = {});

/// phi~(x_i) = cos(l x_i) + int_0^{x_i} G(x_i, t) cos(l t) dt, l^2 = mu.
std::vector<double> transform_solution(const TriangularKernel& G, double mu);

/// 5-point quadratic least-squares smoothing; the two nodes at each end are kept.
std::vector<double> smooth5(std::span<const double> v);

}  // namespace slspec
