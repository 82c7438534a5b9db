#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "slspec/forward.hpp"

namespace slspec {

/// Root of delta = (1/pi) [acos(cos a / r_a) - acos(cos b / r_b)],
/// r_x = sqrt((n + delta)^2 sin^2 x + cos^2 x). Fixed point from 0; for n = 0
/// falls back to bisection on (-0.9, 0.9).
double solve_delta_n(const BoundaryAngles& angles, std::size_t n);

/// Large-n model lambda_n = n + omega/n + omega_n/n, a~_n = pi/2 + kappa_n/n.
/// Arrays are indexed by n; entries that do not enter the fit (n = 0 and any
/// negative mu) are zero.
struct AsymptoticModel {
  std::size_t n_records = 0;
  double omega = 0.0;
  /// Mean of n^2 (1/a~_n - 2/pi) over the last half; used to model 1/a~_n.
  double eta = 0.0;
  std::vector<double> omega_resid;
  std::vector<double> kappa_resid;
  std::vector<double> omega_l2_partial;
  std::vector<double> kappa_l2_partial;

  // Only when angles and [q] are known.
  std::optional<double> q_mean;
  std::optional<double> omega_formula;  // (cot b - cot a + (pi/2)[q]) / pi
  std::vector<double> delta;
  std::vector<double> l_terms;          // lambda_n - n - delta_n - [q]/(2(n + delta_n))
};

/// Needs at least 16 eigenvalues (insufficient-data otherwise).
AsymptoticModel fit_asymptotics(std::span<const double> mus, std::span<const double> a_tildes);
AsymptoticModel fit_asymptotics(const Spectrum& spectrum);

/// mus extended to length `length` with (k + omega/k)^2 for k >= mus.size().
std::vector<double> complete_eigenvalues(std::span<const double> mus,
                                         const AsymptoticModel& model, std::size_t length);

}  // namespace slspec
