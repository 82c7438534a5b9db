#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "slspec/numerics.hpp"

namespace slspec {

/// Boundary angles (alpha, beta), both strictly inside (0, pi):
/// y(0) cos(alpha) + y'(0) sin(alpha) = 0, y(pi) cos(beta) + y'(pi) sin(beta) = 0.
class BoundaryAngles {
 public:
  BoundaryAngles(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

 private:
  double alpha_;
  double beta_;
};

struct EigenRecord {
  std::size_t index = 0;
  double mu = 0.0;
  double lambda_abs = 0.0;         // |sqrt(mu)|
  bool lambda_imaginary = false;   // true when mu < 0
  double a_n = 0.0;
  double a_tilde = 0.0;
  double b_n = 0.0;
  double b_tilde = 0.0;
  double c_n = 0.0;
  double phi_end = 0.0;
  double dphi_end = 0.0;
};

/// Lowest eigenvalues of one problem with their norming data, indices 0..N-1.
class Spectrum {
 public:
  /// Checks contiguous indices and strictly increasing mu (malformed-data).
  Spectrum(BoundaryAngles angles, double q_mean, std::vector<EigenRecord> records);

  const BoundaryAngles& angles() const noexcept { return angles_; }
  double q_mean() const noexcept { return q_mean_; }
  const std::vector<EigenRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  const EigenRecord& operator[](std::size_t n) const { return records_.at(n); }

  std::vector<double> mus() const;
  std::vector<double> a_tildes() const;
  std::vector<double> b_tildes() const;

 private:
  BoundaryAngles angles_;
  double q_mean_;
  std::vector<EigenRecord> records_;
};

/// Phi(mu) = phi(pi) cos(beta) + phi'(pi) sin(beta).
double char_fn(const Potential& q, const BoundaryAngles& angles, double mu);

/// Psi(mu) = psi(0) cos(alpha) + psi'(0) sin(alpha); equals -Phi.
double psi_char_fn(const Potential& q, const BoundaryAngles& angles, double mu);

struct CountedShot {
  double phi = 0.0;            // Phi(mu)
  std::size_t below = 0;       // number of eigenvalues strictly below mu
};

/// Phi(mu) together with the oscillation count from the Pruefer angle of phi.
CountedShot eigen_count(const Potential& q, const BoundaryAngles& angles, double mu);

/// phi(x, mu) with phi(0) = sin(alpha), phi'(0) = -cos(alpha).
IvpSolution phi_solution(const Potential& q, const BoundaryAngles& angles, double mu);
/// psi(x, mu) with psi(pi) = sin(beta), psi'(pi) = -cos(beta).
IvpSolution psi_solution(const Potential& q, const BoundaryAngles& angles, double mu);

/// The `count` lowest eigenvalues with fully populated records.
Spectrum eigenvalues(const Potential& q, const BoundaryAngles& angles, std::size_t count);

/// (q(pi - x), (pi - beta, pi - alpha)).
std::pair<Potential, BoundaryAngles> reflect_problem(const Potential& q,
                                                     const BoundaryAngles& angles);

/// Trapezoidal integral of y^2 with the Euler-Maclaurin endpoint correction
/// built from the known derivative (fourth order).
double norm_squared(const IvpSolution& s);

}  // namespace slspec
