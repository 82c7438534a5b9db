#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace slspec {

inline constexpr double kPi = std::numbers::pi;

/// Uniform grid on [0, pi]; node i sits at i * spacing, the last node at pi.
class Grid {
 public:
  static constexpr std::size_t kMinPoints = 33;
  static constexpr std::size_t kDefaultPoints = 2049;

  explicit Grid(std::size_t n_points = kDefaultPoints);

  std::size_t size() const noexcept { return n_points_; }
  double spacing() const noexcept { return spacing_; }
  double node(std::size_t i) const noexcept {
    return i + 1 == n_points_ ? kPi : static_cast<double>(i) * spacing_;
  }
  std::vector<double> nodes() const;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.n_points_ == b.n_points_;
  }

 private:
  std::size_t n_points_;
  double spacing_;
};

/// Potential q sampled on a grid. Values are in units of mu (inverse length
/// squared). `at` and `resampled` interpolate linearly; the integrator uses
/// cubic interpolation through the four nearest nodes.
class Potential {
 public:
  Potential(Grid grid, std::vector<double> values);

  static Potential from_function(Grid grid, const std::function<double(double)>& q);
  static Potential zero(Grid grid = Grid{});

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  /// [q] = (1/pi) * trapezoid integral of q.
  double mean() const noexcept { return mean_; }
  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }
  /// sup |q - [q]|
  double sup_deviation() const noexcept;

  /// Linear interpolation; x is clamped to [0, pi].
  double at(double x) const noexcept;

  /// Same function on another grid (linear interpolation).
  Potential resampled(const Grid& target) const;

 private:
  Grid grid_;
  std::vector<double> values_;
  double mean_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

enum class Direction { left_to_right, right_to_left };

/// Solution values y and derivatives dy on every node of the grid.
struct IvpSolution {
  Grid grid;
  std::vector<double> y;
  std::vector<double> dy;
};

/// Solves -y'' + q y = mu y with Cauchy data (y0, dy0) at x = 0
/// (left_to_right) or x = pi (right_to_left). Each grid cell is split into
/// equal substeps so that h <= 1 / (4 sqrt(max(|mu|, |mu - q|, 1))) and advanced
/// with the fourth-order Magnus integrator (exact 2x2 exponential), q taken
/// at the two Gauss points of each substep.
/// Throws Error(integration_overflow) naming the step index if the solution
/// becomes non-finite or exceeds 1e250.
IvpSolution integrate_ivp(const Potential& q, double mu, double y0, double dy0,
                          Direction direction);

/// Endpoint state plus the number of sign changes of y strictly inside (0, pi).
struct Shot {
  double y = 0.0;
  double dy = 0.0;
  std::size_t zeros = 0;
};

/// Same integrator as integrate_ivp but keeps only the far endpoint.
Shot shoot(const Potential& q, double mu, double y0, double dy0, Direction direction);

/// Number of substeps per grid cell used by the integrator at this mu.
std::size_t substeps_per_cell(const Potential& q, double mu) noexcept;

/// Composite trapezoidal rule over [0, pi].
double quad_trapz(const Grid& grid, std::span<const double> values);

/// Running trapezoidal integral from 0 to every node.
std::vector<double> cumulative_trapz(const Grid& grid, std::span<const double> values);

/// Central differences inside, second-order one-sided at the ends.
std::vector<double> diff_central(const Grid& grid, std::span<const double> values);

/// Hurwitz zeta sum_{k>=0} (a + k)^(-s) for s > 1, a > 0.
double hurwitz_zeta(double s, double a);

}  // namespace slspec
