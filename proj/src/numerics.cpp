#include "slspec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slspec/error.hpp"
#include "slspec/kernels.hpp"

namespace slspec {

Grid::Grid(std::size_t n_points) : n_points_(n_points), spacing_(0.0) {
  if (n_points < kMinPoints)
    throw Error(ErrorKind::domain, "grid needs at least " + std::to_string(kMinPoints) +
                                       " points, got " + std::to_string(n_points));
  spacing_ = kPi / static_cast<double>(n_points - 1);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(n_points_);
  for (std::size_t i = 0; i < n_points_; ++i) x[i] = node(i);
  return x;
}

Potential::Potential(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw Error(ErrorKind::dimension, "potential: " + std::to_string(values_.size()) +
                                          " values for a grid of " +
                                          std::to_string(grid_.size()) + " points");
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw Error(ErrorKind::domain, "potential: non-finite value", static_cast<long long>(i));
  mean_ = quad_trapz(grid_, values_) / kPi;
  const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  min_ = *lo;
  max_ = *hi;
}

Potential Potential::from_function(Grid grid, const std::function<double(double)>& q) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = q(grid.node(i));
  return Potential(grid, std::move(v));
}

Potential Potential::zero(Grid grid) {
  return Potential(grid, std::vector<double>(grid.size(), 0.0));
}

double Potential::sup_deviation() const noexcept {
  return std::max(max_ - mean_, mean_ - min_);
}

double Potential::at(double x) const noexcept {
  const double h = grid_.spacing();
  if (x <= 0.0) return values_.front();
  if (x >= kPi) return values_.back();
  std::size_t i = static_cast<std::size_t>(x / h);
  if (i + 1 >= values_.size()) i = values_.size() - 2;
  const double frac = (x - grid_.node(i)) / h;
  return values_[i] + (values_[i + 1] - values_[i]) * frac;
}

Potential Potential::resampled(const Grid& target) const {
  std::vector<double> v(target.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = at(target.node(i));
  return Potential(target, std::move(v));
}

namespace {

constexpr double kOverflow = 1e250;
// Gauss-Legendre abscissae on [0, 1].
const double kGauss1 = 0.5 - std::sqrt(3.0) / 6.0;
const double kGauss2 = 0.5 + std::sqrt(3.0) / 6.0;
const double kCommutator = std::sqrt(3.0) / 12.0;

// One fourth-order Magnus step for Y' = [[0, 1], [f(x), 0]] Y, f = q - mu,
// with f1, f2 sampled at the two Gauss points of the (signed) step h.
inline void magnus_step(double f1, double f2, double h, double& y, double& dy) {
  const double a = kCommutator * h * h * (f1 - f2);
  const double d = 0.5 * h * (f1 + f2);
  const double s = a * a + h * d;  // Omega^2 = s * I
  double c = 1.0;
  double sinc = 1.0;
  if (s > 0.0) {
    const double r = std::sqrt(s);
    c = std::cosh(r);
    sinc = std::sinh(r) / r;
  } else if (s < 0.0) {
    const double r = std::sqrt(-s);
    c = std::cos(r);
    sinc = std::sin(r) / r;
  }
  const double ny = (c + sinc * a) * y + sinc * h * dy;
  const double ndy = sinc * d * y + (c - sinc * a) * dy;
  y = ny;
  dy = ndy;
}

// q inside cell [i, i+1] at local coordinate t in [0, 1]: cubic Lagrange
// interpolation through the four nearest nodes (shifted inward at the ends).
class CellCubic {
 public:
  CellCubic(std::span<const double> v, std::size_t cell) {
    const std::size_t n = v.size();
    std::size_t first = cell == 0 ? 0 : cell - 1;
    if (first + 3 >= n) first = n - 4;
    origin_ = static_cast<double>(first) - static_cast<double>(cell);
    for (int k = 0; k < 4; ++k) v_[k] = v[first + static_cast<std::size_t>(k)];
  }
  double operator()(double t) const noexcept {
    const double s = t - origin_;  // nodes at s = 0, 1, 2, 3
    const double a = s, b = s - 1.0, c = s - 2.0, d = s - 3.0;
    return -v_[0] * b * c * d / 6.0 + v_[1] * a * c * d / 2.0 - v_[2] * a * b * d / 2.0 +
           v_[3] * a * b * c / 6.0;
  }

 private:
  double origin_ = 0.0;
  double v_[4] = {};
};

// Walks the grid in the requested direction, calling visit(node, y, dy) at
// every node (including the start). Returns the number of interior sign
// changes of y.
template <class Visit>
std::size_t advance(const Potential& q, double mu, double y0, double dy0,
                    Direction direction, Visit&& visit) {
  const Grid& grid = q.grid();
  const std::size_t n = grid.size();
  const std::size_t m = substeps_per_cell(q, mu);
  const double cell = grid.spacing();
  const double h_abs = cell / static_cast<double>(m);
  const auto values = q.values();

  double y = y0;
  double dy = dy0;
  std::size_t zeros = 0;
  long long step = 0;
  const bool forward = direction == Direction::left_to_right;
  visit(forward ? 0 : n - 1, y, dy);

  for (std::size_t c = 0; c + 1 < n; ++c) {
    const std::size_t left = forward ? c : n - 2 - c;
    const CellCubic cubic(values, left);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < m; ++k, ++step) {
      const double km = static_cast<double>(k);
      double t1 = (km + kGauss1) * inv_m;
      double t2 = (km + kGauss2) * inv_m;
      double h = h_abs;
      if (!forward) {
        t1 = 1.0 - t1;
        t2 = 1.0 - t2;
        h = -h_abs;
      }
      const double f1 = cubic(t1) - mu;
      const double f2 = cubic(t2) - mu;
      const double prev = y;
      magnus_step(f1, f2, h, y, dy);
      if (!std::isfinite(y) || !std::isfinite(dy) || std::abs(y) > kOverflow ||
          std::abs(dy) > kOverflow)
        throw Error(ErrorKind::integration_overflow,
                    "integrate_ivp: solution overflow at step " + std::to_string(step) +
                        " (mu = " + std::to_string(mu) + ")",
                    step);
      const bool last = c + 2 == n && k + 1 == m;
      if (!last && ((prev > 0.0 && y <= 0.0) || (prev < 0.0 && y >= 0.0))) ++zeros;
      if (last && ((prev > 0.0 && y < 0.0) || (prev < 0.0 && y > 0.0))) ++zeros;
    }
    visit(forward ? c + 1 : n - 2 - c, y, dy);
  }
  return zeros;
}

}  // namespace

std::size_t substeps_per_cell(const Potential& q, double mu) noexcept {
  const double k2 = std::max({1.0, std::abs(mu), std::abs(mu - q.min()), std::abs(mu - q.max())});
  const double need = q.grid().spacing() * 4.0 * std::sqrt(k2);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(need)));
}

IvpSolution integrate_ivp(const Potential& q, double mu, double y0, double dy0,
                          Direction direction) {
  if (!std::isfinite(mu) || !std::isfinite(y0) || !std::isfinite(dy0))
    throw Error(ErrorKind::domain, "integrate_ivp: non-finite input");
  IvpSolution sol{q.grid(), std::vector<double>(q.grid().size()),
                  std::vector<double>(q.grid().size())};
  advance(q, mu, y0, dy0, direction, [&](std::size_t i, double y, double dy) {
    sol.y[i] = y;
    sol.dy[i] = dy;
  });
  return sol;
}

Shot shoot(const Potential& q, double mu, double y0, double dy0, Direction direction) {
  if (!std::isfinite(mu) || !std::isfinite(y0) || !std::isfinite(dy0))
    throw Error(ErrorKind::domain, "shoot: non-finite input");
  Shot shot;
  shot.zeros = advance(q, mu, y0, dy0, direction, [&](std::size_t, double y, double dy) {
    shot.y = y;
    shot.dy = dy;
  });
  return shot;
}

double quad_trapz(const Grid& grid, std::span<const double> values) {
  if (values.size() != grid.size())
    throw Error(ErrorKind::dimension, "quad_trapz: " + std::to_string(values.size()) +
                                          " values for a grid of " +
                                          std::to_string(grid.size()) + " points");
  const double total = kernels::sum(values);
  return grid.spacing() * (total - 0.5 * (values.front() + values.back()));
}

std::vector<double> cumulative_trapz(const Grid& grid, std::span<const double> values) {
  if (values.size() != grid.size())
    throw Error(ErrorKind::dimension, "cumulative_trapz: length mismatch");
  std::vector<double> out(values.size(), 0.0);
  const double half_h = 0.5 * grid.spacing();
  for (std::size_t i = 1; i < values.size(); ++i)
    out[i] = out[i - 1] + half_h * (values[i - 1] + values[i]);
  return out;
}

std::vector<double> diff_central(const Grid& grid, std::span<const double> values) {
  if (values.size() != grid.size() || values.size() < 3)
    throw Error(ErrorKind::dimension, "diff_central: need one value per grid node (>= 3)");
  const std::size_t n = values.size();
  const double h = grid.spacing();
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (values[i + 1] - values[i - 1]) / (2.0 * h);
  d[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h);
  d[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * h);
  return d;
}

double hurwitz_zeta(double s, double a) {
  if (!(s > 1.0) || !(a > 0.0))
    throw Error(ErrorKind::domain, "hurwitz_zeta: need s > 1 and a > 0");
  // Shift a upward until the Euler-Maclaurin remainder is negligible.
  double head = 0.0;
  while (a < 10.0 + s) {
    head += std::pow(a, -s);
    a += 1.0;
  }
  // B_2j / (2j)!
  static constexpr double kB[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0,
                                  -1.0 / 1209600.0, 1.0 / 47900160.0};
  double total = std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
  double rising = s;                  // s (s+1) ... (s+2j-2)
  double power = std::pow(a, -s - 1.0);  // a^(-s-2j+1)
  for (int j = 0; j < 5; ++j) {
    total += kB[j] * rising * power;
    rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    power /= a * a;
  }
  return head + total;
}

}  // namespace slspec
