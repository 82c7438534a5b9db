#include "slspec/gelfand_levitan.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "slspec/error.hpp"
#include "slspec/kernels.hpp"
#include "slspec/parallel.hpp"

namespace slspec {

TriangularKernel::TriangularKernel(Grid grid, bool symmetric)
    : grid_(grid), symmetric_(symmetric), values_(offset(grid.size()), 0.0) {}

double TriangularKernel::at(std::size_t i, std::size_t j) const {
  if (j > i) {
    if (!symmetric_)
      throw Error(ErrorKind::domain, "kernel is defined only for t <= x");
    std::swap(i, j);
  }
  if (i >= grid_.size()) throw Error(ErrorKind::dimension, "kernel index out of range");
  return values_[offset(i) + j];
}

std::vector<double> TriangularKernel::diagonal() const {
  std::vector<double> d(grid_.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = values_[offset(i) + i];
  return d;
}

namespace {

// Bernoulli polynomial B_p(x), 1 <= p <= 8.
double bernoulli(int p, double x) {
  const double x2 = x * x;
  switch (p) {
    case 1: return x - 0.5;
    case 2: return x2 - x + 1.0 / 6.0;
    case 3: return x * (x2 - 1.5 * x + 0.5);
    case 4: return x2 * (x2 - 2.0 * x + 1.0) - 1.0 / 30.0;
    case 5: return x * (x2 * (x2 - 2.5 * x + 5.0 / 3.0) - 1.0 / 6.0);
    case 6: return x2 * (x2 * (x2 - 3.0 * x + 2.5) - 0.5) + 1.0 / 42.0;
    case 7: return x * (x2 * (x2 * (x2 - 3.5 * x + 3.5) - 7.0 / 6.0) + 1.0 / 6.0);
    case 8: return x2 * (x2 * (x2 * (x2 - 4.0 * x + 14.0 / 3.0) - 7.0 / 3.0) + 2.0 / 3.0) - 1.0 / 30.0;
    default: return 0.0;
  }
}

// sum_{n>=1} cos(nu)/n^p for even p, sin(nu)/n^p for odd p, 0 <= u <= 2 pi.
double clausen_closed(int p, double u) {
  // (-1)^(m-1) with m = floor(p/2)
  const double sgn = (p / 2) % 2 == 1 ? 1.0 : -1.0;
  double fact = 1.0;
  for (int k = 2; k <= p; ++k) fact *= k;
  const double two_pi = 2.0 * kPi;
  return sgn * std::pow(two_pi, p) * bernoulli(p, u / two_pi) / (2.0 * fact);
}

// sum_{n>=n0} trig(nu)/n^p, trig = cos for even p and sin for odd p.
double trig_tail(int p, double u, int n0) {
  const bool even = p % 2 == 0;
  double s = 0.0;
  if (p <= 8) {
    s = clausen_closed(p, u);
    for (int n = 1; n < n0; ++n) {
      const double nd = n;
      s -= (even ? std::cos(nd * u) : std::sin(nd * u)) / std::pow(nd, p);
    }
  } else {
    for (int n = n0; n < n0 + 80; ++n) {
      const double nd = n;
      s += (even ? std::cos(nd * u) : std::sin(nd * u)) / std::pow(nd, p);
    }
  }
  return s;
}

// Tabulates head_sum(j, omega, m h) for m = 0 .. count - 1.
std::vector<double> head_table(int j, double omega, double h, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t m = 0; m < count; ++m)
    out[m] = head_sum(j, omega, std::min(2.0 * kPi, static_cast<double>(m) * h));
  return out;
}

}  // namespace

double head_sum(int j, double omega, double u) {
  if (j != 0 && j != 2) throw Error(ErrorKind::domain, "head_sum: j must be 0 or 2");
  // Modes below n0 are summed directly so that |omega u / n| <= 1/2 in the
  // Taylor expansion of the rest.
  const int n0 = std::max(1, static_cast<int>(std::ceil(2.0 * std::abs(omega) * 2.0 * kPi)));
  double s = 0.0;
  for (int n = 1; n < n0; ++n) {
    const double nd = n;
    const double v = std::cos((nd + omega / nd) * u) - (j == 0 ? std::cos(nd * u) : 0.0);
    s += v / std::pow(nd, j);
  }
  // cos(nu + wu/n) = sum_k (wu/n)^k / k! cos(nu + k pi/2)
  const double wu = omega * u;
  double coef = 1.0;  // (wu)^k / k!
  for (int k = 0; k < 80; ++k) {
    if (k > 0) coef *= wu / k;
    if (k == 0 && j == 0) continue;
    if (coef == 0.0) break;
    const int p = k + j;
    const double t = trig_tail(p, u, n0);
    static constexpr std::array<double, 4> kSign = {1.0, -1.0, -1.0, 1.0};
    s += coef * kSign[k % 4] * t;
    if (k > 2 && std::abs(coef) * std::pow(static_cast<double>(n0), -p) * (n0 + 1.0) < 1e-18) break;
  }
  return s;
}

TriangularKernel build_F(const SpectralData& data, const Grid& grid, const FOptions& options) {
  const std::size_t N = data.size();
  const std::size_t modes = options.n_modes == 0 ? N : options.n_modes;
  std::optional<AsymptoticModel> tail = data.tail();
  if (!tail && N >= 16) tail = fit_asymptotics(data.mus(), data.a_tildes());
  if (!options.analytic_tail && modes > N && !tail)
    throw Error(ErrorKind::completion,
                "build_F: " + std::to_string(modes) + " modes requested but only " +
                    std::to_string(N) + " supplied and no tail model");
  const double omega = tail ? tail->omega : 0.0;
  const double eta = tail ? tail->eta : 0.0;

  const std::size_t ng = grid.size();
  const auto x = grid.nodes();
  TriangularKernel F(grid, true);
  std::vector<double> c(ng);

  auto cos_vec = [&](double mu) {
    if (mu >= 0.0) {
      const double l = std::sqrt(mu);
      for (std::size_t i = 0; i < ng; ++i) c[i] = std::cos(l * x[i]);
    } else {
      const double l = std::sqrt(-mu);
      for (std::size_t i = 0; i < ng; ++i) c[i] = std::cosh(l * x[i]);
    }
  };
  auto add_outer = [&](double weight) {
    for (std::size_t i = 0; i < ng; ++i)
      kernels::axpy(weight * c[i], std::span<const double>(c.data(), i + 1), F.row(i));
  };

  if (options.analytic_tail) {
    const std::size_t explicit_modes = std::min(modes, N);
    for (std::size_t n = 0; n < explicit_modes; ++n) {
      cos_vec(data.mus()[n]);
      add_outer(1.0 / data.a_tildes()[n]);
      if (n == 0) continue;
      const double nd = static_cast<double>(n);
      const double lam = nd + omega / nd;
      cos_vec(lam * lam);
      add_outer(-(2.0 / kPi + eta / (nd * nd)));
    }
    const double h = grid.spacing();
    const std::size_t count = 2 * ng - 1;
    const auto h0 = head_table(0, omega, h, count);
    const auto h2 = head_table(2, omega, h, count);
    for (std::size_t i = 0; i < ng; ++i) {
      auto row = F.row(i);
      for (std::size_t j = 0; j <= i; ++j)
        row[j] += -1.0 / kPi + (h0[i + j] + h0[i - j]) / kPi + 0.5 * eta * (h2[i + j] + h2[i - j]);
    }
    return F;
  }

  for (std::size_t n = 0; n < modes; ++n) {
    const double nd = static_cast<double>(n);
    if (n < N) {
      cos_vec(data.mus()[n]);
      add_outer(1.0 / data.a_tildes()[n]);
    } else {
      const double lam = nd + omega / nd;
      cos_vec(lam * lam);
      add_outer(2.0 / kPi);
    }
    cos_vec(nd * nd);
    add_outer(n == 0 ? -1.0 / kPi : -2.0 / kPi);
  }
  return F;
}

GlSolution solve_GL(const TriangularKernel& F) {
  const Grid& grid = F.grid();
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  const double sh2 = std::sqrt(0.5 * h);
  const double sh = std::sqrt(h);
  auto sqrt_w = [&](std::size_t j) { return j == 0 ? sh2 : sh; };

  for (std::size_t i = 0; i < n; ++i)
    for (double v : F.row(i))
      if (!std::isfinite(v)) throw Error(ErrorKind::unsolvable_gl, "F has non-finite entries");

  // L factors Q_i = I + D F D on nodes 0..i-1 with interior weights; row i
  // holds sqrt(2) l_i followed by the new pivot, so every prefix stays valid.
  TriangularKernel L(grid, false);
  std::vector<double> dsq(n, 0.0);
  {
    const double p0 = 1.0 + 0.5 * h * F.at(0, 0);
    if (!(p0 > 0.0)) throw Error(ErrorKind::unsolvable_gl, "Gelfand-Levitan system not positive definite", 0);
    L.ref(0, 0) = std::sqrt(p0);
  }
  for (std::size_t i = 1; i < n; ++i) {
    auto li = L.row(i);
    const auto fi = F.row(i);
    for (std::size_t k = 0; k < i; ++k) {
      const double m = sqrt_w(k) * sh2 * fi[k];
      const auto lk = L.row(k);
      const double s = kernels::dot(lk.first(k), std::span<const double>(li.data(), k));
      li[k] = (m - s) / lk[k];
    }
    const double ll = kernels::dot(li.first(i), li.first(i));
    const double fii = fi[i];
    dsq[i] = 1.0 + 0.5 * h * fii - ll;
    if (!(dsq[i] > 0.0))
      throw Error(ErrorKind::unsolvable_gl,
                  "Gelfand-Levitan system not positive definite at node " + std::to_string(i),
                  static_cast<long long>(i));
    const double ext = 1.0 + h * fii - 2.0 * ll;
    if (i + 1 < n && !(ext > 0.0))
      throw Error(ErrorKind::unsolvable_gl,
                  "Gelfand-Levitan system not positive definite at node " + std::to_string(i),
                  static_cast<long long>(i));
    for (std::size_t k = 0; k < i; ++k) li[k] *= std::sqrt(2.0);
    li[i] = ext > 0.0 ? std::sqrt(ext) : 0.0;
  }

  GlSolution out{TriangularKernel(grid, false), 0.0};
  out.G.ref(0, 0) = -F.at(0, 0);

  // Solves P_i x = b in place, P_i = [[Q_i, m], [m^T, 1 + (h/2) F_ii]].
  auto solve_p = [&](std::size_t i, std::span<const double> ell, double d, std::span<double> b) {
    for (std::size_t k = 0; k < i; ++k) {
      const auto lk = L.row(k);
      b[k] = (b[k] - kernels::dot(lk.first(k), b.first(k))) / lk[k];
    }
    b[i] = (b[i] - kernels::dot(ell, b.first(i))) / d;
    b[i] /= d;
    kernels::axpy(-b[i], ell, b.first(i));
    for (std::size_t k = i; k-- > 0;) {
      const auto lk = L.row(k);
      b[k] /= lk[k];
      kernels::axpy(-b[k], lk.first(k), b.first(k));
    }
  };

  const std::size_t stride = 64;
  std::vector<double> cond(n, 0.0);
  parallel_for(n - 1, [&](std::size_t r) {
    const std::size_t i = r + 1;
    std::vector<double> ell(L.row(i).begin(), L.row(i).begin() + static_cast<std::ptrdiff_t>(i));
    for (double& v : ell) v /= std::sqrt(2.0);
    const double ll = kernels::dot(ell, ell);
    const double d = std::sqrt(dsq[i]);
    const double fii = F.row(i)[i];
    const double zi = (-sh2 * fii + ll / sh2) / (d * d);
    std::vector<double> v = ell;
    for (std::size_t k = i; k-- > 0;) {
      const auto lk = L.row(k);
      v[k] /= lk[k];
      kernels::axpy(-v[k], lk.first(k), std::span<double>(v.data(), k));
    }
    auto gi = out.G.row(i);
    const double scale = -(1.0 / sh2 + zi);
    for (std::size_t j = 0; j < i; ++j) gi[j] = scale * v[j] / sqrt_w(j);
    gi[i] = zi / sh2;

    if (i % stride != 0 && i + 1 != n) return;
    // Hager's estimate of ||P_i^-1||_1 times ||P_i||_1.
    const std::size_t dim = i + 1;
    auto wroot = [&](std::size_t j) { return j == i ? sh2 : sqrt_w(j); };
    double norm1 = 0.0;
    for (std::size_t col = 0; col < dim; ++col) {
      double s = 0.0;
      for (std::size_t rr = 0; rr < dim; ++rr) {
        const double fv = rr >= col ? F.row(rr)[col] : F.row(col)[rr];
        s += std::abs((rr == col ? 1.0 : 0.0) + wroot(rr) * wroot(col) * fv);
      }
      norm1 = std::max(norm1, s);
    }
    std::vector<double> xv(dim, 1.0 / static_cast<double>(dim)), y(dim), z(dim);
    double est = 0.0;
    for (int it = 0; it < 5; ++it) {
      y = xv;
      solve_p(i, ell, d, y);
      est = 0.0;
      for (double t : y) est += std::abs(t);
      for (std::size_t k = 0; k < dim; ++k) z[k] = y[k] >= 0.0 ? 1.0 : -1.0;
      solve_p(i, ell, d, z);
      std::size_t jmax = 0;
      double zx = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        zx += z[k] * xv[k];
        if (std::abs(z[k]) > std::abs(z[jmax])) jmax = k;
      }
      if (std::abs(z[jmax]) <= zx) break;
      std::fill(xv.begin(), xv.end(), 0.0);
      xv[jmax] = 1.0;
    }
    cond[i] = norm1 * est;
  });
  out.condition_max = *std::max_element(cond.begin(), cond.end());
  if (!(out.condition_max <= 1e12))
    throw Error(ErrorKind::unsolvable_gl,
                "Gelfand-Levitan system condition estimate " + std::to_string(out.condition_max) +
                    " exceeds 1e12");
  return out;
}

std::vector<double> smooth5(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  for (std::size_t i = 2; i + 2 < v.size(); ++i)
    out[i] = (-3.0 * v[i - 2] + 12.0 * v[i - 1] + 17.0 * v[i] + 12.0 * v[i + 1] - 3.0 * v[i + 2]) / 35.0;
  return out;
}

std::vector<double> transform_solution(const TriangularKernel& G, double mu) {
  const Grid& grid = G.grid();
  const auto x = grid.nodes();
  const std::size_t ng = grid.size();
  std::vector<double> c(ng);
  const double l = std::sqrt(std::abs(mu));
  for (std::size_t i = 0; i < ng; ++i) c[i] = mu >= 0.0 ? std::cos(l * x[i]) : std::cosh(l * x[i]);
  std::vector<double> out(ng);
  const double h = grid.spacing();
  for (std::size_t i = 0; i < ng; ++i) {
    const auto g = G.row(i);
    double s = kernels::dot(g, std::span<const double>(c.data(), i + 1));
    s -= 0.5 * (g[0] * c[0] + g[i] * c[i]);
    out[i] = c[i] + (i == 0 ? 0.0 : h * s);
  }
  return out;
}

Reconstruction reconstruct(const SpectralData& data, const Grid& grid,
                           const ReconstructOptions& options) {
  const TriangularKernel F = build_F(data, grid, options.f);
  GlSolution gl = solve_GL(F);
  std::vector<double> diag = gl.G.diagonal();
  std::vector<double> qv = diff_central(grid, diag);
  for (double& v : qv) v *= 2.0;
  if (options.smooth_diag) qv = smooth5(qv);
  Potential q_hat(grid, std::move(qv));

  const double g00 = diag[0];
  const double alpha_hat = std::atan2(1.0, -g00);

  const std::size_t modes = std::min(options.beta_modes, data.size());
  std::vector<double> ratios;
  for (std::size_t n = 0; n < modes; ++n) {
    const Shot s = shoot(q_hat, data.mus()[n], 1.0, g00, Direction::left_to_right);
    if (std::abs(s.y) < 1e-10)
      throw Error(ErrorKind::endpoint_degeneracy,
                  "reconstructed solution vanishes at pi for mode " + std::to_string(n),
                  static_cast<long long>(n));
    ratios.push_back(s.dy / s.y);
  }
  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  double var = 0.0;
  for (double r : ratios) var += (r - mean) * (r - mean);
  var /= static_cast<double>(ratios.size());

  return Reconstruction{std::move(q_hat),
                        alpha_hat,
                        std::atan2(1.0, -mean),
                        std::sqrt(var),
                        std::move(ratios),
                        std::move(diag),
                        gl.condition_max,
                        std::move(gl.G)};
}

}  // namespace slspec
