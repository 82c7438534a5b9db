#include "slspec/forward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "slspec/asymptotics.hpp"
#include "slspec/error.hpp"
#include "slspec/parallel.hpp"

namespace slspec {

BoundaryAngles::BoundaryAngles(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  auto inside = [](double a) { return std::isfinite(a) && a > 0.0 && a < kPi && std::sin(a) > 0.0; };
  if (!inside(alpha) || !inside(beta))
    throw Error(ErrorKind::domain, "boundary angles must lie in (0, pi), got alpha = " +
                                       std::to_string(alpha) + ", beta = " + std::to_string(beta));
}

Spectrum::Spectrum(BoundaryAngles angles, double q_mean, std::vector<EigenRecord> records)
    : angles_(angles), q_mean_(q_mean), records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].index != i)
      throw Error(ErrorKind::malformed_data, "spectrum: indices must run 0..N-1",
                  static_cast<long long>(i));
    if (i > 0 && !(records_[i].mu > records_[i - 1].mu))
      throw Error(ErrorKind::malformed_data, "spectrum: eigenvalues must strictly increase",
                  static_cast<long long>(i));
  }
}

std::vector<double> Spectrum::mus() const {
  std::vector<double> v;
  v.reserve(records_.size());
  for (const auto& r : records_) v.push_back(r.mu);
  return v;
}

std::vector<double> Spectrum::a_tildes() const {
  std::vector<double> v;
  v.reserve(records_.size());
  for (const auto& r : records_) v.push_back(r.a_tilde);
  return v;
}

std::vector<double> Spectrum::b_tildes() const {
  std::vector<double> v;
  v.reserve(records_.size());
  for (const auto& r : records_) v.push_back(r.b_tilde);
  return v;
}

namespace {

Shot shoot_phi(const Potential& q, const BoundaryAngles& angles, double mu) {
  return shoot(q, mu, std::sin(angles.alpha()), -std::cos(angles.alpha()),
               Direction::left_to_right);
}

double char_from(const Shot& s, const BoundaryAngles& angles) {
  return s.y * std::cos(angles.beta()) + s.dy * std::sin(angles.beta());
}

// theta + beta with theta = atan2(phi, phi') reduced to (0, pi] using the
// sign (-1)^k that phi has after k interior zeros. The full phase is
// k pi + theta + beta.
double reduced_phase(const Shot& s, const BoundaryAngles& angles) {
  const double sign = s.zeros % 2 == 0 ? 1.0 : -1.0;
  return std::atan2(sign * s.y, sign * s.dy) + angles.beta();
}

// Brent's method on a sign-changing bracket.
double brent(const std::function<double(double)>& f, double a, double b, double fa, double fb) {
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < 200; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(b));
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, qq;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        qq = 1.0 - s;
      } else {
        const double r = fb / fc;
        const double t = fa / fc;
        p = s * (2.0 * m * t * (t - r) - (b - a) * (r - 1.0));
        qq = (t - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) qq = -qq;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * qq - std::abs(tol * qq), std::abs(e * qq))) {
        e = d;
        d = p / qq;
      } else {
        d = m;
        e = d;
      }
    } else {
      d = m;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
  }
  return b;
}

double find_eigenvalue(const Potential& q, const BoundaryAngles& angles, std::size_t n) {
  const auto idx = static_cast<long long>(n);
  const double nd = static_cast<double>(n);
  double delta = 0.0;
  try {
    delta = solve_delta_n(angles, n);
  } catch (const Error&) {
    delta = 0.0;
  }
  const double spread = 2.0 * q.sup_deviation();
  const double center = (nd + delta) * (nd + delta) + q.mean();
  const double w0 = std::max(2.0, nd + 1.0) + spread;
  double w = w0;
  const double floor0 = q.mean() - spread - 1.0;

  double lo = 0.0, hi = 0.0;
  CountedShot clo, chi;
  bool found = false;
  for (int expansion = 0; expansion <= 8; ++expansion, w *= 2.0) {
    lo = center - w;
    hi = center + w;
    if (n == 0) lo = std::min(lo, floor0 - (w - w0));
    clo = eigen_count(q, angles, lo);
    chi = eigen_count(q, angles, hi);
    if (clo.below <= n && chi.below > n) {
      found = true;
      break;
    }
  }
  if (!found)
    throw Error(ErrorKind::missing_eigenvalue,
                "no bracket for eigenvalue " + std::to_string(n) + " after 8 expansions", idx);

  // Shrink until the bracket isolates exactly this eigenvalue.
  while (!(clo.below == n && chi.below == n + 1)) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi) || hi - lo < 1e-13 * (1.0 + std::abs(mid)))
      throw Error(ErrorKind::degenerate_root,
                  "eigenvalues " + std::to_string(n) + " and its neighbour cannot be separated",
                  idx);
    const CountedShot cm = eigen_count(q, angles, mid);
    if (cm.below <= n) {
      lo = mid;
      clo = cm;
    } else {
      hi = mid;
      chi = cm;
    }
  }
  // Refine on the Pruefer phase rather than on Phi: it is increasing in mu and
  // crosses (n + 1) pi only at mu_n, so an end sitting on a neighbouring
  // eigenvalue cannot capture the iteration.
  auto f = [&](double mu) {
    const Shot s = shoot_phi(q, angles, mu);
    return (static_cast<double>(s.zeros) - nd) * kPi + (reduced_phase(s, angles) - kPi);
  };
  const double flo = f(lo);
  if (flo == 0.0) return lo;
  const double fhi = f(hi);
  if (!(flo < 0.0 && fhi > 0.0))
    throw Error(ErrorKind::degenerate_root,
                "phase does not cross at eigenvalue " + std::to_string(n), idx);
  return brent(f, lo, hi, flo, fhi);
}

EigenRecord make_record(const Potential& q, const BoundaryAngles& angles, std::size_t n,
                        double mu) {
  EigenRecord r;
  r.index = n;
  r.mu = mu;
  r.lambda_abs = std::sqrt(std::abs(mu));
  r.lambda_imaginary = mu < 0.0;
  const IvpSolution phi = phi_solution(q, angles, mu);
  const IvpSolution psi = psi_solution(q, angles, mu);
  const double sa = std::sin(angles.alpha());
  const double sb = std::sin(angles.beta());
  r.a_n = norm_squared(phi);
  r.b_n = norm_squared(psi);
  r.a_tilde = r.a_n / (sa * sa);
  r.b_tilde = r.b_n / (sb * sb);
  std::size_t arg = 0;
  for (std::size_t i = 1; i < psi.y.size(); ++i)
    if (std::abs(psi.y[i]) > std::abs(psi.y[arg])) arg = i;
  r.c_n = phi.y[arg] / psi.y[arg];
  r.phi_end = phi.y.back();
  r.dphi_end = phi.dy.back();
  return r;
}

}  // namespace

double norm_squared(const IvpSolution& s) {
  const std::size_t last = s.y.size() - 1;
  std::vector<double> sq(s.y.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = s.y[i] * s.y[i];
  const double h = s.grid.spacing();
  const double d_end = 2.0 * s.y[last] * s.dy[last];
  const double d_start = 2.0 * s.y[0] * s.dy[0];
  return quad_trapz(s.grid, sq) - h * h / 12.0 * (d_end - d_start);
}

double char_fn(const Potential& q, const BoundaryAngles& angles, double mu) {
  return char_from(shoot_phi(q, angles, mu), angles);
}

double psi_char_fn(const Potential& q, const BoundaryAngles& angles, double mu) {
  const Shot s = shoot(q, mu, std::sin(angles.beta()), -std::cos(angles.beta()),
                       Direction::right_to_left);
  return s.y * std::cos(angles.alpha()) + s.dy * std::sin(angles.alpha());
}

CountedShot eigen_count(const Potential& q, const BoundaryAngles& angles, double mu) {
  const Shot s = shoot_phi(q, angles, mu);
  CountedShot out;
  out.phi = char_from(s, angles);
  out.below = s.zeros + (reduced_phase(s, angles) > kPi ? 1 : 0);
  return out;
}

IvpSolution phi_solution(const Potential& q, const BoundaryAngles& angles, double mu) {
  return integrate_ivp(q, mu, std::sin(angles.alpha()), -std::cos(angles.alpha()),
                       Direction::left_to_right);
}

IvpSolution psi_solution(const Potential& q, const BoundaryAngles& angles, double mu) {
  return integrate_ivp(q, mu, std::sin(angles.beta()), -std::cos(angles.beta()),
                       Direction::right_to_left);
}

Spectrum eigenvalues(const Potential& q, const BoundaryAngles& angles, std::size_t count) {
  if (count == 0) throw Error(ErrorKind::domain, "eigenvalues: count must be at least 1");
  std::vector<EigenRecord> records(count);
  parallel_for(count, [&](std::size_t n) {
    records[n] = make_record(q, angles, n, find_eigenvalue(q, angles, n));
  });
  return Spectrum(angles, q.mean(), std::move(records));
}

std::pair<Potential, BoundaryAngles> reflect_problem(const Potential& q,
                                                     const BoundaryAngles& angles) {
  const auto v = q.values();
  std::vector<double> r(v.rbegin(), v.rend());
  return {Potential(q.grid(), std::move(r)),
          BoundaryAngles(kPi - angles.beta(), kPi - angles.alpha())};
}

}  // namespace slspec
