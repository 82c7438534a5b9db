#include "slspec/asymptotics.hpp"

#include <cmath>
#include <string>

#include "slspec/error.hpp"

namespace slspec {

namespace {

double delta_rhs(const BoundaryAngles& angles, double nd, double delta) {
  auto term = [&](double x) {
    const double s = (nd + delta) * std::sin(x);
    const double c = std::cos(x);
    return std::acos(c / std::sqrt(s * s + c * c));
  };
  return (term(angles.alpha()) - term(angles.beta())) / kPi;
}

}  // namespace

double solve_delta_n(const BoundaryAngles& angles, std::size_t n) {
  if (angles.alpha() == angles.beta()) return 0.0;
  const double nd = static_cast<double>(n);
  double delta = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double next = delta_rhs(angles, nd, delta);
    if (!std::isfinite(next)) break;
    if (std::abs(next - delta) < 1e-12) return next;
    delta = next;
  }
  if (n != 0)
    throw Error(ErrorKind::iteration_failure,
                "delta_n fixed point did not converge for n = " + std::to_string(n),
                static_cast<long long>(n));
  auto resid = [&](double d) { return delta_rhs(angles, nd, d) - d; };
  double lo = -0.9, hi = 0.9;
  double flo = resid(lo);
  if ((flo > 0.0) == (resid(hi) > 0.0))
    throw Error(ErrorKind::iteration_failure, "delta_0 has no root in (-0.9, 0.9)", 0);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = resid(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

AsymptoticModel fit_asymptotics(std::span<const double> mus, std::span<const double> a_tildes) {
  const std::size_t n_rec = mus.size();
  if (a_tildes.size() != n_rec)
    throw Error(ErrorKind::dimension, "fit_asymptotics: mus and a_tildes differ in length");
  if (n_rec < 16)
    throw Error(ErrorKind::insufficient_data,
                "fit_asymptotics needs at least 16 eigenvalues, got " + std::to_string(n_rec));

  AsymptoticModel m;
  m.n_records = n_rec;
  std::vector<double> raw(n_rec, 0.0);
  std::vector<bool> usable(n_rec, false);
  for (std::size_t n = 1; n < n_rec; ++n) {
    if (mus[n] < 0.0) continue;
    const double nd = static_cast<double>(n);
    raw[n] = nd * (std::sqrt(mus[n]) - nd);
    usable[n] = true;
  }
  double acc = 0.0, acc_eta = 0.0;
  std::size_t used = 0, used_eta = 0;
  for (std::size_t n = n_rec / 2; n < n_rec; ++n) {
    const double nd = static_cast<double>(n);
    if (n == 0) continue;
    if (usable[n]) {
      acc += raw[n];
      ++used;
    }
    acc_eta += nd * nd * (1.0 / a_tildes[n] - 2.0 / kPi);
    ++used_eta;
  }
  if (used == 0)
    throw Error(ErrorKind::insufficient_data, "fit_asymptotics: no usable eigenvalues");
  m.omega = acc / static_cast<double>(used);
  m.eta = acc_eta / static_cast<double>(used_eta);

  m.omega_resid.assign(n_rec, 0.0);
  m.kappa_resid.assign(n_rec, 0.0);
  m.omega_l2_partial.assign(n_rec, 0.0);
  m.kappa_l2_partial.assign(n_rec, 0.0);
  double so = 0.0, sk = 0.0;
  for (std::size_t n = 1; n < n_rec; ++n) {
    const double nd = static_cast<double>(n);
    if (usable[n]) m.omega_resid[n] = raw[n] - m.omega;
    m.kappa_resid[n] = nd * (a_tildes[n] - kPi / 2.0);
    so += m.omega_resid[n] * m.omega_resid[n];
    sk += m.kappa_resid[n] * m.kappa_resid[n];
    m.omega_l2_partial[n] = std::sqrt(so);
    m.kappa_l2_partial[n] = std::sqrt(sk);
  }
  return m;
}

AsymptoticModel fit_asymptotics(const Spectrum& spectrum) {
  const auto mus = spectrum.mus();
  AsymptoticModel m = fit_asymptotics(mus, spectrum.a_tildes());
  const auto& ang = spectrum.angles();
  const double qm = spectrum.q_mean();
  m.q_mean = qm;
  m.omega_formula = (1.0 / std::tan(ang.beta()) - 1.0 / std::tan(ang.alpha()) + kPi / 2.0 * qm) / kPi;
  m.delta.assign(mus.size(), 0.0);
  m.l_terms.assign(mus.size(), 0.0);
  for (std::size_t n = 0; n < mus.size(); ++n) {
    double d = 0.0;
    try {
      d = solve_delta_n(ang, n);
    } catch (const Error&) {
      continue;
    }
    m.delta[n] = d;
    if (n == 0 || mus[n] < 0.0) continue;
    const double nd = static_cast<double>(n);
    m.l_terms[n] = std::sqrt(mus[n]) - nd - d - qm / (2.0 * (nd + d));
  }
  return m;
}

std::vector<double> complete_eigenvalues(std::span<const double> mus,
                                         const AsymptoticModel& model, std::size_t length) {
  if (mus.empty()) throw Error(ErrorKind::completion, "complete_eigenvalues: no eigenvalues");
  std::vector<double> out(mus.begin(), mus.end());
  if (out.size() > length) out.resize(length);
  for (std::size_t k = out.size(); k < length; ++k) {
    const double kd = static_cast<double>(k);
    const double lam = kd + model.omega / kd;
    out.push_back(lam * lam);
  }
  return out;
}

}  // namespace slspec
