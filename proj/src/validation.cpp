#include "slspec/validation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slspec/asymptotics.hpp"
#include "slspec/error.hpp"

namespace slspec {

namespace {

SequenceCheck check_sequence(const std::vector<double>& resid,
                             const std::vector<double>& l2, const Tolerances& tol) {
  SequenceCheck c;
  const std::size_t N = resid.size();
  const std::size_t q = N - N / 4;
  c.l2_partial = l2.back();
  c.l2_increment = l2.back() - l2[q - 1];
  for (std::size_t n = q; n < N; ++n) c.tail_max = std::max(c.tail_max, std::abs(resid[n]));

  // Decay trend over the whole sequence; the last half alone is dominated by
  // the zero crossing left by subtracting the fitted constant.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (std::size_t n = 1; n < N; ++n) {
    const double a = std::abs(resid[n]);
    if (!(a > 0.0)) continue;
    const double lx = std::log(static_cast<double>(n));
    const double ly = std::log(a);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m >= 2) {
    const double md = static_cast<double>(m);
    const double den = md * sxx - sx * sx;
    if (den > 0.0) c.decay_p = -(md * sxy - sx * sy) / den;
  }
  c.margin = c.l2_increment - tol.l2_increment;
  c.pass = c.margin <= 0.0 && (c.tail_max < tol.resid_floor || c.decay_p > tol.min_decay);
  return c;
}

SumCheck check_sum(const SumEvaluation& ev, double target, const Tolerances& tol) {
  SumCheck c;
  c.sum = ev;
  c.target = target;
  c.deviation = std::abs(ev.value() - target);
  c.margin = c.deviation - (ev.uncertainty + tol.sum);
  c.pass = c.margin <= 0.0;
  return c;
}

}  // namespace

ValidationReport check_conditions(const SpectralData& data, const BoundaryAngles& target,
                                  const Tolerances& tol) {
  const AsymptoticModel model =
      data.tail() ? *data.tail() : fit_asymptotics(data.mus(), data.a_tildes());
  ValidationReport r;
  r.omega_fit = model.omega;
  r.cond6 = check_sequence(model.omega_resid, model.omega_l2_partial, tol);
  r.cond7 = check_sequence(model.kappa_resid, model.kappa_l2_partial, tol);
  r.cond8 = check_sum(sum_identity_a(data), 1.0 / std::tan(target.alpha()), tol);

  const std::size_t N = data.size();
  const auto mus = complete_eigenvalues(data.mus(), model, std::max(tol.K + 1, N));
  std::vector<double> b(N);
  for (std::size_t n = 0; n < N; ++n)
    b[n] = 1.0 / b_tilde_from_data(mus, data.a_tildes(), n, tol.K);
  r.cond9 = check_sum(norming_sum(b), -1.0 / std::tan(target.beta()), tol);

  r.overall = r.cond6.pass && r.cond7.pass && r.cond8.pass && r.cond9.pass;
  return r;
}

ValidationReport perturb_and_classify(const SpectralData& data, const BoundaryAngles& target,
                                      const Perturbation& perturbation, const Tolerances& tol) {
  if (perturbation.index >= data.size())
    throw Error(ErrorKind::malformed_data,
                "perturbation index " + std::to_string(perturbation.index) + " out of range",
                static_cast<long long>(perturbation.index));
  auto mus = data.mus();
  auto at = data.a_tildes();
  (perturbation.field == Field::mu ? mus : at)[perturbation.index] += perturbation.delta;
  return check_conditions(SpectralData(std::move(mus), std::move(at), data.tail()), target, tol);
}

}  // namespace slspec
