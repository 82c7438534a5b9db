#include "slspec/identities.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "slspec/error.hpp"

namespace slspec {

SumEvaluation norming_sum(std::span<const double> s) {
  SumEvaluation ev;
  ev.n_used = s.size();
  if (s.empty()) throw Error(ErrorKind::insufficient_data, "norming_sum: no terms");
  for (std::size_t n = 0; n < s.size(); ++n)
    if (!(s[n] > 0.0))
      throw Error(ErrorKind::domain, "norming constant must be positive",
                  static_cast<long long>(n));

  ev.partial = 1.0 / s[0] - 1.0 / kPi;
  for (std::size_t n = 1; n < s.size(); ++n) ev.partial += 1.0 / s[n] - 2.0 / kPi;

  const std::size_t N = s.size();
  if (N < 8) {
    ev.uncertainty = std::numeric_limits<double>::infinity();
    return ev;
  }
  const std::size_t first = N - N / 4;
  std::vector<double> idx, kappa;
  for (std::size_t n = first; n < N; ++n) {
    const double nd = static_cast<double>(n);
    idx.push_back(nd);
    kappa.push_back(nd * (s[n] - kPi / 2.0));
  }
  // kappa ~ kappa_bar n^-p: scan p, least squares for kappa_bar.
  // p > 1/2 keeps the modelled kappa tail square-summable.
  double best_p = 0.51, best_k = 0.0, best_r = std::numeric_limits<double>::infinity();
  for (int step = 0; step <= 249; ++step) {
    const double p = 0.51 + 0.01 * step;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const double b = std::pow(idx[i], -p);
      sxy += b * kappa[i];
      sxx += b * b;
    }
    const double k = sxy / sxx;
    double r = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const double e = kappa[i] - k * std::pow(idx[i], -p);
      r += e * e;
    }
    if (r < best_r) {
      best_r = r;
      best_p = p;
      best_k = k;
    }
  }
  ev.kappa_bar = best_k;
  ev.decay_p = best_p;
  const double Nd = static_cast<double>(N);
  const double c = 4.0 / (kPi * kPi);
  ev.tail_estimate = -c * best_k * hurwitz_zeta(best_p + 1.0, Nd);

  // Envelope amplitude: RMS of kappa_n n^p covers both the fitted level and
  // the misfit around it.
  double env = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const double v = kappa[i] * std::pow(idx[i], best_p);
    env += v * v;
  }
  env = std::sqrt(env / static_cast<double>(idx.size()));
  ev.uncertainty = c * env * std::sqrt(hurwitz_zeta(2.0 * best_p, Nd)) *
                       std::sqrt(hurwitz_zeta(2.0, Nd)) +
                   kTermPrecision * Nd;
  return ev;
}

SumEvaluation sum_identity_a(const SpectralData& data) { return norming_sum(data.a_tildes()); }

SumEvaluation sum_identity_a(const Spectrum& spectrum) { return norming_sum(spectrum.a_tildes()); }

SumEvaluation sum_identity_b(const Spectrum& spectrum) { return norming_sum(spectrum.b_tildes()); }

LogProduct log_product(std::span<const double> mus, std::size_t n, std::size_t K) {
  if (K < 4 || mus.size() < K + 1)
    throw Error(ErrorKind::dimension, "product: need at least K + 1 = " + std::to_string(K + 1) +
                                          " eigenvalues, got " + std::to_string(mus.size()));
  if (n >= mus.size())
    throw Error(ErrorKind::dimension, "product: index out of range", static_cast<long long>(n));
  for (std::size_t k = 1; k <= K; ++k)
    if (!(mus[k] > mus[k - 1]))
      throw Error(ErrorKind::domain, "product: eigenvalues must strictly increase",
                  static_cast<long long>(k));
  LogProduct out;
  const double mun = mus[n];
  for (std::size_t k = 1; k <= K; ++k) {
    if (k == n) continue;
    const double kd = static_cast<double>(k);
    const double f = (mus[k] - mun) / (kd * kd);
    if (f == 0.0 || !std::isfinite(f))
      throw Error(ErrorKind::domain, "product: repeated eigenvalue", static_cast<long long>(k));
    if (f < 0.0) out.sign = -out.sign;
    out.log_abs += std::log(std::abs(f));
  }
  // c = lim (mu_k - k^2), estimated on the last quartile of 1..K.
  double c = 0.0;
  std::size_t cnt = 0;
  for (std::size_t k = K - K / 4; k <= K; ++k, ++cnt) {
    const double kd = static_cast<double>(k);
    c += mus[k] - kd * kd;
  }
  c /= static_cast<double>(cnt);
  const double d = c - mun;
  const double a = static_cast<double>(K + 1);
  if (std::abs(d) >= 0.5 * a * a)
    throw Error(ErrorKind::domain, "product: tail model invalid for this index",
                static_cast<long long>(n));
  // sum_{k>K} log(1 + d/k^2) = sum_j (-1)^(j+1) d^j / j * zeta(2j, K+1)
  double dj = 1.0;
  for (int j = 1; j < 60; ++j) {
    dj *= d;
    const double term = (j % 2 == 1 ? 1.0 : -1.0) * dj / j * hurwitz_zeta(2.0 * j, a);
    out.tail += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(out.tail))) break;
  }
  out.log_abs += out.tail;
  return out;
}

double phidot_product(std::span<const double> mus, const BoundaryAngles& angles,
                      std::size_t n, std::size_t K) {
  const LogProduct p = log_product(mus, n, K);
  const double s = std::sin(angles.alpha()) * std::sin(angles.beta());
  const double prod = p.sign * std::exp(p.log_abs);
  if (n == 0) return -kPi * s * prod;
  const double nd = static_cast<double>(n);
  return -(kPi / (nd * nd)) * (mus[0] - mus[n]) * s * prod;
}

double b_tilde_from_data(std::span<const double> mus, std::span<const double> a_tildes,
                         std::size_t n, std::size_t K) {
  if (n >= a_tildes.size())
    throw Error(ErrorKind::dimension, "b_tilde_from_data: index beyond norming constants",
                static_cast<long long>(n));
  if (!(a_tildes[n] > 0.0))
    throw Error(ErrorKind::domain, "norming constant must be positive", static_cast<long long>(n));
  const LogProduct p = log_product(mus, n, K);
  const double inv_p2 = std::exp(-2.0 * p.log_abs);
  if (n == 0) return a_tildes[0] * inv_p2 / (kPi * kPi);
  const double nd = static_cast<double>(n);
  const double gap = mus[0] - mus[n];
  return a_tildes[n] * nd * nd * nd * nd * inv_p2 / (kPi * kPi * gap * gap);
}

double phidot_fd(const Potential& q, const BoundaryAngles& angles, double mu) {
  const double h = 1e-4 * (1.0 + std::abs(mu));
  const double f2 = char_fn(q, angles, mu + 2.0 * h);
  const double f1 = char_fn(q, angles, mu + h);
  const double m1 = char_fn(q, angles, mu - h);
  const double m2 = char_fn(q, angles, mu - 2.0 * h);
  return (-f2 + 8.0 * f1 - 8.0 * m1 + m2) / (12.0 * h);
}

std::vector<double> verify_cn_relation(const Potential& q, const Spectrum& spectrum) {
  std::vector<double> out;
  out.reserve(spectrum.size());
  for (const auto& r : spectrum.records()) {
    const double d = phidot_fd(q, spectrum.angles(), r.mu);
    out.push_back(std::abs(r.a_n + r.c_n * d) / r.a_n);
  }
  return out;
}

}  // namespace slspec
