#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "slspec/forward.hpp"
#include "slspec/spectral_data.hpp"

namespace slspec {

/// Finite evaluation of 1/s_0 - 1/pi + sum_{n>=1} (1/s_n - 2/pi).
struct SumEvaluation {
  double partial = 0.0;        // terms 0..n_used-1
  double tail_estimate = 0.0;  // modelled remainder n >= n_used
  double uncertainty = 0.0;    // bound on |remainder - tail_estimate|
  std::size_t n_used = 0;
  // Tail model kappa_n = n (s_n - pi/2) ~ kappa_bar n^-p.
  double kappa_bar = 0.0;
  double decay_p = 0.0;

  double value() const noexcept { return partial + tail_estimate; }
};

/// Per-term absolute precision assumed for forward-computed norming constants.
inline constexpr double kTermPrecision = 1e-7;

/// The summation shell shared by both identities. Throws domain on s_n <= 0.
SumEvaluation norming_sum(std::span<const double> s);

/// Left side of the a~ identity; its limit is cot(alpha).
SumEvaluation sum_identity_a(const SpectralData& data);
SumEvaluation sum_identity_a(const Spectrum& spectrum);
/// Left side of the b~ identity; its limit is -cot(beta).
SumEvaluation sum_identity_b(const Spectrum& spectrum);

/// log|P| and sign(P) for P = prod_{k=1..K, k != n} (mu_k - mu_n) / k^2, plus
/// the modelled factors k > K (mu_k ~ k^2 + c, c fitted on the last quartile).
struct LogProduct {
  double log_abs = 0.0;
  double sign = 1.0;
  double tail = 0.0;  // log contribution of k > K
};
LogProduct log_product(std::span<const double> mus, std::size_t n, std::size_t K);

/// Phi-dot(mu_n) from the eigenvalues alone (infinite product form).
/// mus needs length >= K + 1.
double phidot_product(std::span<const double> mus, const BoundaryAngles& angles,
                      std::size_t n, std::size_t K);

/// 1/b~_n from (mu, a~) only. mus needs length >= K + 1; a_tildes >= n + 1.
double b_tilde_from_data(std::span<const double> mus, std::span<const double> a_tildes,
                         std::size_t n, std::size_t K);

/// Phi-dot by a five-point central difference of char_fn, step 1e-4 (1 + |mu|).
double phidot_fd(const Potential& q, const BoundaryAngles& angles, double mu);

/// |a_n + c_n Phi-dot(mu_n)| / a_n per record, with finite-difference Phi-dot.
std::vector<double> verify_cn_relation(const Potential& q, const Spectrum& spectrum);

}  // namespace slspec
