#pragma once

#include <cstddef>

#include "slspec/forward.hpp"
#include "slspec/identities.hpp"
#include "slspec/spectral_data.hpp"

namespace slspec {

/// Thresholds are empirical (finite-data surrogates for l^2 membership and
/// infinite sums).
struct Tolerances {
  double sum = 1e-2;           // slack added to the sum uncertainties
  double l2_increment = 1e-2;  // allowed growth of a partial l^2 norm over the last quartile
  double resid_floor = 1e-8;   // residuals below this count as zero
  double min_decay = 0.5;      // fitted |resid| ~ n^-p must have p above this
  std::size_t K = 2000;        // product truncation for the b~ identity
};

struct SequenceCheck {
  double l2_partial = 0.0;     // over all indices
  double l2_increment = 0.0;   // over the last quartile
  double tail_max = 0.0;       // max |resid| on the last quartile
  double decay_p = 0.0;        // log-log slope fit over n >= 1
  double margin = 0.0;         // l2_increment - tolerance; <= 0 passes
  bool pass = false;
};

struct SumCheck {
  SumEvaluation sum;
  double target = 0.0;
  double deviation = 0.0;  // |value - target|
  double margin = 0.0;     // deviation - (uncertainty + tolerance); <= 0 passes
  bool pass = false;
};

struct ValidationReport {
  double omega_fit = 0.0;
  SequenceCheck cond6;  // {omega_n}
  SequenceCheck cond7;  // {kappa_n}
  SumCheck cond8;       // a~ identity vs cot(alpha)
  SumCheck cond9;       // b~ from products vs -cot(beta)
  bool overall = false;
  bool empirical_thresholds = true;
};

/// Throws malformed-data via SpectralData for invalid sequences and
/// insufficient-data below 16 entries.
ValidationReport check_conditions(const SpectralData& data, const BoundaryAngles& target,
                                  const Tolerances& tol = {});

enum class Field { mu, a_tilde };

struct Perturbation {
  std::size_t index = 0;
  Field field = Field::a_tilde;
  double delta = 0.0;
};

/// Applies one additive change and reruns check_conditions. Index out of
/// range or a change breaking monotonicity/positivity is malformed-data.
ValidationReport perturb_and_classify(const SpectralData& data, const BoundaryAngles& target,
                                      const Perturbation& perturbation, const Tolerances& tol = {});

}  // namespace slspec
