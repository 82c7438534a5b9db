#pragma once

#include <optional>
#include <vector>

#include "slspec/asymptotics.hpp"
#include "slspec/forward.hpp"

namespace slspec {

/// Eigenvalues mu_0 < mu_1 < ... with norming constants a~_n > 0, plus an
/// optional asymptotic model for indices beyond the data.
class SpectralData {
 public:
  /// Throws malformed-data on unequal lengths, empty input, non-increasing mu
  /// or nonpositive a~.
  SpectralData(std::vector<double> mus, std::vector<double> a_tildes,
               std::optional<AsymptoticModel> tail = std::nullopt);
  explicit SpectralData(const Spectrum& spectrum);

  const std::vector<double>& mus() const noexcept { return mus_; }
  const std::vector<double>& a_tildes() const noexcept { return a_tildes_; }
  const std::optional<AsymptoticModel>& tail() const noexcept { return tail_; }
  std::size_t size() const noexcept { return mus_.size(); }

  /// Copy with the tail fitted from the data itself (needs 16 entries).
  SpectralData with_fitted_tail() const;

 private:
  std::vector<double> mus_;
  std::vector<double> a_tildes_;
  std::optional<AsymptoticModel> tail_;
};

}  // namespace slspec
