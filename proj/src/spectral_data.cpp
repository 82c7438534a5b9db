#include "slspec/spectral_data.hpp"

#include <cmath>
#include <string>

#include "slspec/error.hpp"

namespace slspec {

SpectralData::SpectralData(std::vector<double> mus, std::vector<double> a_tildes,
                           std::optional<AsymptoticModel> tail)
    : mus_(std::move(mus)), a_tildes_(std::move(a_tildes)), tail_(std::move(tail)) {
  if (mus_.empty()) throw Error(ErrorKind::malformed_data, "spectral data is empty");
  if (mus_.size() != a_tildes_.size())
    throw Error(ErrorKind::malformed_data,
                "spectral data: " + std::to_string(mus_.size()) + " eigenvalues but " +
                    std::to_string(a_tildes_.size()) + " norming constants");
  for (std::size_t n = 0; n < mus_.size(); ++n) {
    const auto idx = static_cast<long long>(n);
    if (!std::isfinite(mus_[n]) || !std::isfinite(a_tildes_[n]))
      throw Error(ErrorKind::malformed_data, "spectral data: non-finite entry", idx);
    if (!(a_tildes_[n] > 0.0))
      throw Error(ErrorKind::malformed_data, "spectral data: a_tilde must be positive", idx);
    if (n > 0 && !(mus_[n] > mus_[n - 1]))
      throw Error(ErrorKind::malformed_data, "spectral data: mu must strictly increase", idx);
  }
}

SpectralData::SpectralData(const Spectrum& spectrum)
    : SpectralData(spectrum.mus(), spectrum.a_tildes()) {}

SpectralData SpectralData::with_fitted_tail() const {
  return SpectralData(mus_, a_tildes_, fit_asymptotics(mus_, a_tildes_));
}

}  // namespace slspec
