#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "slspec/forward.hpp"
#include "slspec/identities.hpp"
#include "slspec/spectral_data.hpp"
#include "slspec/validation.hpp"

namespace slspec::io {

inline constexpr int kFormatVersion = 1;

/// CSV with header `x,q`; x strictly increasing from 0 to pi (1e-6 slack).
/// Values are resampled onto `grid` by linear interpolation.
Potential read_potential_csv(std::istream& in, const Grid& grid);
Potential read_potential_csv(const std::string& path, const Grid& grid);
void write_potential_csv(std::ostream& out, const Potential& q);

nlohmann::json to_json(const Spectrum& spectrum);
Spectrum spectrum_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SumEvaluation& ev);
nlohmann::json to_json(const ValidationReport& report);

/// Spectral data plus the angles when the file is a full spectrum.
struct LoadedData {
  SpectralData data;
  std::optional<BoundaryAngles> angles;
};

/// Accepts {mu: [...], a_tilde: [...]} or a spectrum object.
LoadedData spectral_data_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SpectralData& data);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace slspec::io
