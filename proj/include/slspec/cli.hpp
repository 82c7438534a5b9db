#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slspec::cli {

/// Grid used by `invert` and `roundtrip` for the Gelfand-Levitan solve.
inline constexpr std::size_t kDefaultInverseGrid = 2049;

/// Runs one subcommand (args exclude the program name). Results go to `out`,
/// errors to `err` as JSON. Returns 0 on success, 1 when `validate` rejects
/// the data, 2 on any error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slspec::cli
