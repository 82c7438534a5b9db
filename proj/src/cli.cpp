#include "slspec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "slspec/error.hpp"
#include "slspec/gelfand_levitan.hpp"
#include "slspec/identities.hpp"
#include "slspec/io.hpp"
#include "slspec/validation.hpp"

namespace slspec::cli {

using nlohmann::json;

namespace {

struct Config {
  std::string input;
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t modes = 0;
  std::size_t grid = Grid::kDefaultPoints;
  std::size_t inverse_grid = kDefaultInverseGrid;
  bool smooth_diag = false;
  bool no_tail = false;
  std::string q_out = "q_hat.csv";
  std::string out_path;
  Tolerances tol;
};

double l2_error(const Potential& a, const Potential& b) {
  std::vector<double> d(a.grid().size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(quad_trapz(a.grid(), d));
}

void emit(std::ostream& out, const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty())
    out << text;
  else
    io::write_text_file(path, text);
}

int do_forward(const Config& c, std::ostream& out) {
  const Potential q = io::read_potential_csv(c.input, Grid(c.grid));
  const Spectrum s = eigenvalues(q, BoundaryAngles(c.alpha, c.beta), c.modes);
  emit(out, io::to_json(s), c.out_path);
  return 0;
}

ReconstructOptions inverse_options(const Config& c) {
  ReconstructOptions o;
  o.f.n_modes = c.modes;
  o.f.analytic_tail = !c.no_tail;
  o.smooth_diag = c.smooth_diag;
  return o;
}

int do_invert(const Config& c, std::ostream& out) {
  const io::LoadedData loaded = io::spectral_data_from_json(io::read_json_file(c.input));
  const Reconstruction r = reconstruct(loaded.data, Grid(c.inverse_grid), inverse_options(c));
  std::ostringstream csv;
  io::write_potential_csv(csv, r.q_hat);
  io::write_text_file(c.q_out, csv.str());
  emit(out,
       {{"format_version", io::kFormatVersion},
        {"alpha_hat", r.alpha_hat},
        {"beta_hat", r.beta_hat},
        {"beta_consistency", r.beta_consistency},
        {"gl_condition_max", r.gl_condition_max},
        {"q_out", c.q_out}},
       c.out_path);
  return 0;
}

int do_validate(const Config& c, std::ostream& out) {
  const io::LoadedData loaded = io::spectral_data_from_json(io::read_json_file(c.input));
  const ValidationReport r = check_conditions(loaded.data, BoundaryAngles(c.alpha, c.beta), c.tol);
  emit(out, io::to_json(r), c.out_path);
  return r.overall ? 0 : 1;
}

int do_identities(const Config& c, std::ostream& out) {
  const Potential q = io::read_potential_csv(c.input, Grid(c.grid));
  const BoundaryAngles angles(c.alpha, c.beta);
  const Spectrum s = eigenvalues(q, angles, c.modes);
  auto entry = [&](const SumEvaluation& ev, double target) {
    json j = io::to_json(ev);
    j["target"] = target;
    j["pass"] = std::abs(ev.value() - target) <= ev.uncertainty;
    return j;
  };
  emit(out,
       {{"format_version", io::kFormatVersion},
        {"n_modes", c.modes},
        {"sum_a", entry(sum_identity_a(s), 1.0 / std::tan(angles.alpha()))},
        {"sum_b", entry(sum_identity_b(s), -1.0 / std::tan(angles.beta()))}},
       c.out_path);
  return 0;
}

int do_roundtrip(const Config& c, std::ostream& out) {
  const Grid fg(c.grid);
  const Potential q = io::read_potential_csv(c.input, fg);
  const BoundaryAngles angles(c.alpha, c.beta);
  const Spectrum s = eigenvalues(q, angles, c.modes);
  const Grid ig(c.inverse_grid);
  ReconstructOptions o = inverse_options(c);
  o.f.n_modes = 0;
  const Reconstruction r = reconstruct(SpectralData(s), ig, o);
  const Potential qi = q.resampled(ig);
  const auto integral = cumulative_trapz(ig, qi.values());
  double diag_err = 0.0;
  for (std::size_t i = 0; i < ig.size(); ++i)
    diag_err = std::max(diag_err, std::abs(r.diag[i] - (-1.0 / std::tan(angles.alpha()) + 0.5 * integral[i])));
  emit(out,
       {{"format_version", io::kFormatVersion},
        {"n_modes", c.modes},
        {"l2_error", l2_error(r.q_hat, qi)},
        {"alpha_error", std::abs(r.alpha_hat - angles.alpha())},
        {"beta_error", std::abs(r.beta_hat - angles.beta())},
        {"alpha_hat", r.alpha_hat},
        {"beta_hat", r.beta_hat},
        {"beta_consistency", r.beta_consistency},
        {"diag_max_error", diag_err},
        {"gl_condition_max", r.gl_condition_max}},
       c.out_path);
  return 0;
}

void write_error(std::ostream& err, const std::string& kind, const std::string& message,
                 std::optional<long long> index = std::nullopt) {
  json e = {{"kind", kind}, {"message", message}};
  if (index) e["index"] = *index;
  err << json{{"format_version", io::kFormatVersion}, {"error", e}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sturm-Liouville forward and inverse spectral tools", "slspec"};
  app.require_subcommand(1);
  Config c;

  auto add_angles = [&](CLI::App* s) {
    s->add_option("--alpha", c.alpha, "left boundary angle in (0, pi), radians")->required();
    s->add_option("--beta", c.beta, "right boundary angle in (0, pi), radians")->required();
  };
  auto add_grid = [&](CLI::App* s) {
    s->add_option("--grid", c.grid, "grid points for the potential")->check(CLI::Range(33, 1 << 20));
  };
  auto add_out = [&](CLI::App* s) { s->add_option("-o,--out", c.out_path, "write JSON here instead of stdout"); };

  auto* fwd = app.add_subcommand("forward", "eigenvalues and norming constants");
  fwd->add_option("potential", c.input, "potential CSV (x,q)")->required();
  add_angles(fwd);
  fwd->add_option("--modes", c.modes, "number of eigenvalues")->required()->check(CLI::Range(1, 100000));
  add_grid(fwd);
  add_out(fwd);

  auto* inv = app.add_subcommand("invert", "reconstruct q, alpha, beta from spectral data");
  inv->add_option("data", c.input, "spectral data JSON")->required();
  inv->add_option("--grid", c.inverse_grid, "grid points for the reconstruction")
      ->check(CLI::Range(33, 1 << 16));
  inv->add_option("--modes", c.modes, "modes taken from the data (0 = all)");
  inv->add_flag("--smooth-diag", c.smooth_diag, "5-point smoothing of the reconstructed q");
  inv->add_flag("--no-tail", c.no_tail, "cut the F series at --modes instead of summing the asymptotic head");
  inv->add_option("--q-out", c.q_out, "output CSV for the reconstructed potential");
  add_out(inv);

  auto* val = app.add_subcommand("validate", "check the spectral-data conditions for given angles");
  val->add_option("data", c.input, "spectral data JSON")->required();
  add_angles(val);
  val->add_option("--tol-sum", c.tol.sum, "slack for the two sum conditions");
  val->add_option("--tol-l2", c.tol.l2_increment, "allowed last-quartile l2 growth");
  val->add_option("--min-decay", c.tol.min_decay, "minimum residual decay exponent");
  val->add_option("--K", c.tol.K, "product truncation")->check(CLI::Range(8, 10000000));
  add_out(val);

  auto* ids = app.add_subcommand("identities", "evaluate the two norming-constant sums");
  ids->add_option("potential", c.input, "potential CSV (x,q)")->required();
  add_angles(ids);
  c.modes = 200;
  ids->add_option("--modes", c.modes, "number of eigenvalues")->check(CLI::Range(1, 100000));
  add_grid(ids);
  add_out(ids);

  auto* rt = app.add_subcommand("roundtrip", "forward solve, reconstruct, report errors");
  rt->add_option("potential", c.input, "potential CSV (x,q)")->required();
  add_angles(rt);
  rt->add_option("--modes", c.modes, "number of eigenvalues")->required()->check(CLI::Range(1, 100000));
  add_grid(rt);
  rt->add_option("--inverse-grid", c.inverse_grid, "grid points for the reconstruction")
      ->check(CLI::Range(33, 1 << 16));
  rt->add_flag("--smooth-diag", c.smooth_diag, "5-point smoothing of the reconstructed q");
  rt->add_flag("--no-tail", c.no_tail, "cut the F series at the data length");
  add_out(rt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    write_error(err, "parse", e.what());
    return 2;
  }

  try {
    if (*fwd) return do_forward(c, out);
    if (*inv) return do_invert(c, out);
    if (*val) return do_validate(c, out);
    if (*ids) return do_identities(c, out);
    return do_roundtrip(c, out);
  } catch (const Error& e) {
    write_error(err, std::string(to_string(e.kind())), e.what(), e.index());
  } catch (const std::exception& e) {
    write_error(err, "internal", e.what());
  }
  return 2;
}

}  // namespace slspec::cli
