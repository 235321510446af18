#include "cgi/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "cgi/analytic.hpp"
#include "cgi/cli/csv.hpp"
#include "cgi/errors.hpp"
#include "cgi/estimator.hpp"
#include "cgi/fsl.hpp"
#include "cgi/interferometer.hpp"
#include "cgi/polynomial.hpp"

namespace cgi::cli {

namespace {

const std::vector<std::string> cgi_columns{
    "mzi_total_rad", "sddi_total_rad", "differential_rad", "mzi_prop_rad", "mzi_kick_rad",
    "mzi_sep_rad",   "sddi_prop_rad",  "sddi_kick_rad",    "sddi_sep_rad", "mzi_dz_m",
    "sddi_dz_m"};

std::vector<double> cgi_cells(const CGIResult& r) {
  return {r.mzi.total,       r.sddi.total,      r.differential,
          r.mzi.propagation, r.mzi.kick,        r.mzi.separation,
          r.sddi.propagation, r.sddi.kick,      r.sddi.separation,
          r.mzi.output_separation_dz, r.sddi.output_separation_dz};
}

std::vector<std::string> with_prefix(std::string first, const std::vector<std::string>& rest) {
  std::vector<std::string> out{std::move(first)};
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

ExperimentParams params_at(const RunConfig& cfg, const PotentialModel& model, double z0, double T_R) {
  ExperimentParams p = cfg.params;
  p.z0 = z0;
  p.T_R = T_R;
  if (cfg.launch) p.v0 = model.eval(z0).g * T_R;
  p.validate();
  return p;
}

// Local g and Gamma0 for the closed forms: the ideal values, or the model's at z0.
std::pair<double, double> local_field(const RunConfig& cfg, const PotentialModel& model) {
  if (cfg.potential.kind == PotentialKind::Ideal) return {cfg.potential.g, cfg.potential.gamma0};
  const FieldValues f = model.eval(cfg.params.z0);
  return {f.g, f.gamma};
}

void note_closure(CsvWriter& csv, const CGIResult& r) {
  if (r.mzi.closure_warning) csv.comment("closure_warning_mzi_dz_m", r.mzi.output_separation_dz);
  if (r.sddi.closure_warning) csv.comment("closure_warning_sddi_dz_m", r.sddi.output_separation_dz);
}

void cmd_cgi(const RunConfig& cfg, std::ostream& out) {
  const PotentialModel model = build_potential(cfg.potential);
  const CGIResult r = run_cgi(cfg.laser, cfg.atom, params_at(cfg, model, cfg.params.z0, cfg.params.T_R),
                              model, cfg.consts);
  CsvWriter csv(out, cgi_columns);
  csv.row(cgi_cells(r));
  note_closure(csv, r);
}

void cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const PotentialModel model = build_potential(cfg.potential);
  const CGIRuns runs = propagate_cgi(cfg.laser, cfg.atom,
                                     params_at(cfg, model, cfg.params.z0, cfg.params.T_R), model,
                                     cfg.consts);
  CsvWriter csv(out, {"t_s", "mzi_up_m", "mzi_low_m", "sddi_up_m", "sddi_low_m"});
  auto emit = [&](Eigen::Index j) {
    csv.row({runs.mzi.up.grid.time(j), runs.mzi.up.z(j), runs.mzi.low.z(j), runs.sddi.up.z(j),
             runs.sddi.low.z(j)});
  };
  const Eigen::Index last = runs.mzi.up.last();
  for (Eigen::Index j = 0; j < last; j += cfg.decimate) emit(j);
  emit(last);
}

// Expands sum c_n (x - x0)^n into plain powers of x.
Eigen::VectorXd recentre(const Eigen::VectorXd& c, double x0) {
  const Eigen::Index d = c.size();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
  for (Eigen::Index n = 0; n < d; ++n) {
    double binom = 1.0;
    for (Eigen::Index j = 0; j <= n; ++j) {
      out(j) += c(n) * binom * std::pow(-x0, static_cast<double>(n - j));
      binom = binom * static_cast<double>(n - j) / static_cast<double>(j + 1);
    }
  }
  return out;
}

void cmd_sweep_tr(const RunConfig& cfg, std::ostream& out) {
  constexpr int fit_degree = 4;
  const PotentialModel model = build_potential(cfg.potential);
  const std::vector<double> trs = cfg.tr.values();
  if (trs.size() < fit_degree + 1) {
    throw InputError("sweep-tr needs at least 5 T_R values for the quartic fit");
  }
  const auto results = parallel_map(trs, effective_threads(cfg.threads), [&](double T) {
    return run_cgi(cfg.laser, cfg.atom, params_at(cfg, model, cfg.params.z0, T), model, cfg.consts);
  });

  Eigen::VectorXd x(static_cast<Eigen::Index>(trs.size()));
  Eigen::VectorXd y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    x(i) = trs[static_cast<std::size_t>(i)];
    y(i) = results[static_cast<std::size_t>(i)].differential;
  }
  const PowerSeriesFit fit = fit_power_series(x, y, fit_degree);

  CsvWriter csv(out, {"t_r_s", "mzi_total_rad", "sddi_total_rad", "differential_rad", "prop_diff_rad",
                      "kick_diff_rad", "sep_diff_rad", "fit_rad"});
  for (std::size_t i = 0; i < trs.size(); ++i) {
    const CGIResult& r = results[i];
    csv.row({trs[i], r.mzi.total, r.sddi.total, r.differential,
             r.mzi.propagation - r.sddi.propagation, r.mzi.kick - r.sddi.kick,
             r.mzi.separation - r.sddi.separation, horner(fit.coeffs, trs[i] - fit.center)});
  }
  const Eigen::VectorXd plain = recentre(fit.coeffs, fit.center);
  for (Eigen::Index n = 0; n < plain.size(); ++n) csv.comment("quartic_c" + std::to_string(n), plain(n));
  csv.comment("quartic_residual_rms_rad", fit.residual_rms);
}

void cmd_sweep_z0(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.z0_range) throw InputError("sweep-z0 needs --z0 START:STOP:STEP");
  const PotentialModel model = build_potential(cfg.potential);
  const std::vector<double> z0s = cfg.z0_range->values();
  const auto results = parallel_map(z0s, effective_threads(cfg.threads), [&](double z0) {
    return run_cgi(cfg.laser, cfg.atom, params_at(cfg, model, z0, cfg.params.T_R), model, cfg.consts);
  });
  CsvWriter csv(out, with_prefix("z0_m", cgi_columns));
  for (std::size_t i = 0; i < z0s.size(); ++i) {
    std::vector<double> cells{z0s[i]};
    const auto rest = cgi_cells(results[i]);
    cells.insert(cells.end(), rest.begin(), rest.end());
    csv.row(cells);
  }
}

void cmd_estimate(const RunConfig& cfg, std::ostream& out) {
  const PotentialModel model = build_potential(cfg.potential);
  const std::vector<double> heights =
      cfg.z0_range ? cfg.z0_range->values()
                   : default_eval_heights(model, cfg.laser, cfg.atom, cfg.delta_h, cfg.spacing, cfg.consts);
  EstimatorOptions opts;
  opts.n_steps = cfg.params.n_steps;
  opts.consts = cfg.consts;
  opts.threads = effective_threads(cfg.threads);
  const ProfileEstimate est = sweep_estimate(model, cfg.laser, cfg.atom, heights, cfg.delta_h, opts);

  CsvWriter csv(out, {"z_eval_m", "gamma_hat_si", "gamma_true_si", "phase_rad", "z_launch_m"});
  for (const ProfileRow& r : est.rows) csv.row({r.z_eval, r.gamma_hat, r.gamma_true, r.phase, r.z_launch});
  csv.comment("delta_h_m", est.delta_h);
  csv.comment("rms_error", est.rms_error);
  csv.comment("mean_abs_phase_rad", est.mean_abs_phase);
}

void cmd_table1(const RunConfig& cfg, std::ostream& out) {
  const PotentialModel model = build_potential(cfg.potential);
  const auto [g, gamma0] = local_field(cfg, model);
  CsvWriter csv(out, {"id", "expr", "pref_mzi", "pref_sddi", "pref_diff", "value_rad"});
  for (const AnalyticTerm& t : table1_catalog(cfg.laser, cfg.atom, cfg.params, g, gamma0, cfg.consts)) {
    csv.row_cells({t.id, t.expression, t.prefactor_mzi.str(), t.prefactor_sddi.str(),
                   t.prefactor_diff.str(), format_number(t.value)});
  }
}

void cmd_fsl_detuning(const RunConfig& cfg, std::ostream& out) {
  const PotentialModel model = build_potential(cfg.potential);
  const double g = local_field(cfg, model).first;
  CsvWriter csv(out, {"t_r_s", "delta_det", "nu_det_hz", "pole_t_r_s", "fsl_time_dependent_rad",
                      "fsl_static_rad"});
  for (double T : cfg.tr.values()) {
    const ExperimentParams p = params_at(cfg, model, cfg.params.z0, T);
    const FslConfig fc = FslConfig::from(cfg.laser, p);
    const OptimalDetuning d = optimal_detuning(fc, g, cfg.atom, cfg.consts);
    const FslPhase ph = fsl_phase(fc, p.z0, g, cfg.atom, cfg.consts);
    csv.row({T, d.delta_det, d.nu_det, d.pole_T_R, ph.time_dependent, ph.static_part});
  }
}

void cmd_synth_profile(const RunConfig& cfg, std::ostream& out) {
  CsvWriter csv(out, {"z_m", "g_mps2", "gamma_si"});
  if (cfg.potential.kind == PotentialKind::Synth) {
    const ProfileSpec& spec = cfg.potential.synth;
    const double dz = spec.roi.width() / static_cast<double>(spec.samples - 1);
    for (int i = 0; i < spec.samples; ++i) {
      const double z = i + 1 == spec.samples ? spec.roi.z_max : spec.roi.z_min + i * dz;
      csv.row({z, target_gravity(spec, z), target_gamma(spec, z)});
    }
    return;
  }
  const PotentialModel model = build_potential(cfg.potential);
  if (!model.region()) throw InputError("synth-profile needs a potential with a region of interest");
  const Region roi = *model.region();
  const auto n = static_cast<long>(std::floor(roi.width() / cfg.spacing + 1e-9));
  for (long i = 0; i <= n; ++i) {
    const double z = std::min(roi.z_max, roi.z_min + static_cast<double>(i) * cfg.spacing);
    const FieldValues f = model.eval(z);
    csv.row({z, f.g, f.gamma});
  }
}

using Handler = void (*)(const RunConfig&, std::ostream&);

const std::map<std::string_view, Handler>& handlers() {
  static const std::map<std::string_view, Handler> table{
      {"simulate", cmd_simulate},         {"cgi", cmd_cgi},
      {"sweep-tr", cmd_sweep_tr},         {"sweep-z0", cmd_sweep_z0},
      {"estimate", cmd_estimate},         {"table1", cmd_table1},
      {"fsl-detuning", cmd_fsl_detuning}, {"synth-profile", cmd_synth_profile}};
  return table;
}

}  // namespace

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names{"simulate", "cgi",    "sweep-tr",     "sweep-z0",
                                                   "estimate", "table1", "fsl-detuning", "synth-profile"};
  return names;
}

void run_command(std::string_view command, const RunConfig& cfg, std::ostream& out) {
  const auto it = handlers().find(command);
  if (it == handlers().end()) throw InputError("unknown command '" + std::string(command) + "'");
  it->second(cfg, out);
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const RegionError*>(&e)) return exit_region;
  if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const FitError*>(&e)) {
    return exit_config;
  }
  return exit_failure;
}

int dispatch(std::string_view command, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  try {
    run_command(command, cfg, buffer);
  } catch (const std::exception& e) {
    err << "cgi-sim " << command << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
  if (cfg.out) {
    std::ofstream file(*cfg.out, std::ios::binary);
    if (!(file << buffer.str())) {
      err << "cgi-sim: cannot write " << cfg.out->string() << '\n';
      return exit_config;
    }
    return exit_ok;
  }
  out << buffer.str();
  return out ? exit_ok : exit_failure;
}

}  // namespace cgi::cli
