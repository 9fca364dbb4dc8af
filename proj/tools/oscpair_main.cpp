// Command-line front end. Point queries (modes / witness / negativity / snr)
// emit one JSON record with everything computed for the point; `sweep` emits
// grid CSV (or JSON); `verify` runs the closed-form-versus-oracle suite;
// `invert` recovers coupling and squeezing from measured frequencies.
//
// Exit codes: 0 success, 1 domain error (including bad arguments),
// 2 verification failure, 3 oracle non-convergence.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "oscpair/oracle.hpp"
#include "oscpair/sweep.hpp"
#include "oscpair/verify.hpp"

using json = nlohmann::ordered_json;
using namespace oscpair;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CommonOpts {
  double omega = 1.0;
  double Omega = 1.0;
  double g = 0.0;
  double g_ratio = -1.0;       // <0: not set
  double beta = -1.0;          // <0: not set (ground state)
  double beta_omega_minus = -1.0;
  std::string out;
  std::string format = "json";
};

void add_pair_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--omega", o.omega, "bare frequency of mode a")
      ->capture_default_str();
  cmd->add_option("--Omega", o.Omega, "bare frequency of mode b")
      ->capture_default_str();
  auto* g = cmd->add_option("--g", o.g, "coupling strength");
  cmd->add_option("--g-ratio", o.g_ratio, "coupling as a fraction of g_c")
      ->excludes(g);
}

void add_beta_options(CLI::App* cmd, CommonOpts& o) {
  auto* b = cmd->add_option("--beta", o.beta,
                            "inverse temperature (omit for ground state)");
  cmd->add_option("--beta-omega-minus", o.beta_omega_minus,
                  "dimensionless temperature beta * omega_-")
      ->excludes(b);
}

void add_output_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out, "output file (default: stdout)");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw domain_error("cannot open output file: " + o.out);
  f << text;
}

PointParams to_params(const CommonOpts& o) {
  PointParams p;
  p.omega = o.omega;
  p.Omega = o.Omega;
  p.g = o.g;
  if (o.g_ratio >= 0.0) p.g_ratio = o.g_ratio;
  if (o.beta >= 0.0) p.beta = o.beta;
  if (o.beta_omega_minus >= 0.0) p.beta_omega_minus = o.beta_omega_minus;
  return p;
}

json point_json(const CommonOpts& o, const PointReport& r) {
  json j;
  j["input"] = {{"omega", o.omega}, {"Omega", o.Omega}};
  j["pair"] = {{"omega", r.pair.omega()},
               {"Omega", r.pair.Omega()},
               {"g", r.pair.g()},
               {"g_ratio", r.pair.g_ratio()},
               {"critical_coupling", r.pair.critical()},
               {"labels_swapped", r.pair.labels_swapped()}};
  j["thermal"] = !std::isinf(r.beta);
  j["beta"] = std::isinf(r.beta) ? json() : json(r.beta);
  j["modes"] = {{"omega_minus", r.modes.omega_minus},
                {"omega_plus", r.modes.omega_plus},
                {"theta", r.modes.theta},
                {"xi_minus", r.modes.xi_minus},
                {"xi_plus", r.modes.xi_plus}};
  j["witness"] = {{"value", r.witness.value},
                  {"bound", r.witness.bound},
                  {"entangled", r.witness.entangled},
                  {"form", to_string(r.witness.form_used)}};
  j["negativity"] = {{"nu_tilde_minus", r.negativity.nu_tilde_minus},
                     {"log_negativity", r.negativity.log_negativity}};
  j["snr"] = {{"snr_bound", r.snr.snr_bound},
              {"enhancement_over_sql", r.snr.enhancement_over_sql}};
  return j;
}

std::string point_csv(const json& j, const std::string& prefix = "") {
  std::string out;
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      out += point_csv(value, name);
    } else if (value.is_number_float()) {
      out += name + "," + format17(value.get<double>()) + "\n";
    } else {
      out += name + "," + value.dump() + "\n";
    }
  }
  return out;
}

void run_point_command(const CommonOpts& o) {
  const auto record = run_point(to_params(o));
  const json j = point_json(o, record);
  emit(o, o.format == "csv" ? point_csv(j) : j.dump(2) + "\n");
}

int exit_code_for(const VerifyReport& r) { return r.all_pass ? 0 : 2; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "entanglement witnesses, logarithmic negativity and metrology bounds "
      "for two linearly coupled harmonic oscillators"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file");
  app.fallthrough();

  CommonOpts opts;
  int verify_nmax = 0;
  std::string verify_preset = "standard";
  std::string sweep_preset;
  std::string axis1_spec, axis2_spec;
  std::string quantity = "duan";
  bool clamp = false, no_clamp = false;
  double fixed_omega_ratio = 1.0, fixed_g_ratio = 0.0;
  double fixed_bwm = kInf;
  double alpha2 = 1.0, time_arg = 1.0, xi = 0.0;
  double inv_wm = 0.0, inv_wp = 0.0;

  auto* modes = app.add_subcommand("modes", "dressed frequencies, mixing "
                                            "angle and squeezing parameters");
  auto* witness = app.add_subcommand(
      "witness", "Duan-Simon inseparability value for the point");
  auto* negativity = app.add_subcommand(
      "negativity", "logarithmic negativity for the point");
  auto* snr = app.add_subcommand(
      "snr", "signal-to-noise bound for frequency estimation");
  for (auto* cmd : {modes, witness, negativity, snr}) {
    add_pair_options(cmd, opts);
    add_beta_options(cmd, opts);
    add_output_options(cmd, opts);
  }
  snr->add_option("--alpha2", alpha2, "mean excitation |alpha|^2")
      ->capture_default_str();
  snr->add_option("--time", time_arg, "evolution time")->capture_default_str();
  snr->add_option("--xi", xi,
                  "explicit probe squeezing (non-interacting bound only)")
      ->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "grid sweep to CSV/JSON");
  sweep->add_option("--preset", sweep_preset, "fig1 or fig2")
      ->check(CLI::IsMember({"fig1", "fig2"}));
  sweep->add_option("--axis1", axis1_spec, "name:min:max:count");
  sweep->add_option("--axis2", axis2_spec, "name:min:max:count");
  sweep->add_option("--quantity", quantity, "duan | log_negativity | "
                                            "enhancement")
      ->check(CLI::IsMember({"duan", "log_negativity", "enhancement"}));
  sweep->add_flag("--clamp", clamp, "clamp the display column at 1");
  sweep->add_flag("--no-clamp", no_clamp, "disable display clamping");
  sweep->add_option("--omega-ratio", fixed_omega_ratio,
                    "fixed omega/Omega when not on an axis");
  sweep->add_option("--g-ratio", fixed_g_ratio,
                    "fixed g/g_c when not on an axis");
  sweep->add_option("--beta-omega-minus", fixed_bwm,
                    "fixed beta*omega_- when not on an axis");
  add_output_options(sweep, opts);

  auto* verify = app.add_subcommand(
      "verify", "closed forms against the truncated-Fock oracle");
  verify->add_option("--preset", verify_preset, "standard or quick")
      ->check(CLI::IsMember({"standard", "quick"}));
  verify->add_option("--nmax", verify_nmax,
                     "override the preset's Fock truncation");
  add_output_options(verify, opts);

  auto* invert = app.add_subcommand(
      "invert", "coupling and squeezing from measured frequencies");
  invert->add_option("--omega", opts.omega, "bare frequency of mode a")
      ->required();
  invert->add_option("--Omega", opts.Omega, "bare frequency of mode b")
      ->required();
  invert->add_option("--omega-minus", inv_wm, "measured lower dressed "
                                              "frequency")
      ->required();
  invert->add_option("--omega-plus", inv_wp, "measured upper dressed "
                                             "frequency")
      ->required();
  add_output_options(invert, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // bad usage is a domain error
  }

  try {
    if (*modes || *witness || *negativity) {
      run_point_command(opts);
    } else if (*snr) {
      json j;
      if (opts.g > 0.0 || opts.g_ratio > 0.0) {
        if (xi != 0.0) {
          throw domain_error(
              "interacting bound takes a coherent probe; drop --xi or --g");
        }
        const auto record = run_point(to_params(opts));
        j = point_json(opts, record);
        j["snr"]["probe"] = "interacting";
        j["snr"]["mean_excitation"] = alpha2;
        j["snr"]["time"] = time_arg;
        const auto r = snr_bound_interacting(record.pair,
                                             {alpha2, time_arg, 0.0});
        j["snr"]["snr_bound"] = r.snr_bound;
        j["snr"]["enhancement_over_sql"] = r.enhancement_over_sql;
      } else {
        const auto r = snr_bound_squeezed_probe({alpha2, time_arg, xi});
        j["snr"] = {{"probe", "squeezed"},
                    {"mean_excitation", alpha2},
                    {"time", time_arg},
                    {"noise_squeezing", xi},
                    {"snr_bound", r.snr_bound},
                    {"enhancement_over_sql", r.enhancement_over_sql}};
      }
      emit(opts, opts.format == "csv" ? point_csv(j) : j.dump(2) + "\n");
    } else if (*sweep) {
      SweepSpec spec;
      if (sweep_preset == "fig1") {
        spec = fig1_preset();
      } else if (sweep_preset == "fig2") {
        spec = fig2_preset();
      } else if (axis1_spec.empty() || axis2_spec.empty()) {
        throw domain_error("sweep needs --preset or both --axis1/--axis2");
      }
      auto parse_axis = [](const std::string& s) {
        AxisSpec ax;
        std::string name;
        double mn, mx;
        int count;
        char c1, c2;
        std::istringstream is(s);
        std::getline(is, name, ':');
        if (!(is >> mn >> c1 >> mx >> c2 >> count) || c1 != ':' || c2 != ':') {
          throw domain_error("axis spec must be name:min:max:count");
        }
        if (name == "omega_ratio") ax.name = Axis::omega_ratio;
        else if (name == "g_ratio") ax.name = Axis::g_ratio;
        else if (name == "beta_omega_minus") ax.name = Axis::beta_omega_minus;
        else throw domain_error("unknown axis: " + name);
        ax.min = mn;
        ax.max = mx;
        ax.count = count;
        return ax;
      };
      if (!axis1_spec.empty()) spec.axis1 = parse_axis(axis1_spec);
      if (!axis2_spec.empty()) spec.axis2 = parse_axis(axis2_spec);
      if (sweep->count("--quantity")) {
        spec.quantity = quantity == "duan" ? Quantity::duan
                        : quantity == "log_negativity"
                            ? Quantity::log_negativity
                            : Quantity::enhancement;
      }
      if (sweep->count("--omega-ratio")) spec.omega_ratio = fixed_omega_ratio;
      if (sweep->count("--g-ratio")) spec.g_ratio = fixed_g_ratio;
      if (sweep->count("--beta-omega-minus")) spec.beta_omega_minus = fixed_bwm;
      if (clamp) spec.clamp_at_one = true;
      if (no_clamp) spec.clamp_at_one = false;

      const std::string csv = run_sweep(spec);
      if (opts.format == "csv") {
        emit(opts, csv);
      } else {
        // rows as JSON records, same order and values
        json rows = json::array();
        std::istringstream is(csv);
        std::string line;
        std::getline(is, line);
        std::vector<std::string> header;
        {
          std::istringstream hs(line);
          std::string h;
          while (std::getline(hs, h, ',')) header.push_back(h);
        }
        while (std::getline(is, line)) {
          json row;
          std::istringstream rs(line);
          std::string field;
          for (size_t k = 0; k < header.size(); ++k) {
            std::getline(rs, field, ',');
            if (header[k] == "entangled") {
              row[header[k]] = field == "true";
            } else if (header[k] == "error") {
              row[header[k]] = field;
            } else {
              row[header[k]] = field == "nan"
                                   ? json()
                                   : json(std::stod(field));
            }
          }
          rows.push_back(row);
        }
        emit(opts, rows.dump(2) + "\n");
      }
    } else if (*verify) {
      const VerifyPreset preset = verify_preset == "quick"
                                      ? VerifyPreset::quick
                                      : VerifyPreset::standard;
      const auto report = run_verify(preset, verify_nmax);
      json j;
      j["preset"] = verify_preset;
      j["all_pass"] = report.all_pass;
      j["worst_deviation"] = {
          {"duan", report.worst_duan_dev},
          {"log_negativity", report.worst_negativity_dev},
          {"spectrum", report.worst_spectrum_dev}};
      j["checks"] = json::array();
      for (const auto& c : report.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"closed_form", c.closed_form},
                               {"oracle", c.analytic_only
                                              ? json()
                                              : json(c.oracle_value)},
                               {"deviation", c.analytic_only
                                                 ? json()
                                                 : json(c.deviation)},
                               {"tol", c.tol},
                               {"analytic_only", c.analytic_only},
                               {"pass", c.pass}});
      }
      emit(opts, j.dump(2) + "\n");
      return exit_code_for(report);
    } else if (*invert) {
      const double g =
          coupling_from_frequencies(opts.omega, opts.Omega, inv_wm, inv_wp);
      const auto [xm, xp] =
          squeezing_from_frequencies(opts.omega, opts.Omega, inv_wm, inv_wp);
      json j = {{"omega", opts.omega},
                {"Omega", opts.Omega},
                {"omega_minus", inv_wm},
                {"omega_plus", inv_wp},
                {"g", g},
                {"g_ratio", g / critical_coupling(opts.omega, opts.Omega)},
                {"xi_minus", xm},
                {"xi_plus", xp}};
      emit(opts, opts.format == "csv" ? point_csv(j) : j.dump(2) + "\n");
    }
  } catch (const convergence_error& e) {
    json err = {{"error",
                 {{"type", "oracle_non_convergence"}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return 3;
  } catch (const domain_error& e) {
    json err = {{"error", {{"type", "domain"}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err = {{"error", {{"type", "internal"}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return 1;
  }
  return 0;
}
