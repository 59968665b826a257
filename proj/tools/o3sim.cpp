// o3sim: command-line driver for the O(3) rotor / coupled-cluster / CV
// simulator cross-validation suite.
//
// Subcommands: ed | cc | sphere-ed | cv-energy | evolve | compare | sweep
// Configuration comes from an optional JSON file (--config) overlaid by
// command-line flags; flags win. Output is plain CSV (comma, LF) or JSON,
// with a config-echo header. Exit codes: 0 ok, 1 numeric failure,
// 2 config error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "o3sim/cc.hpp"
#include "o3sim/cv/protocols.hpp"
#include "o3sim/optimize.hpp"
#include "o3sim/radial.hpp"
#include "o3sim/rotor.hpp"
#include "o3sim/sphere.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace o3sim;

constexpr const char* kVersion = "0.1.0";

// thrown for malformed configuration; mapped to exit code 2
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------
// experiment configuration

struct ExperimentConfig {
  std::string command;
  ModelParams model;
  std::optional<double> lambda_cutoff;  // sphere/CV radial cutoff
  CCConfig cc;
  bool has_alpha = false;  // alpha given explicitly (vs minimized)
  double alpha_excited = -1.0;
  std::string method;  // per-command method selector

  // CV protocol knobs
  int n_max = 10;
  double gamma = 1e-3;
  double capital_gamma = 0.1;
  int trotter_steps = 2;
  double leakage_threshold = 1e-3;

  std::vector<double> times;
  std::vector<double> lambdas;

  // sweep
  std::string sweep_axis;
  std::vector<double> sweep_values;
  bool keep_going = false;

  std::string output_path;  // empty = stdout
  std::string output_format = "csv";
};

const char* sampler_name(CCSampler s) {
  switch (s) {
    case CCSampler::quasi_mc: return "quasi_mc";
    case CCSampler::gaussian_radial: return "gaussian_radial";
    case CCSampler::exact_radial_alpha0: return "exact_radial_alpha0";
  }
  return "?";
}

CCSampler sampler_from_name(const std::string& s) {
  if (s == "quasi_mc") return CCSampler::quasi_mc;
  if (s == "gaussian_radial") return CCSampler::gaussian_radial;
  if (s == "exact_radial_alpha0") return CCSampler::exact_radial_alpha0;
  throw ConfigError("cc.sampler: unknown sampler '" + s + "'");
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["command"] = c.command;
  j["model"] = {{"n_sites", c.model.n_sites},
                {"g_sq", c.model.g_sq},
                {"l_max", c.model.l_max}};
  if (c.lambda_cutoff) j["lambda_cutoff"] = *c.lambda_cutoff;
  j["cc"] = {{"alpha", c.has_alpha ? json(c.cc.alpha) : json()},
             {"alpha_excited",
              c.alpha_excited >= 0.0 ? json(c.alpha_excited) : json()},
             {"n_samples", c.cc.n_samples},
             {"sampler", sampler_name(c.cc.sampler)},
             {"seed", c.cc.seed}};
  if (!c.method.empty()) j["method"] = c.method;
  j["protocol"] = {{"n_max", c.n_max},
                   {"gamma", c.gamma},
                   {"capital_gamma", c.capital_gamma},
                   {"trotter_steps", c.trotter_steps},
                   {"leakage_threshold", c.leakage_threshold}};
  if (!c.times.empty()) j["times"] = c.times;
  if (!c.lambdas.empty()) j["lambdas"] = c.lambdas;
  if (!c.sweep_axis.empty())
    j["sweep"] = {{"axis", c.sweep_axis},
                  {"values", c.sweep_values},
                  {"keep_going", c.keep_going}};
  j["output"] = {{"path", c.output_path}, {"format", c.output_format}};
  return j;
}

// reads j[field] into out with a field-level error message
template <typename T>
void read_field(const json& j, const std::string& scope,
                const std::string& field, T& out) {
  if (!j.contains(field) || j.at(field).is_null()) return;
  try {
    out = j.at(field).get<T>();
  } catch (const std::exception& e) {
    throw ConfigError("config field " +
                      (scope.empty() ? field : scope + "." + field) + ": " +
                      e.what());
  }
}

ExperimentConfig from_json(const json& j) {
  ExperimentConfig c;
  read_field(j, "", "command", c.command);
  if (j.contains("model")) {
    const json& m = j.at("model");
    read_field(m, "model", "n_sites", c.model.n_sites);
    read_field(m, "model", "g_sq", c.model.g_sq);
    read_field(m, "model", "l_max", c.model.l_max);
  }
  if (j.contains("lambda_cutoff") && !j.at("lambda_cutoff").is_null()) {
    double lam = 0.0;
    read_field(j, "", "lambda_cutoff", lam);
    c.lambda_cutoff = lam;
  }
  if (j.contains("cc")) {
    const json& m = j.at("cc");
    if (m.contains("alpha") && !m.at("alpha").is_null()) {
      read_field(m, "cc", "alpha", c.cc.alpha);
      c.has_alpha = true;
    }
    read_field(m, "cc", "alpha_excited", c.alpha_excited);
    read_field(m, "cc", "n_samples", c.cc.n_samples);
    std::string s;
    read_field(m, "cc", "sampler", s);
    if (!s.empty()) c.cc.sampler = sampler_from_name(s);
    read_field(m, "cc", "seed", c.cc.seed);
  }
  read_field(j, "", "method", c.method);
  if (j.contains("protocol")) {
    const json& m = j.at("protocol");
    read_field(m, "protocol", "n_max", c.n_max);
    read_field(m, "protocol", "gamma", c.gamma);
    read_field(m, "protocol", "capital_gamma", c.capital_gamma);
    read_field(m, "protocol", "trotter_steps", c.trotter_steps);
    read_field(m, "protocol", "leakage_threshold", c.leakage_threshold);
  }
  read_field(j, "", "times", c.times);
  read_field(j, "", "lambdas", c.lambdas);
  if (j.contains("sweep")) {
    const json& m = j.at("sweep");
    read_field(m, "sweep", "axis", c.sweep_axis);
    read_field(m, "sweep", "values", c.sweep_values);
    read_field(m, "sweep", "keep_going", c.keep_going);
  }
  if (j.contains("output")) {
    const json& m = j.at("output");
    read_field(m, "output", "path", c.output_path);
    read_field(m, "output", "format", c.output_format);
  }
  return c;
}

// ---------------------------------------------------------------------
// result table + emitters

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string format_cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void emit(const Table& t, const ExperimentConfig& cfg) {
  std::ostringstream out;
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));

  if (cfg.output_format == "json") {
    json j;
    j["version"] = kVersion;
    j["generated"] = stamp;
    j["config"] = to_json(cfg);
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    out << j.dump(2) << '\n';
  } else {
    out << "# o3sim " << kVersion << '\n';
    out << "# generated " << stamp << '\n';
    out << "# config " << to_json(cfg).dump() << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        out << (i ? "," : "") << format_cell(row[i]);
      out << '\n';
    }
  }

  if (cfg.output_path.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + cfg.output_path);
    f << out.str();
  }
}

// ---------------------------------------------------------------------
// command implementations

SphereBasisSpec sphere_spec(const ExperimentConfig& c, double lambda) {
  SphereBasisSpec s;
  s.lambda_cutoff = lambda;
  s.g = std::sqrt(c.model.g_sq);
  s.l_max = c.model.l_max;
  s.n_sites = c.model.n_sites;
  return s;
}

cv::ProtocolConfig protocol_config(const ExperimentConfig& c) {
  cv::ProtocolConfig p;
  p.model = c.model;
  if (!c.lambda_cutoff)
    throw ConfigError("lambda_cutoff: required for CV commands");
  p.sphere = sphere_spec(c, *c.lambda_cutoff);
  p.n_max = c.n_max;
  p.gamma = c.gamma;
  p.capital_gamma = c.capital_gamma;
  p.trotter_steps = c.trotter_steps;
  p.leakage_threshold = c.leakage_threshold;
  return p;
}

Table run_ed(const ExperimentConfig& c) {
  c.model.validate();
  const auto r = mass_gap(c.model);
  Table t;
  t.columns = {"n_sites", "g_sq",      "l_max", "e0_per_site",
               "e1",      "gap",       "truncation_error"};
  const double L = c.model.n_sites;
  t.rows.push_back({L, c.model.g_sq, double(c.model.l_max), r.e0 / L, r.e1,
                    r.gap, r.truncation_error});
  return t;
}

Table run_cc(const ExperimentConfig& c) {
  c.model.validate();
  const bool closed =
      c.method.empty() ? (c.model.n_sites == 2 && !c.lambda_cutoff)
                       : (c.method == "closed");
  if (!c.method.empty() && c.method != "closed" && c.method != "mc")
    throw ConfigError("method: expected 'closed' or 'mc'");
  Table t;
  t.columns = {"alpha",       "e0_per_site", "e0_stderr", "alpha_excited",
               "e1_per_site", "e1_stderr",   "gap",       "gap_stderr"};
  const double g2 = c.model.g_sq;
  const double hi = 4.0 * g2;
  if (closed) {
    if (c.model.n_sites != 2)
      throw ConfigError("method: closed forms exist only for n_sites = 2");
    double a0, e0;
    if (c.has_alpha) {
      a0 = c.cc.alpha;
      e0 = cc_energy_L2_closed_form(g2, a0);
    } else {
      auto m = minimize_scalar(
          [g2](double a) { return cc_energy_L2_closed_form(g2, a); }, 1e-6,
          hi);
      a0 = m.x;
      e0 = m.f;
    }
    double a1, e1;
    if (c.alpha_excited >= 0.0) {
      a1 = c.alpha_excited;
      e1 = cc_excited_L2_closed_form(g2, a1);
    } else {
      auto m = minimize_scalar(
          [g2](double a) { return cc_excited_L2_closed_form(g2, a); }, 1e-6,
          hi);
      a1 = m.x;
      e1 = m.f;
    }
    // per-site energies; total gap = L (E1/L - E0/L)
    t.rows.push_back({a0, e0, 0.0, a1, e1, 0.0, 2.0 * (e1 - e0), 0.0});
    return t;
  }
  if (!c.has_alpha)
    throw ConfigError("cc.alpha: required for the MC estimator");
  CCConfig cc = c.cc;
  cc.lambda_cutoff = c.lambda_cutoff;
  const double a1 = c.alpha_excited >= 0.0 ? c.alpha_excited : cc.alpha;
  const auto e0 = cc_energy_mc(c.model, cc);
  CCConfig cc1 = cc;
  cc1.alpha = a1;
  const auto e1 = cc_excited_mc(c.model, cc1);
  MCEstimate gap;
  if (cc.sampler == CCSampler::quasi_mc) {
    gap.mean = c.model.n_sites * (e1.mean - e0.mean);
    gap.stderr_ = 0.0;
  } else {
    gap = cc_gap_mc(c.model, cc, a1);
  }
  t.rows.push_back({cc.alpha, e0.mean, e0.stderr_, a1, e1.mean, e1.stderr_,
                    gap.mean, gap.stderr_});
  return t;
}

Table run_sphere_ed(const ExperimentConfig& c) {
  if (!c.lambda_cutoff)
    throw ConfigError("lambda_cutoff: required for sphere-ed");
  const auto spec = sphere_spec(c, *c.lambda_cutoff);
  auto h = build_sphere_hamiltonian(c.model, spec);
  SpectrumOptions opts;
  auto s = low_spectrum(h, 2, opts);
  Table t;
  t.columns = {"lambda", "e0", "e1", "gap"};
  t.rows.push_back({*c.lambda_cutoff, s.eigenvalues[0], s.eigenvalues[1],
                    s.eigenvalues[1] - s.eigenvalues[0]});
  return t;
}

Table run_cv_energy(const ExperimentConfig& c) {
  auto p = protocol_config(c);
  if (!c.has_alpha) throw ConfigError("cc.alpha: required for cv-energy");
  const auto im = c.method == "parameter_shift"
                      ? cv::InteractionMethod::parameter_shift
                      : cv::InteractionMethod::cx_ancilla;
  if (!c.method.empty() && c.method != "parameter_shift" &&
      c.method != "cx_ancilla")
    throw ConfigError("method: expected 'parameter_shift' or 'cx_ancilla'");
  auto reg = cv::prepare_cc(p, c.cc.alpha);
  auto er = cv::measure_energy(reg, p, im);
  Table t;
  t.columns = {"n_max",       "alpha",
               "total",       "kinetic",
               "interaction", "anisotropy_spread",
               "post_selection_probability", "leakage"};
  t.rows.push_back({double(p.n_max), c.cc.alpha, er.total, er.kinetic,
                    er.interaction, er.anisotropy_spread,
                    reg.post_selection_probability(), reg.leakage()});
  return t;
}

std::vector<double> effective_times(const ExperimentConfig& c) {
  if (!c.times.empty()) return c.times;
  std::vector<double> t;
  for (int i = 0; i <= 20; ++i) t.push_back(0.1 * i);
  return t;
}

Table run_evolve(const ExperimentConfig& c) {
  c.model.validate();
  const auto times = effective_times(c);
  const std::string m = c.method.empty() ? "o3" : c.method;
  Table t;
  t.columns = {"t", "mean", "stderr"};
  if (m == "o3") {
    auto p = return_probability_o3(c.model, times);
    for (std::size_t i = 0; i < times.size(); ++i)
      t.rows.push_back({times[i], p[i], 0.0});
  } else if (m == "mc" || m == "vacuum-mc") {
    if (!c.lambda_cutoff) throw ConfigError("lambda_cutoff: required for mc");
    const auto spec = sphere_spec(c, *c.lambda_cutoff);
    CCConfig cc = c.cc;
    cc.alpha = 0.0;
    cc.lambda_cutoff = c.lambda_cutoff;
    auto est = m == "mc" ? evolve_return_probability_mc(c.model, spec, times, cc)
                         : vacuum_projected_return_mc(c.model, spec, times, cc);
    for (std::size_t i = 0; i < times.size(); ++i)
      t.rows.push_back({times[i], est[i].mean, est[i].stderr_});
  } else if (m == "cv") {
    auto p = protocol_config(c);
    for (double tv : times)
      t.rows.push_back({tv, cv::return_probability(p, tv), 0.0});
  } else {
    throw ConfigError("method: expected 'o3', 'mc', 'vacuum-mc', or 'cv'");
  }
  return t;
}

Table run_compare(const ExperimentConfig& c) {
  c.model.validate();
  if (c.lambdas.empty())
    throw ConfigError("lambdas: required for compare");
  const auto times = effective_times(c);
  Table t;
  t.columns = {"t", "o3"};
  for (double lam : c.lambdas) {
    t.columns.push_back("p_lambda_" + format_cell(lam));
    t.columns.push_back("stderr_lambda_" + format_cell(lam));
  }
  auto o3 = return_probability_o3(c.model, times);
  std::vector<std::vector<MCEstimate>> per_lambda;
  for (double lam : c.lambdas) {
    CCConfig cc = c.cc;
    cc.alpha = 0.0;
    cc.lambda_cutoff = lam;
    per_lambda.push_back(
        evolve_return_probability_mc(c.model, sphere_spec(c, lam), times, cc));
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<double> row = {times[i], o3[i]};
    for (const auto& col : per_lambda) {
      row.push_back(col[i].mean);
      row.push_back(col[i].stderr_);
    }
    t.rows.push_back(row);
  }
  return t;
}

Table dispatch(const ExperimentConfig& c);

// applies a scalar value at a dotted axis path via the JSON round trip
ExperimentConfig with_axis_value(const ExperimentConfig& base,
                                 const std::string& axis, double value) {
  json j = to_json(base);
  std::string ptr = "/" + axis;
  for (auto& ch : ptr)
    if (ch == '.') ch = '/';
  json::json_pointer p(ptr);
  json prev;
  try {
    prev = j.at(p);
  } catch (const std::exception&) {
    prev = json();  // axis may target an optional field not yet set
  }
  if (prev.is_number_integer() || prev.is_number_unsigned())
    j[p] = static_cast<std::int64_t>(std::llround(value));
  else
    j[p] = value;
  ExperimentConfig out = from_json(j);
  if (out.command.empty() || out.command == "sweep")
    throw ConfigError("sweep: config must name a non-sweep command");
  return out;
}

Table run_sweep(const ExperimentConfig& c) {
  if (c.sweep_axis.empty()) throw ConfigError("sweep.axis: required");
  ExperimentConfig base = c;
  base.command = c.method.empty() ? base.command : c.method;
  Table merged;
  for (double v : c.sweep_values) {
    ExperimentConfig run = with_axis_value(base, c.sweep_axis, v);
    try {
      Table t = dispatch(run);
      if (merged.columns.empty()) {
        merged.columns.push_back(c.sweep_axis);
        for (const auto& col : t.columns) merged.columns.push_back(col);
      }
      for (const auto& row : t.rows) {
        std::vector<double> out = {v};
        out.insert(out.end(), row.begin(), row.end());
        merged.rows.push_back(out);
      }
    } catch (const std::exception&) {
      if (!c.keep_going) throw;
    }
  }
  if (merged.columns.empty()) merged.columns = {c.sweep_axis};
  return merged;
}

Table dispatch(const ExperimentConfig& c) {
  if (c.command == "ed") return run_ed(c);
  if (c.command == "cc") return run_cc(c);
  if (c.command == "sphere-ed") return run_sphere_ed(c);
  if (c.command == "cv-energy") return run_cv_energy(c);
  if (c.command == "evolve") return run_evolve(c);
  if (c.command == "compare") return run_compare(c);
  if (c.command == "sweep") return run_sweep(c);
  throw ConfigError("command: unknown command '" + c.command + "'");
}

// ---------------------------------------------------------------------
// flag wiring

void add_common_flags(CLI::App* cmd, ExperimentConfig& c, std::string& config_path,
                      std::string& sampler, std::string& alpha_str,
                      std::string& alpha_excited_str) {
  cmd->add_option("--config", config_path, "JSON config file (flags override)");
  cmd->add_option("--L", c.model.n_sites, "number of lattice sites");
  cmd->add_option("--g2", c.model.g_sq, "coupling g^2");
  cmd->add_option("--lmax", c.model.l_max, "angular momentum truncation");
  cmd->add_option("--lambda", [&c](const std::vector<std::string>& v) {
        c.lambda_cutoff = std::stod(v.back());
        return true;
      }, "radial cutoff Lambda");
  cmd->add_option("--alpha", alpha_str, "variational parameter");
  cmd->add_option("--alpha-excited", alpha_excited_str,
                  "excited-state variational parameter");
  cmd->add_option("--samples", c.cc.n_samples, "MC sample count");
  cmd->add_option("--sampler", sampler,
                  "quasi_mc | gaussian_radial | exact_radial_alpha0");
  cmd->add_option("--seed", c.cc.seed, "RNG seed");
  cmd->add_option("--method", c.method, "per-command method selector");
  cmd->add_option("--nmax", c.n_max, "Fock cutoff per qumode");
  cmd->add_option("--gamma", c.gamma, "excited-state coupling gamma");
  cmd->add_option("--Gamma", c.capital_gamma, "measurement gate strength");
  cmd->add_option("--steps", c.trotter_steps, "Trotter step count");
  cmd->add_option("--leakage-threshold", c.leakage_threshold,
                  "abort threshold for cumulative gate leakage");
  cmd->add_option("--times", c.times, "time grid")->delimiter(',');
  cmd->add_option("--lambdas", c.lambdas, "Lambda list for compare")
      ->delimiter(',');
  cmd->add_option("--output,-o", c.output_path, "output file (default stdout)");
  cmd->add_option("--format", c.output_format, "csv | json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"O(3) sigma model: ED / coupled-cluster / CV cross-validation"};
  app.require_subcommand(1);

  ExperimentConfig flags;  // flag values; overlaid on the config file
  std::string config_path, sampler, alpha_str, alpha_excited_str;
  std::string sweep_command, sweep_values_str;

  const std::vector<std::string> names = {"ed",        "cc",     "sphere-ed",
                                          "cv-energy", "evolve", "compare",
                                          "sweep"};
  std::vector<CLI::App*> subs;
  for (const auto& n : names) {
    CLI::App* cmd = app.add_subcommand(n);
    add_common_flags(cmd, flags, config_path, sampler, alpha_str,
                     alpha_excited_str);
    if (n == "sweep") {
      cmd->add_option("--axis", flags.sweep_axis,
                      "dotted config path, e.g. model.g_sq");
      // taken as one string so that --values "" means an empty sweep
      cmd->add_option("--values", sweep_values_str,
                      "comma-separated sweep values");
      cmd->add_option("--command", sweep_command, "inner command to run");
      cmd->add_flag("--keep-going", flags.keep_going,
                    "continue past failed sweep points");
    }
    subs.push_back(cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << nlohmann::json{{"error", e.what()}, {"type", "config"}}.dump()
              << '\n';
    return 2;
  }

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw ConfigError("config: cannot open " + config_path);
      json j;
      try {
        j = json::parse(f);
      } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
      cfg = from_json(j);
    }

    // overlay: re-parse so that explicitly passed flags override the file
    ExperimentConfig overlay = cfg;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!subs[i]->parsed()) continue;
      overlay.command = names[i];
      if (subs[i]->count("--L")) overlay.model.n_sites = flags.model.n_sites;
      if (subs[i]->count("--g2")) overlay.model.g_sq = flags.model.g_sq;
      if (subs[i]->count("--lmax")) overlay.model.l_max = flags.model.l_max;
      if (subs[i]->count("--lambda")) overlay.lambda_cutoff = flags.lambda_cutoff;
      if (!alpha_str.empty()) {
        overlay.cc.alpha = std::stod(alpha_str);
        overlay.has_alpha = true;
      }
      if (!alpha_excited_str.empty())
        overlay.alpha_excited = std::stod(alpha_excited_str);
      if (subs[i]->count("--samples")) overlay.cc.n_samples = flags.cc.n_samples;
      if (!sampler.empty()) overlay.cc.sampler = sampler_from_name(sampler);
      if (subs[i]->count("--seed")) overlay.cc.seed = flags.cc.seed;
      if (subs[i]->count("--method")) overlay.method = flags.method;
      if (subs[i]->count("--nmax")) overlay.n_max = flags.n_max;
      if (subs[i]->count("--gamma")) overlay.gamma = flags.gamma;
      if (subs[i]->count("--Gamma"))
        overlay.capital_gamma = flags.capital_gamma;
      if (subs[i]->count("--steps")) overlay.trotter_steps = flags.trotter_steps;
      if (subs[i]->count("--leakage-threshold"))
        overlay.leakage_threshold = flags.leakage_threshold;
      if (subs[i]->count("--times")) overlay.times = flags.times;
      if (subs[i]->count("--lambdas")) overlay.lambdas = flags.lambdas;
      if (names[i] == "sweep") {
        if (subs[i]->count("--axis")) overlay.sweep_axis = flags.sweep_axis;
        if (subs[i]->count("--values")) {
          overlay.sweep_values.clear();
          std::stringstream ss(sweep_values_str);
          std::string tok;
          while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            try {
              overlay.sweep_values.push_back(std::stod(tok));
            } catch (const std::exception&) {
              throw ConfigError("--values entry '" + tok +
                                "' is not a number");
            }
          }
        }
        if (subs[i]->count("--keep-going")) overlay.keep_going = true;
        if (!sweep_command.empty()) overlay.method = sweep_command;
      }
      if (subs[i]->count("--output")) overlay.output_path = flags.output_path;
      if (subs[i]->count("--format"))
        overlay.output_format = flags.output_format;
    }
    if (overlay.output_format != "csv" && overlay.output_format != "json")
      throw ConfigError("output.format: expected 'csv' or 'json'");

    Table t = dispatch(overlay);
    emit(t, overlay);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << nlohmann::json{{"error", e.what()}, {"type", "config"}}.dump()
              << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << nlohmann::json{{"error", e.what()}, {"type", "config"}}.dump()
              << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", e.what()}, {"type", "numeric"}}.dump()
              << '\n';
    return 1;
  }
}
