#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <future>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tdnls/analytic.hpp"
#include "tdnls/errors.hpp"
#include "tdnls/field_io.hpp"
#include "tdnls/painleve.hpp"
#include "tdnls/report.hpp"
#include "tdnls/solver.hpp"
#include "tdnls/transform.hpp"
#include "tdnls/verify.hpp"

namespace tdnls::cli {

namespace {

using report::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::string num(double v) { return format_double(v); }

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ','))
    if (!item.empty())
      out.push_back(item);
  return out;
}

std::vector<double> number_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  for (const auto& s : split_list(text)) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (*end != '\0')
      throw ConfigError(std::string(flag) + ": '" + s + "' is not a number");
    out.push_back(v);
  }
  if (out.empty())
    throw ConfigError(std::string(flag) + " needs at least one value");
  return out;
}

// Config values become leading `--key=value` arguments, so flags given on the
// command line come later and win under the take-last policy.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  if (args.size() < 2)
    return args;
  std::string path;
  for (std::size_t i = 2; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty())
    return args;
  std::ifstream is(path);
  if (!is)
    throw ConfigError("cannot open config file '" + path + "'");
  json cfg;
  try {
    cfg = json::parse(is);
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!cfg.is_object())
    throw ConfigError("config file must hold a JSON object of flag names to values");
  std::vector<std::string> injected;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "config")
      continue;
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>())
        injected.push_back(flag);
    } else if (value.is_string()) {
      injected.push_back(flag + "=" + value.get<std::string>());
    } else if (value.is_number()) {
      injected.push_back(flag + "=" + (value.is_number_float() ? num(value.get<double>()) : value.dump()));
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) {
        if (!joined.empty())
          joined += ',';
        joined += v.is_string() ? v.get<std::string>() : (v.is_number_float() ? num(v.get<double>()) : v.dump());
      }
      injected.push_back(flag + "=" + joined);
    } else {
      throw ConfigError("config key '" + key + "' has an unsupported value");
    }
  }
  std::vector<std::string> out(args.begin(), args.begin() + 2);
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), args.begin() + 2, args.end());
  return out;
}

void write_manifest(const std::string& base, const std::string& subcommand, const json& params,
                    const json& verdicts, const std::vector<std::string>& outputs) {
  report::write_json(base + ".manifest.json", report::manifest_json(subcommand, params, verdicts, outputs));
}

// painleve ------------------------------------------------------------------

struct PainleveArgs {
  std::string F, psi = "t^2", u0 = "1", out;
  int samples = 32;
};

int cmd_painleve(const PainleveArgs& a, std::ostream& out) {
  const Expr F = parse(a.F);
  painleve::CheckOptions opts;
  opts.psi = parse(a.psi);
  opts.u0 = parse(a.u0);
  opts.sampling.samples = a.samples;
  const auto r = painleve::theorem1_check(F, opts);
  const bool pass = r.verdict == painleve::Verdict::Pass;

  out << "F = " << to_string(F) << "\n";
  out << "leading order: p = " << r.leading.p << ", q = " << r.leading.q << ", u0*v0 = "
      << to_string(r.leading.product_constraint) << "\n";
  out << "resonances:";
  for (const auto& s : r.resonances)
    out << ' ' << s.index;
  out << "\n";
  out << "n=3 compatibility residual norm: " << num(r.n3_residual_norm) << "\n";
  out << "n=4 compatibility identically zero: " << (r.n4_identically_zero ? "yes" : "no") << "\n";
  out << "2F_t^2 - F*F_tt = " << r.constraint_residual_text << "\n";
  out << "verdict: " << (pass ? "pass" : "fail") << "\n";

  if (!a.out.empty()) {
    report::write_json(a.out, report::painleve_json(F, r));
    write_manifest(a.out, "painleve", {{"F", a.F}, {"psi", a.psi}, {"u0", a.u0}, {"samples", a.samples}},
                   {{"painleve", pass ? "pass" : "fail"}}, {a.out});
  }
  return pass ? kPass : kFail;
}

// simulate ------------------------------------------------------------------

struct SimulateArgs {
  std::string F = "1", init = "standing:x0=0", out;
  double t0 = 0.0, t1 = 1.0, dt = 1e-3, xmin = -20.0 * M_PI, xmax = 20.0 * M_PI, pole_guard = 1e-2;
  int nx = 1024;
  long dump_every = 0;
};

std::map<std::string, double> key_values(const std::string& text) {
  std::map<std::string, double> kv;
  for (const auto& item : split_list(text)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--init parameter '" + item + "' must look like name=value");
    char* end = nullptr;
    const std::string value = item.substr(eq + 1);
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0')
      throw ConfigError("--init parameter '" + item + "' has a non-numeric value");
    kv[item.substr(0, eq)] = v;
  }
  return kv;
}

double take(std::map<std::string, double>& kv, const std::string& key, double fallback) {
  const auto it = kv.find(key);
  if (it == kv.end())
    return fallback;
  const double v = it->second;
  kv.erase(it);
  return v;
}

ComplexField initial_field(const SimulateArgs& a) {
  const auto colon = a.init.find(':');
  const std::string kind = a.init.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : a.init.substr(colon + 1);
  if (kind == "file") {
    const auto slices = read_fields_csv(rest);
    for (const auto& s : slices)
      if (std::abs(s.time - a.t0) <= 1e-12 * std::max(1.0, std::abs(a.t0)))
        return s;
    if (slices.size() == 1) {
      ComplexField f = slices.front();
      f.time = a.t0;
      return f;
    }
    throw ConfigError("no slice at t0 = " + num(a.t0) + " in '" + rest + "'");
  }
  GridSpec grid{a.xmin, a.xmax, a.nx};
  grid.validate();
  auto kv = key_values(rest);
  analytic::SolutionPtr sol;
  if (kind == "standing") {
    sol = analytic::standing_soliton(take(kv, "x0", 0.0));
  } else if (kind == "travelling") {
    const double k = take(kv, "k", 1.0);
    sol = analytic::travelling_soliton(k, take(kv, "v", 1.0));
  } else if (kind == "td") {
    sol = analytic::td_soliton(take(kv, "x0", 0.0));
  } else {
    throw ConfigError("--init must start with standing:, travelling:, td: or file:");
  }
  if (!kv.empty())
    throw ConfigError("--init: unknown parameter '" + kv.begin()->first + "' for " + kind);
  return sample_wave(*sol, grid, a.t0);
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const Expr F = parse(a.F);
  const ComplexField u0 = initial_field(a);
  const solver::EvolveConfig cfg{a.t0, a.t1, a.dt, F, a.pole_guard};
  const solver::CoefficientIntegral coeff(F);

  std::vector<ComplexField> dumps;
  json series = json::array();
  auto observer = [&](const ComplexField& u, long step) {
    dumps.push_back(u);
    series.push_back({{"step", step},
                      {"t", u.time},
                      {"mass", solver::mass(u)},
                      {"energy", solver::energy(u, coeff.value(u.time))}});
  };
  const auto [steps, h] = solver::step_plan(cfg);
  const ComplexField u1 = solver::evolve(u0, cfg, observer, a.dump_every);

  const double m0 = series.front()["mass"].get<double>(), m1 = series.back()["mass"].get<double>();
  const double e0 = series.front()["energy"].get<double>(), e1 = series.back()["energy"].get<double>();
  const double mass_drift = std::abs(m1 - m0) / std::max(std::abs(m0), 1e-300);
  const double energy_drift = std::abs(e1 - e0) / std::max(std::abs(e0), 1e-300);

  const std::string csv = a.out + ".csv", meta = a.out + ".json";
  write_fields_csv(csv, dumps);
  json params = {{"F", to_string(F)},       {"init", a.init},   {"t0", a.t0},         {"t1", a.t1},
                 {"dt", a.dt},              {"nx", u0.grid.n},  {"xmin", u0.grid.x_min}, {"xmax", u0.grid.x_max},
                 {"pole_guard", a.pole_guard}, {"dump_every", a.dump_every}};
  json doc = {{"parameters", params},
              {"grid", {{"x_min", u1.grid.x_min}, {"x_max", u1.grid.x_max}, {"n", u1.grid.n}}},
              {"steps", steps},
              {"step", h},
              {"coefficient_integral", coeff.exact() ? "closed-form" : "gauss-legendre"},
              {"series", series},
              {"mass_drift", mass_drift},
              {"energy_drift", energy_drift}};
  report::write_json(meta, doc);
  write_manifest(a.out, "simulate", params, {{"simulate", "completed"}}, {csv, meta});

  out << "evolved " << steps << " steps of " << num(h) << " from t = " << num(a.t0) << " to t = " << num(a.t1)
      << " on n = " << u1.grid.n << "\n";
  out << "relative mass drift: " << num(mass_drift) << "\n";
  out << "relative energy change: " << num(energy_drift) << "\n";
  out << "wrote " << csv << " and " << meta << "\n";
  return kPass;
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
  std::string name, out, dump;
  int points = 100;
  std::uint64_t seed = verify::CaseOptions{}.seed;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  std::vector<std::string> names;
  if (a.name == "all")
    names = verify::case_names();
  else
    names.push_back(a.name);
  const verify::CaseOptions opts{a.seed, a.points};
  std::vector<verify::CaseReport> reports;
  for (const auto& n : names)
    reports.push_back(verify::run_case(n, opts));

  bool pass = true;
  json cases = json::array(), verdicts = json::object();
  std::vector<ComplexField> dumps;
  for (const auto& r : reports) {
    for (const auto& c : r.checks)
      out << r.name << ": " << c.name << " = " << num(c.value) << " (tolerance " << num(c.tolerance) << ") "
          << (c.pass ? "pass" : "FAIL") << "\n";
    pass = pass && r.pass();
    cases.push_back(report::case_json(r));
    verdicts[r.name] = r.pass() ? "pass" : "fail";
    dumps.insert(dumps.end(), r.dumps.begin(), r.dumps.end());
  }
  out << "verdict: " << (pass ? "pass" : "fail") << "\n";

  std::vector<std::string> outputs;
  if (!a.dump.empty()) {
    write_fields_csv(a.dump, dumps, true);
    outputs.push_back(a.dump);
  }
  if (!a.out.empty()) {
    json doc = names.size() == 1 ? cases.front() : json{{"cases", cases}, {"verdict", pass ? "pass" : "fail"}};
    report::write_json(a.out, doc);
    outputs.insert(outputs.begin(), a.out);
    write_manifest(a.out, "verify", {{"case", a.name}, {"points", a.points}, {"seed", a.seed}}, verdicts, outputs);
  }
  return pass ? kPass : kFail;
}

// transform -----------------------------------------------------------------

struct TransformArgs {
  std::string spec, input, out;
  std::optional<double> t;
};

int cmd_transform(const TransformArgs& a, std::ostream& out) {
  const auto spec = transform::TransformSpec::parse(a.spec);
  const auto slices = read_fields_csv(a.input);
  const ComplexField* chosen = nullptr;
  ComplexField relabelled;
  if (a.t) {
    for (const auto& s : slices)
      if (std::abs(s.time - *a.t) <= 1e-12 * std::max(1.0, std::abs(*a.t)))
        chosen = &s;
    if (!chosen && slices.size() == 1) {
      relabelled = slices.front();
      relabelled.time = *a.t;
      chosen = &relabelled;
    }
    if (!chosen)
      throw ConfigError("no slice at t = " + num(*a.t) + " in '" + a.input + "'");
  } else {
    if (slices.size() != 1)
      throw ConfigError("'" + a.input + "' holds several slices; pick one with --t");
    chosen = &slices.front();
  }
  const ComplexField result = transform::transform_field(spec, *chosen);
  write_fields_csv(a.out, {result});
  write_manifest(a.out, "transform",
                 {{"spec", spec.to_string()}, {"input", a.input}, {"t", chosen->time}},
                 {{"transform", "completed"}}, {a.out});
  out << "applied " << (spec.is_identity() ? std::string("identity") : spec.to_string()) << " at t = "
      << num(chosen->time) << " -> t = " << num(result.time) << "\n";
  out << "output grid [" << num(result.grid.x_min) << ", " << num(result.grid.x_max) << "), n = " << result.grid.n
      << "\n";
  out << "wrote " << a.out << "\n";
  return kPass;
}

// sweep ---------------------------------------------------------------------

struct SweepArgs {
  std::string cases = "travelling,standing,td", dts = "0.004,0.002,0.001,0.0005", ns = "1024", out_dir;
  double order_tol = 0.2;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const auto names = split_list(a.cases);
  if (names.empty())
    throw ConfigError("--cases needs at least one case");
  std::vector<solver::StudyCase> studies;
  for (const auto& n : names)
    studies.push_back(solver::parse_study_case(n));
  const auto dts = number_list(a.dts, "--dt");
  std::vector<int> ns;
  for (double v : number_list(a.ns, "--nx")) {
    if (v != std::floor(v))
      throw ConfigError("--nx values must be integers");
    GridSpec{0.0, 1.0, static_cast<int>(v)}.validate();
    ns.push_back(static_cast<int>(v));
  }
  for (double dt : dts)
    if (!(dt > 0.0))
      throw ConfigError("--dt values must be positive");

  std::vector<std::future<solver::ConvergenceTable>> jobs;
  for (auto s : studies)
    jobs.push_back(std::async(std::launch::async, [s, &dts, &ns] { return solver::convergence_study(s, dts, ns); }));

  bool pass = true;
  json verdicts = json::object();
  std::vector<std::string> outputs;
  std::filesystem::create_directories(a.out_dir);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto table = jobs[i].get();
    const std::string dir = a.out_dir + "/" + solver::to_string(table.study);
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/convergence.json";
    report::write_json(path, report::convergence_json(table));
    outputs.push_back(path);
    const bool ok = table.temporal_order && std::abs(*table.temporal_order - 2.0) <= a.order_tol;
    pass = pass && ok;
    verdicts[solver::to_string(table.study)] = ok ? "pass" : "fail";
    out << solver::to_string(table.study) << ":\n";
    for (const auto& r : table.rows)
      out << "  dt = " << num(r.dt) << ", n = " << r.n << ": Linf = " << num(r.linf) << ", L2 = " << num(r.l2)
          << "\n";
    out << "  fitted temporal order: " << (table.temporal_order ? num(*table.temporal_order) : "n/a") << " "
        << (ok ? "pass" : "FAIL") << "\n";
  }
  write_manifest(a.out_dir + "/sweep", "sweep",
                 {{"cases", a.cases}, {"dt", a.dts}, {"nx", a.ns}, {"order_tol", a.order_tol}}, verdicts, outputs);
  out << "verdict: " << (pass ? "pass" : "fail") << "\n";
  return pass ? kPass : kFail;
}

} // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  CLI::App app{"Integrability checks, exact solutions, symmetry maps and split-step simulation for "
               "i u_t + u_xx + F(t)|u|^2 u = 0.",
               "tdnls"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", report::kToolVersion);
  std::string config;
  auto add_config = [&config](CLI::App* sub) {
    sub->add_option("--config", config, "JSON object of flag names to values; command-line flags override it");
  };

  PainleveArgs pa;
  auto* painleve_cmd = app.add_subcommand("painleve", "Singularity analysis of the equation with coefficient F(t)");
  painleve_cmd->add_option("--F", pa.F, "coefficient F(t), e.g. \"1/(2*t+3)\"")->required();
  painleve_cmd->add_option("--psi", pa.psi, "singular manifold shift psi(t) in xi = x + psi(t)")->capture_default_str();
  painleve_cmd->add_option("--u0", pa.u0, "free leading coefficient u0(t)")->capture_default_str();
  painleve_cmd->add_option("--samples", pa.samples, "sample points for non-rational residuals")->capture_default_str();
  painleve_cmd->add_option("--out", pa.out, "JSON report path (manifest goes to <out>.manifest.json)");
  add_config(painleve_cmd);

  SimulateArgs sa;
  auto* simulate_cmd = app.add_subcommand("simulate", "Split-step Fourier evolution on a periodic grid");
  simulate_cmd->add_option("--F", sa.F, "coefficient F(t)")->capture_default_str();
  simulate_cmd->add_option("--t0", sa.t0, "start time")->capture_default_str();
  simulate_cmd->add_option("--t1", sa.t1, "end time (t1 < t0 integrates backwards)")->capture_default_str();
  simulate_cmd->add_option("--dt", sa.dt, "time step")->capture_default_str();
  simulate_cmd->add_option("--nx", sa.nx, "grid points (power of two, >= 16)")->capture_default_str();
  simulate_cmd->add_option("--xmin", sa.xmin, "left end of the periodic domain")->capture_default_str();
  simulate_cmd->add_option("--xmax", sa.xmax, "right end of the periodic domain")->capture_default_str();
  simulate_cmd
      ->add_option("--init", sa.init,
                   "initial data: standing:x0=..|travelling:k=..,v=..|td:x0=..|file:<csv> (sampled at t0)")
      ->capture_default_str();
  simulate_cmd->add_option("--dump-every", sa.dump_every, "also dump every K-th step (0: initial and final only)")
      ->capture_default_str();
  simulate_cmd->add_option("--pole-guard", sa.pole_guard, "minimum distance from [t0, t1] to a pole of F")
      ->capture_default_str();
  simulate_cmd->add_option("--out", sa.out, "output prefix: <out>.csv, <out>.json, <out>.manifest.json")->required();
  add_config(simulate_cmd);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run a named verification case");
  verify_cmd
      ->add_option("--case", va.name, "standing|travelling|td-soliton|ansatz|ode-g|theorem2|all")
      ->required();
  verify_cmd->add_option("--points", va.points, "random sample points per residual check")->capture_default_str();
  verify_cmd->add_option("--seed", va.seed, "seed for the sample points")->capture_default_str();
  verify_cmd->add_option("--out", va.out, "JSON report path (manifest goes to <out>.manifest.json)");
  verify_cmd->add_option("--dump", va.dump, "CSV of sampled fields with columns t,x,re,im,abs");
  add_config(verify_cmd);

  TransformArgs ta;
  auto* transform_cmd = app.add_subcommand("transform", "Apply a symmetry transformation to a sampled field");
  transform_cmd
      ->add_option("--spec", ta.spec,
                   "steps separated by ';': D(delta) dilatation, E(kappa) expansion, T(eps) time translation, "
                   "B(c) Galilean boost, Dmap = T(1);E(1);T(1)")
      ->required();
  transform_cmd->add_option("--input", ta.input, "field CSV with columns t,x,re,im")->required();
  transform_cmd->add_option("--t", ta.t, "time stamp of the slice to transform (stamps a single-slice file)");
  transform_cmd->add_option("--out", ta.out, "output CSV (manifest goes to <out>.manifest.json)")->required();
  add_config(transform_cmd);

  SweepArgs wa;
  auto* sweep_cmd = app.add_subcommand("sweep", "Convergence study of the solver against closed-form solutions");
  sweep_cmd->add_option("--cases", wa.cases, "comma-separated cases: travelling, standing, td")->capture_default_str();
  sweep_cmd->add_option("--dt", wa.dts, "comma-separated time steps")->capture_default_str();
  sweep_cmd->add_option("--nx", wa.ns, "comma-separated grid sizes")->capture_default_str();
  sweep_cmd->add_option("--order-tol", wa.order_tol, "allowed deviation of the fitted order from 2")
      ->capture_default_str();
  sweep_cmd->add_option("--out-dir", wa.out_dir, "directory receiving <case>/convergence.json")->required();
  add_config(sweep_cmd);

  std::vector<char*> argv;
  for (auto& s : args)
    argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (painleve_cmd->parsed())
      return cmd_painleve(pa, out);
    if (simulate_cmd->parsed())
      return cmd_simulate(sa, out);
    if (verify_cmd->parsed())
      return cmd_verify(va, out);
    if (transform_cmd->parsed())
      return cmd_transform(ta, out);
    if (sweep_cmd->parsed())
      return cmd_sweep(wa, out);
  } catch (const InstabilityError& e) {
    err << "instability: " << e.what() << "\n";
    return kFail;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

} // namespace tdnls::cli
