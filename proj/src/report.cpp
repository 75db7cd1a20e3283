#include "tdnls/report.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "tdnls/errors.hpp"

namespace tdnls::report {

namespace {

const char* method_name(ZeroTestMethod m) { return m == ZeroTestMethod::Exact ? "exact" : "sampled"; }

json zero_test_json(const ZeroTest& z) {
  json j;
  j["method"] = method_name(z.method);
  j["zero"] = z.zero;
  j["max_abs"] = z.max_abs;
  j["max_rel"] = z.max_rel;
  j["samples"] = z.samples;
  if (z.normal_form)
    j["normal_form"] = z.normal_form->to_string();
  return j;
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace

json painleve_json(const Expr& F, const painleve::PainleveReport& r) {
  json j;
  j["F"] = to_string(F);
  j["leading"] = {{"p", r.leading.p}, {"q", r.leading.q}};
  json res = json::array();
  for (const auto& s : r.resonances)
    res.push_back(s.index);
  j["resonances"] = res;
  j["n3_residual_norm"] = r.n3_residual_norm;
  j["n4_identically_zero"] = r.n4_identically_zero;
  j["constraint_residual"] = r.constraint_residual_text;
  j["verdict"] = r.verdict == painleve::Verdict::Pass ? "pass" : "fail";
  j["details"] = {{"n3", zero_test_json(r.n3_test)},
                  {"n4", zero_test_json(r.n4_test)},
                  {"constraint", zero_test_json(r.constraint_test)},
                  {"inverse_curvature", zero_test_json(r.inverse_curvature_test)}};
  if (!r.notes.empty())
    j["notes"] = r.notes;
  return j;
}

json case_json(const verify::CaseReport& r) {
  json j;
  j["case"] = r.name;
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  j["checks"] = checks;
  j["verdict"] = r.pass() ? "pass" : "fail";
  return j;
}

json convergence_json(const solver::ConvergenceTable& t) {
  json j;
  j["case"] = solver::to_string(t.study);
  j["t0"] = t.t0;
  j["t1"] = t.t1;
  j["x_min"] = t.grid_template.x_min;
  j["x_max"] = t.grid_template.x_max;
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"dt", r.dt}, {"n", r.n}, {"linf", r.linf}, {"l2", r.l2}, {"mass_drift", r.mass_drift}});
  j["rows"] = rows;
  j["temporal_order"] = t.temporal_order ? json(*t.temporal_order) : json(nullptr);
  return j;
}

std::string to_text(const json& j) { return j.dump(2) + "\n"; }

void write_json(const std::string& path, const json& j) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw ConfigError("cannot open '" + path + "' for writing");
  os << to_text(j);
  if (!os)
    throw ConfigError("failed writing '" + path + "'");
}

json manifest_json(const std::string& subcommand, const json& parameters, const json& verdicts,
                   const std::vector<std::string>& outputs) {
  json j;
  j["subcommand"] = subcommand;
  j["parameters"] = parameters;
  j["tool_version"] = kToolVersion;
  j["wall_clock"] = utc_now();
  j["verdicts"] = verdicts;
  json files = json::array();
  for (const auto& p : outputs)
    files.push_back({{"path", p}, {"bytes", std::filesystem::file_size(p)}});
  j["outputs"] = files;
  return j;
}

} // namespace tdnls::report
