#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"
#include "mdopt/io.h"

namespace mdopt {
namespace {

using ordered_json = nlohmann::ordered_json;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

ordered_json record_json(const StepRecord& r) {
  ordered_json j;
  j["index"] = r.index;
  j["kind"] = to_string(r.kind);
  j["h"] = r.h;
  if (r.constraint_index) j["constraint_index"] = *r.constraint_index;
  if (r.f_value) j["f_value"] = *r.f_value;
  j["g_value"] = r.g_value;
  j["grad_dual_norm"] = r.grad_dual_norm;
  return j;
}

ordered_json vec_json(const Vec& v) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(real_to_string(v[i]));
  return a;
}

ordered_json mat_json(const Mat& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i)
    rows.push_back(vec_json(m.row(i).transpose()));
  return rows;
}

Vec vec_from_json(const nlohmann::json& a) {
  Vec v(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    v[static_cast<int>(i)] = real_from_string(a[i].get<std::string>());
  return v;
}

// Everything except reference_opt; the loader compares this against the file
// to catch drift between committed fixtures and the factories.
ordered_json fixture_body(const Problem& p) {
  ordered_json j;
  j["name"] = p.name;
  j["dim"] = p.dim;
  ordered_json mats = ordered_json::object();
  for (const auto& [key, m] : p.fixture.matrices) mats[key] = mat_json(m);
  j["matrices"] = mats;
  ordered_json vecs = ordered_json::object();
  for (const auto& [key, v] : p.fixture.vectors) vecs[key] = vec_json(v);
  vecs["x0"] = vec_json(p.x0);
  j["vectors"] = vecs;
  ordered_json consts = ordered_json::object();
  for (const auto& [key, c] : p.fixture.constants)
    consts[key] = real_to_string(c);
  consts["theta0"] = real_to_string(p.theta0);
  consts["M_g"] = real_to_string(p.M_g);
  consts["mu"] = real_to_string(p.mu);
  if (p.R0) consts["R0"] = real_to_string(*p.R0);
  consts["verify_eps"] = real_to_string(p.verify_eps);
  j["constants"] = consts;
  return j;
}

}  // namespace

std::string real_to_string(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

double real_from_string(const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw std::invalid_argument("not a real number: " + s);
  return v;
}

void write_trace_jsonl(const std::filesystem::path& path,
                       const std::vector<StepRecord>& trace) {
  auto out = open_out(path);
  for (const auto& r : trace) out << record_json(r).dump() << '\n';
}

SummaryRow make_summary_row(const std::string& algorithm,
                            const Problem& problem, double eps,
                            const RunResult& result) {
  SummaryRow row;
  row.algorithm = algorithm;
  row.problem = problem.name;
  row.eps = eps;
  row.iterations = result.iterations;
  row.productive = result.productive;
  row.nonproductive = result.nonproductive();
  row.f_out = problem.objective.eval(result.output);
  row.g_out = problem.constraints.max_value(result.output);
  row.stop_reason = to_string(result.stop);
  row.wall_ms = result.wall_seconds * 1e3;
  return row;
}

SummaryRow make_summary_row(const std::string& algorithm,
                            const Problem& problem, double eps,
                            const RestartReport& report) {
  SummaryRow row;
  row.algorithm = algorithm;
  row.problem = problem.name;
  row.eps = eps;
  row.iterations = report.total_inner_iterations;
  for (const auto& stage : report.stages) {
    row.productive += stage.inner.productive;
    row.wall_ms += stage.inner.wall_seconds * 1e3;
  }
  row.nonproductive = row.iterations - row.productive;
  row.f_out = problem.objective.eval(report.output);
  row.g_out = problem.constraints.max_value(report.output);
  row.stop_reason = to_string(report.stop);
  return row;
}

void write_summary_csv(const std::filesystem::path& path,
                       std::vector<SummaryRow> rows, bool timings) {
  std::sort(rows.begin(), rows.end(),
            [](const SummaryRow& a, const SummaryRow& b) {
              return std::tie(a.problem, a.algorithm, a.eps) <
                     std::tie(b.problem, b.algorithm, b.eps);
            });
  auto out = open_out(path);
  out << "algorithm,problem,eps,iterations,productive,nonproductive,"
         "f_out,g_out,stop_reason";
  if (timings) out << ",wall_ms";
  out << '\n';
  char ms[32];
  for (const auto& r : rows) {
    out << r.algorithm << ',' << r.problem << ',' << real_to_string(r.eps)
        << ',' << r.iterations << ',' << r.productive << ','
        << r.nonproductive << ',' << real_to_string(r.f_out) << ','
        << real_to_string(r.g_out) << ',' << r.stop_reason;
    if (timings) {
      std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
      out << ',' << ms;
    }
    out << '\n';
  }
}

void write_restart_report(const std::filesystem::path& path,
                          const std::string& algorithm,
                          const std::string& problem,
                          const RestartReport& report) {
  ordered_json j;
  j["algorithm"] = algorithm;
  j["problem"] = problem;
  j["p_hat"] = report.p_hat;
  j["zero_restarts"] = report.zero_restarts;
  j["total_inner_iterations"] = report.total_inner_iterations;
  j["stop_reason"] = to_string(report.stop);
  ordered_json stages = ordered_json::array();
  for (const auto& s : report.stages) {
    ordered_json stage;
    stage["p"] = s.p;
    stage["radius"] = real_to_string(s.radius);
    stage["eps_p"] = real_to_string(s.eps_p);
    stage["iterations"] = s.inner.iterations;
    stage["productive"] = s.inner.productive;
    stage["nonproductive"] = s.inner.nonproductive();
    stage["stop_reason"] = to_string(s.inner.stop);
    stages.push_back(stage);
  }
  j["stages"] = stages;
  open_out(path) << j.dump(2) << '\n';
}

void save_problem_fixture(const std::filesystem::path& path,
                          const Problem& problem) {
  ordered_json j = fixture_body(problem);
  if (problem.reference) {
    const auto& ref = *problem.reference;
    ordered_json r;
    r["x_star"] = vec_json(ref.x_star);
    r["f_star"] = real_to_string(ref.f_star);
    r["provenance"] = ref.provenance;
    r["budget"] = ref.budget;
    r["residual"] = real_to_string(ref.residual);
    j["reference_opt"] = r;
  }
  open_out(path) << j.dump(2) << '\n';
}

Problem load_problem_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("fixture not found: " + path.string());
  nlohmann::json file = nlohmann::json::parse(in);

  Problem p = problem_by_name(file.at("name").get<std::string>());
  nlohmann::json ref;
  if (file.contains("reference_opt")) {
    ref = file["reference_opt"];
    file.erase("reference_opt");
  }
  nlohmann::json expected =
      nlohmann::json::parse(fixture_body(p).dump());
  if (file != expected)
    throw std::runtime_error("fixture drift: " + path.string() +
                             " does not match the built-in problem");

  if (!ref.is_null()) {
    ReferenceOpt r;
    r.x_star = vec_from_json(ref.at("x_star"));
    if (r.x_star.size() != p.dim)
      throw std::runtime_error("fixture reference has wrong dimension");
    r.f_star = real_from_string(ref.at("f_star").get<std::string>());
    r.provenance = ref.value("provenance", "");
    r.budget = ref.value("budget", 0L);
    if (ref.contains("residual"))
      r.residual = real_from_string(ref["residual"].get<std::string>());
    p.reference = std::move(r);
  }
  return p;
}

}  // namespace mdopt
