#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mdopt/io.h"
#include "mdopt/problem.h"
#include "mdopt/restart.h"
#include "mdopt/solve.h"
#include "mdopt/verify.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace mdopt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIncomplete = 1;  // a run hit the iteration cap
constexpr int kExitConfig = 2;
constexpr int kExitViolation = 3;
constexpr int kExitMissingFixture = 4;

struct ExitError {
  int code;
  std::string message;
};

// Published iteration counts and wall times for the comparison suites.
struct PublishedCell {
  const char* alg;
  double eps;
  long iterations;
  long seconds;
};

const PublishedCell kFtsQuadratic[] = {
    {"alg5", 0.5, 1659, 97},    {"alg1", 0.5, 283, 15},
    {"alg6", 0.5, 231, 6},      {"alg5", 0.25, 5951, 336},
    {"alg1", 0.25, 899, 49},    {"alg6", 0.25, 774, 22},
    {"alg5", 0.125, 22356, 1491}, {"alg1", 0.125, 3159, 180},
    {"alg6", 0.125, 2850, 100},
};

const PublishedCell kFtsNonsmooth[] = {
    {"alg5", 0.5, 3709, 279},   {"alg1", 0.5, 671, 29},
    {"alg6", 0.5, 437, 21},     {"alg5", 0.25, 14212, 833},
    {"alg1", 0.25, 2418, 103},  {"alg6", 0.25, 1970, 95},
    {"alg5", 0.125, 54655, 2980}, {"alg1", 0.125, 8979, 455},
    {"alg6", 0.125, 8329, 344},
};

struct PublishedPair {
  long plain, plain_s, restarted, restarted_s;
};

const PublishedPair kStronglyConvex[5] = {
    {115973, 556, 95447, 457}, {57798, 421, 45455, 314},
    {56874, 302, 50747, 258},  {13720, 75, 6764, 38},
    {64324, 364, 55073, 292},
};

bool is_restart(const std::string& alg) {
  return alg == "restart_alg1" || alg == "restart_alg2";
}

bool known_algorithm(const std::string& alg) {
  return alg == "alg1" || alg == "alg2" || alg == "alg5" || alg == "alg6" ||
         is_restart(alg);
}

Problem load_problem(const std::string& id, const fs::path& data_dir,
                     bool need_fixture) {
  Problem base = [&] {
    try {
      return problem_by_name(id);
    } catch (const std::invalid_argument& e) {
      throw ExitError{kExitConfig, e.what()};
    }
  }();
  fs::path file = data_dir / (id + ".json");
  if (fs::exists(file)) {
    try {
      return load_problem_fixture(file);
    } catch (const std::exception& e) {
      throw ExitError{kExitViolation, e.what()};
    }
  }
  if (need_fixture)
    throw ExitError{kExitMissingFixture, "missing fixture: " + file.string()};
  return base;
}

RunResult run_single(const std::string& alg, const Problem& p, double eps,
                     const SolveOptions& opts) {
  ProxSetup setup = p.prox();
  if (alg == "alg1") return solve_adaptive(p, setup, eps, p.x0, opts);
  if (alg == "alg2") return solve_partially_adaptive(p, setup, eps, p.x0, opts);
  if (alg == "alg5") return solve_lipschitz(p, setup, eps, p.x0, opts);
  if (alg == "alg6") return solve_multi_constraint(p, setup, eps, p.x0, opts);
  throw ExitError{kExitConfig, "unknown algorithm: " + alg};
}

int do_run(const Problem& problem, const std::vector<std::string>& algs,
           const std::vector<double>& eps_list, bool audit, bool timings,
           const fs::path& out_dir, long cap) {
  for (const auto& alg : algs)
    if (!known_algorithm(alg))
      throw ExitError{kExitConfig, "unknown algorithm: " + alg};
  for (double eps : eps_list)
    if (eps <= 0.0) throw ExitError{kExitConfig, "eps must be positive"};

  fs::create_directories(out_dir);
  std::vector<SummaryRow> rows;
  bool violation = false, incomplete = false;

  for (const auto& alg : algs) {
    for (double eps : eps_list) {
      std::string tag = problem.name + "-" + alg + "-eps" + real_to_string(eps);
      try {
        if (is_restart(alg)) {
          SolveOptions opts;
          opts.iteration_cap = cap;
          opts.record_trace = false;
          RestartReport report = solve_restarted(
              problem,
              alg == "restart_alg1" ? InnerSolver::Adaptive
                                    : InnerSolver::PartiallyAdaptive,
              eps, opts);
          rows.push_back(make_summary_row(alg, problem, eps, report));
          write_restart_report(out_dir / ("restart-" + tag + ".json"), alg,
                               problem.name, report);
          incomplete |= report.stop == StopReason::IterationCap;
        } else {
          StepAudit step_audit(problem.prox());
          SolveOptions opts;
          opts.iteration_cap = cap;
          if (audit) opts.audit = &step_audit;
          RunResult result = run_single(alg, problem, eps, opts);
          rows.push_back(make_summary_row(alg, problem, eps, result));
          write_trace_jsonl(out_dir / ("trace-" + tag + ".jsonl"),
                            result.trace);
          if (audit && step_audit.violations() > 0) {
            std::fprintf(stderr,
                         "%s: step inequality violated at step %ld "
                         "(worst slack %.3g)\n",
                         tag.c_str(), step_audit.first_violation_step(),
                         step_audit.worst_slack());
            violation = true;
          }
          incomplete |= result.stop == StopReason::IterationCap;
        }
      } catch (const ContradictionError& e) {
        std::fprintf(stderr, "%s: %s\n", tag.c_str(), e.what());
        violation = true;
      } catch (const InfeasibilityError& e) {
        std::fprintf(stderr, "%s: %s\n", tag.c_str(), e.what());
        violation = true;
      }
    }
  }
  write_summary_csv(out_dir / "summary.csv", rows, timings);
  std::printf("wrote %s (%zu rows)\n", (out_dir / "summary.csv").c_str(),
              rows.size());
  if (violation) return kExitViolation;
  return incomplete ? kExitIncomplete : kExitOk;
}

int do_suite(const std::string& name, const fs::path& out_dir,
             const fs::path& data_dir, bool audit, bool timings) {
  fs::create_directories(out_dir);
  std::vector<SummaryRow> rows;
  ordered_json report;
  report["suite"] = name;
  ordered_json cells = ordered_json::array();
  ordered_json ordering = ordered_json::array();
  bool violation = false;

  auto run_cell = [&](const Problem& problem, const std::string& alg,
                      double eps) {
    StepAudit step_audit(problem.prox());
    SolveOptions opts;
    opts.record_trace = false;
    if (audit) opts.audit = &step_audit;
    RunResult r = run_single(alg, problem, eps, opts);
    if (audit && step_audit.violations() > 0) {
      std::fprintf(stderr,
                   "%s/%s eps=%s: step inequality violated at step %ld\n",
                   problem.name.c_str(), alg.c_str(),
                   real_to_string(eps).c_str(),
                   step_audit.first_violation_step());
      violation = true;
    }
    rows.push_back(make_summary_row(alg, problem, eps, r));
    return r;
  };

  if (name == "table1" || name == "table2") {
    std::string id = name == "table1" ? "fts-quadratic" : "fts-nonsmooth";
    Problem problem = load_problem(id, data_dir, true);
    const PublishedCell* pub = name == "table1" ? kFtsQuadratic : kFtsNonsmooth;
    std::map<double, std::map<std::string, long>> counts;
    for (int i = 0; i < 9; ++i) {
      const PublishedCell& cell = pub[i];
      RunResult r = run_cell(problem, cell.alg, cell.eps);
      counts[cell.eps][cell.alg] = r.iterations;
      ordered_json c;
      c["problem"] = id;
      c["algorithm"] = cell.alg;
      c["eps"] = cell.eps;
      c["iterations"] = r.iterations;
      c["published_iterations"] = cell.iterations;
      c["published_time_s"] = cell.seconds;
      c["ratio"] = static_cast<double>(r.iterations) / cell.iterations;
      cells.push_back(c);
    }
    for (const auto& [eps, m] : counts) {
      ordered_json o;
      o["eps"] = eps;
      o["ordering_ok"] =
          m.at("alg6") <= m.at("alg1") && m.at("alg1") < m.at("alg5");
      ordering.push_back(o);
    }
  } else if (name == "table3") {
    const double eps = 0.05;
    for (int k = 1; k <= 5; ++k) {
      std::string id = "sc-example" + std::to_string(k);
      Problem problem = load_problem(id, data_dir, true);
      RunResult plain = run_cell(problem, "alg1", eps);
      SolveOptions opts;
      opts.record_trace = false;
      RestartReport restarted =
          solve_restarted(problem, InnerSolver::Adaptive, eps, opts);
      rows.push_back(make_summary_row("restart_alg1", problem, eps, restarted));
      const PublishedPair& pub = kStronglyConvex[k - 1];
      ordered_json c1;
      c1["problem"] = id;
      c1["algorithm"] = "alg1";
      c1["eps"] = eps;
      c1["iterations"] = plain.iterations;
      c1["published_iterations"] = pub.plain;
      c1["published_time_s"] = pub.plain_s;
      c1["ratio"] = static_cast<double>(plain.iterations) / pub.plain;
      cells.push_back(c1);
      ordered_json c2;
      c2["problem"] = id;
      c2["algorithm"] = "restart_alg1";
      c2["eps"] = eps;
      c2["iterations"] = restarted.total_inner_iterations;
      c2["published_iterations"] = pub.restarted;
      c2["published_time_s"] = pub.restarted_s;
      c2["ratio"] =
          static_cast<double>(restarted.total_inner_iterations) / pub.restarted;
      cells.push_back(c2);
      ordered_json o;
      o["problem"] = id;
      o["restarted_faster"] =
          restarted.total_inner_iterations < plain.iterations;
      ordering.push_back(o);
    }
  } else {
    throw ExitError{kExitConfig, "unknown suite: " + name};
  }

  report["cells"] = cells;
  report["ordering"] = ordering;
  write_summary_csv(out_dir / "summary.csv", rows, timings);
  fs::path report_path = out_dir / ("report-" + name + ".json");
  std::ofstream(report_path) << report.dump(2) << '\n';
  std::printf("wrote %s and summary.csv (%zu rows)\n", report_path.c_str(),
              rows.size());
  return violation ? kExitViolation : kExitOk;
}

int do_verify(const std::string& id, const fs::path& data_dir) {
  Problem problem = load_problem(id, data_dir, true);
  if (!problem.reference)
    throw ExitError{kExitMissingFixture,
                    "fixture for " + id + " has no reference optimum"};
  auto checks = verify_problem(problem);
  for (const auto& c : checks)
    std::printf("[%s] %-28s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str());
  bool ok = all_passed(checks);
  std::printf("%s: %s\n", id.c_str(), ok ? "all checks passed" : "FAILED");
  return ok ? kExitOk : kExitViolation;
}

int do_reference(const std::string& id, long budget, const fs::path& data_dir) {
  Problem problem = load_problem(id, data_dir, false);
  ReferenceOpt ref = [&] {
    try {
      return compute_reference(problem, budget);
    } catch (const std::invalid_argument& e) {
      throw ExitError{kExitConfig, e.what()};
    }
  }();
  problem.reference = ref;
  fs::create_directories(data_dir);
  fs::path file = data_dir / (id + ".json");
  save_problem_fixture(file, problem);
  std::printf("wrote %s  f_star=%s  residual=%s\n", file.c_str(),
              real_to_string(ref.f_star).c_str(),
              real_to_string(ref.residual).c_str());
  return kExitOk;
}

void apply_config(const std::string& path, CLI::App* run,
                  std::string& problem_id, std::vector<std::string>& algs,
                  std::vector<double>& eps_list, bool& audit,
                  std::string& out) {
  std::ifstream in(path);
  if (!in) throw ExitError{kExitConfig, "cannot read config: " + path};
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw ExitError{kExitConfig, std::string("bad config: ") + e.what()};
  }
  if (problem_id.empty() && cfg.contains("problem"))
    problem_id = cfg["problem"].get<std::string>();
  if (algs.empty() && cfg.contains("algorithms"))
    for (const auto& a : cfg["algorithms"])
      algs.push_back(a.get<std::string>());
  if (eps_list.empty() && cfg.contains("eps_list"))
    for (const auto& e : cfg["eps_list"])
      eps_list.push_back(e.is_string()
                             ? real_from_string(e.get<std::string>())
                             : e.get<double>());
  if (cfg.value("audit", false)) audit = true;
  if (run->count("--out") == 0 && cfg.contains("output_dir"))
    out = cfg["output_dir"].get<std::string>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive mirror descent for convex problems with functional "
               "constraints"};
  app.require_subcommand(1);

  std::string problem_id, config, suite_name;
  std::vector<std::string> algs;
  std::vector<double> eps_list;
  bool audit = false, timings = false;
  std::string out = ".", data = "data";
  long cap = 10000000, budget = 200000, seed = 0;

  CLI::App* run = app.add_subcommand("run", "Run algorithms on one problem");
  run->add_option("--problem", problem_id, "Problem id");
  run->add_option("--alg", algs,
                  "Algorithms: alg1 alg2 alg5 alg6 restart_alg1 restart_alg2");
  run->add_option("--eps", eps_list, "Target accuracies");
  run->add_flag("--audit", audit, "Check the step inequality on every step");
  run->add_flag("--timings", timings, "Append wall_ms to summary.csv");
  run->add_option("--out", out, "Output directory");
  run->add_option("--data", data, "Fixture directory");
  run->add_option("--cap", cap, "Iteration cap");
  run->add_option("--config", config, "JSON config file (BenchConfig schema)");
  run->add_option("--seed", seed,
                  "Seed for randomized tooling; solvers are deterministic");

  CLI::App* suite = app.add_subcommand("suite", "Reproduce a published table");
  suite->add_option("name", suite_name, "table1 | table2 | table3")->required();
  suite->add_flag("--audit", audit, "Check the step inequality on every step");
  suite->add_flag("--timings", timings, "Append wall_ms to summary.csv");
  suite->add_option("--out", out, "Output directory");
  suite->add_option("--data", data, "Fixture directory");

  CLI::App* verify =
      app.add_subcommand("verify", "Run the invariant battery on one problem");
  verify->add_option("--problem", problem_id, "Problem id")->required();
  verify->add_option("--data", data, "Fixture directory");

  CLI::App* reference = app.add_subcommand(
      "reference", "Compute a reference optimum and write the fixture");
  reference->add_option("--problem", problem_id, "Problem id")->required();
  reference->add_option("--budget", budget, "Subgradient step budget");
  reference->add_option("--data", data, "Fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      if (!config.empty())
        apply_config(config, run, problem_id, algs, eps_list, audit, out);
      if (problem_id.empty())
        throw ExitError{kExitConfig, "missing problem id"};
      if (algs.empty()) throw ExitError{kExitConfig, "no algorithms given"};
      if (eps_list.empty()) throw ExitError{kExitConfig, "empty eps list"};
      Problem problem = load_problem(problem_id, data, false);
      return do_run(problem, algs, eps_list, audit, timings, out, cap);
    }
    if (*suite) return do_suite(suite_name, out, data, audit, timings);
    if (*verify) return do_verify(problem_id, data);
    if (*reference) return do_reference(problem_id, budget, data);
  } catch (const ExitError& e) {
    std::fprintf(stderr, "%s\n", e.message.c_str());
    return e.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitViolation;
  }
  return kExitOk;
}
