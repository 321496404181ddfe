// freaco: command-line driver for the max-min fuzzy relational solver.
//
// Exit codes: 0 ok, 1 usage/IO/parse error, 2 infeasible instance,
// 3 path cap exceeded, 4 a checked point is infeasible.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "freaco/freaco.hpp"

namespace fs = std::filesystem;
using namespace freaco;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInfeasible = 2, kCapExceeded = 3, kCheckFailed = 4 };

struct Source {
  std::string file;
  std::size_t builtin = 0;

  void attach(CLI::App* cmd) {
    auto* f = cmd->add_option("--file", file, "instance JSON file");
    auto* b = cmd->add_option("--builtin", builtin, "builtin problem index")->check(CLI::Range(1, 10));
    f->excludes(b);
  }

  Problem load() const {
    if (!file.empty()) return load_problem(file);
    if (builtin) return builtin_problem(builtin);
    throw CLI::ValidationError("one of --file or --builtin is required");
  }
};

std::vector<std::size_t> parse_problem_list(const std::string& spec) {
  std::vector<std::size_t> out;
  if (spec == "all") {
    for (std::size_t k = 1; k <= 10; ++k) out.push_back(k);
    return out;
  }
  std::stringstream ss(spec);
  for (std::string tok; std::getline(ss, tok, ',');) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size() || v < 1 || v > 10) throw CLI::ValidationError("--problems", "bad problem index '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::size_t env_threads() {
  const char* v = std::getenv("FREACO_THREADS");
  if (!v || !*v) return 0;
  try {
    return std::stoul(v);
  } catch (const std::exception&) {
    std::cerr << "warning: ignoring FREACO_THREADS=" << v << '\n';
    return 0;
  }
}

void print_infeasible(const InfeasibleError& e) {
  std::cerr << "error: " << e.what() << '\n' << "violated rows:";
  for (auto i : e.violated_rows()) std::cerr << ' ' << i + 1;
  std::cerr << '\n';
}

// Reads JSON lines and checks every "candidate", "xbar" or "best_x" array.
int check_points(const Problem& problem, std::istream& in) {
  std::size_t checked = 0, bad = 0, lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const Json j = Json::parse(line);
    for (const char* key : {"candidate", "xbar", "best_x"}) {
      if (!j.contains(key)) continue;
      const Vector x = vector_from_json(j.at(key));
      if (x.size() != static_cast<Eigen::Index>(problem.instance.cols()))
        throw DimensionError("checked point on line " + std::to_string(lineno), problem.instance.cols(), x.size());
      ++checked;
      const auto rows = violated_rows(problem.instance, x);
      if (!rows.empty()) {
        ++bad;
        std::cerr << "line " << lineno << ": " << key << " violates " << rows.size() << " row(s)\n";
      }
    }
  }
  std::cout << Json{{"checked", checked}, {"infeasible", bad}}.dump() << '\n';
  return bad ? kCheckFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ant colony solver for nonlinear optimization over max-min fuzzy relational equations"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "run the solver once and print the best point");
  Source solve_src;
  solve_src.attach(solve);
  SolverConfig cfg;
  std::string trace_path, out_path;
  bool check = false;
  solve->add_option("--seed", cfg.seed, "random seed");
  solve->add_option("--iters", cfg.t_max, "iterations")->capture_default_str();
  solve->add_option("--pop", cfg.s_pop, "archive size")->capture_default_str();
  solve->add_option("--q", cfg.q, "rank weight locality")->capture_default_str();
  solve->add_option("--xi", cfg.xi, "kernel width factor")->capture_default_str();
  solve->add_option("--rho", cfg.rho, "evaporation rate")->capture_default_str();
  solve->add_option("--deposit", cfg.big_q, "pheromone deposit constant")->capture_default_str();
  solve->add_option("--trace", trace_path, "write best-so-far trace CSV here");
  solve->add_option("--out", out_path, "also write the result JSON here");
  solve->add_flag("--check", check, "read JSON lines from stdin and check each point against the instance");

  // bench
  auto* bench = app.add_subcommand("bench", "repeated seeded runs with summary statistics");
  std::string problem_list = "all", out_dir;
  ExperimentSpec spec;
  bench->add_option("--problems", problem_list, "'all' or comma-separated indices")->capture_default_str();
  bench->add_option("--runs", spec.runs, "runs per problem")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--seed", spec.base_seed, "base seed; run r uses seed + r");
  bench->add_option("--out", out_dir, "output directory (summary.csv, traces.json, traces.csv)");

  // verify
  auto* verify = app.add_subcommand("verify", "brute-force reference optimum over every cell");
  Source verify_src;
  verify_src.attach(verify);
  std::size_t samples = 200, cap = kDefaultPathCap, refine = 20;
  std::uint64_t verify_seed = 0;
  verify->add_option("--samples", samples, "uniform samples per cell")->capture_default_str();
  verify->add_option("--cap", cap, "maximum number of paths")->capture_default_str();
  verify->add_option("--refine", refine, "pattern-search step halvings")->capture_default_str();
  verify->add_option("--seed", verify_seed, "random seed");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "print the maximum solution, candidate sets and paths");
  Source enum_src;
  enum_src.attach(enumerate);
  std::size_t max_paths = 10;
  enumerate->add_option("--max", max_paths, "maximum number of paths to print")->capture_default_str();

  app.add_subcommand("problems", "list builtin problems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve) {
      const Problem problem = solve_src.load();
      if (check) return check_points(problem, std::cin);
      const RunResult r = run(problem, cfg);
      Json out = {{"problem", problem.name},
                  {"seed", cfg.seed},
                  {"best_f", r.best.f},
                  {"best_x", to_json(r.best.x)},
                  {"eval_count", r.eval_count}};
      std::cout << out.dump() << '\n';
      if (!out_path.empty()) write_file(out_path, out.dump(1) + '\n');
      if (!trace_path.empty()) {
        std::string csv = "iter,best_so_far\n";
        for (std::size_t t = 0; t < r.trace.size(); ++t) csv += std::to_string(t + 1) + ',' + format_double(r.trace[t]) + '\n';
        write_file(trace_path, csv);
      }
      return kOk;
    }

    if (*bench) {
      for (auto k : parse_problem_list(problem_list)) spec.problems.push_back(builtin_problem(k));
      spec.threads = env_threads();
      const ExperimentSummary s = run_experiment(spec);
      for (const auto& name : optimum_violations(s))
        std::cerr << "note: " << name << " best value is below its recorded optimum\n";
      if (out_dir.empty()) {
        std::cout << summary_csv(s);
      } else {
        fs::create_directories(out_dir);
        export_summary(s, ExportFormat::summary_csv, fs::path(out_dir) / "summary.csv");
        export_summary(s, ExportFormat::json, fs::path(out_dir) / "traces.json");
        export_summary(s, ExportFormat::trace_csv, fs::path(out_dir) / "traces.csv");
        std::cerr << "wrote " << out_dir << "/{summary.csv,traces.json,traces.csv}\n";
      }
      return kOk;
    }

    if (*verify) {
      const Problem problem = verify_src.load();
      Rng rng(verify_seed);
      std::cout << report_to_json(reference_optimum(problem, samples, refine, rng, cap)).dump() << '\n';
      return kOk;
    }

    if (*enumerate) {
      const Problem problem = enum_src.load();
      const Instance& inst = problem.instance;
      const MaxSolution xbar = compute_max_solution(inst);
      require_feasible(inst, xbar);
      const CandidateSets sets = compute_candidate_sets(inst, xbar);
      Json jbar = Json::array();
      for (const auto& row : sets.jbar) {
        Json r = Json::array();
        for (auto j : row) r.push_back(j + 1);
        jbar.push_back(r);
      }
      std::cout << Json{{"xbar", to_json(xbar.xbar)}, {"jbar", jbar}, {"path_count", path_space_size(sets).str()}}.dump()
                << '\n';
      if (max_paths == 0) return kOk;
      // Walk paths lazily so a huge space still prints its first few.
      const auto m = sets.rows();
      std::vector<std::size_t> digit(m, 0);
      for (std::size_t printed = 0; printed < max_paths;) {
        std::vector<std::size_t> cols(m);
        for (std::size_t i = 0; i < m; ++i) cols[i] = sets.jbar[i][digit[i]];
        const FrePath path(std::move(cols));
        std::cout << Json{{"path", path.one_based()}, {"candidate", to_json(path_to_candidate(path, inst.b(), inst.cols()))}}
                         .dump()
                  << '\n';
        ++printed;
        std::size_t i = m;
        bool done = true;
        while (i > 0) {
          --i;
          if (++digit[i] < sets.jbar[i].size()) {
            done = false;
            break;
          }
          digit[i] = 0;
        }
        if (done) break;
      }
      return kOk;
    }

    for (const auto& p : builtin_problems())
      std::cout << Json{{"name", p.name},
                        {"m", p.instance.rows()},
                        {"n", p.instance.cols()},
                        {"objective", p.objective_source},
                        {"known_optimum", p.known_optimum ? Json(*p.known_optimum) : Json(nullptr)}}
                       .dump()
                << '\n';
    return kOk;
  } catch (const InfeasibleError& e) {
    print_infeasible(e);
    return kInfeasible;
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cout << Json{{"path_count", e.path_count()}, {"cap", e.cap()}}.dump() << '\n';
    return kCapExceeded;
  } catch (const RunError& e) {
    // Infeasibility surfaces from inside a bench run wrapped as RunError.
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
