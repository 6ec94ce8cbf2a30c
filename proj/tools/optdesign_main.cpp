#include <CLI11.hpp>

#include "optdesign/models.hpp"
#include "optdesign/problem_io.hpp"

#include <fstream>
#include <iostream>
#include <string>

namespace {

constexpr int kExitConverged = 0;
constexpr int kExitError = 1;
constexpr int kExitIterLimit = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Bayesian D-optimal approximate designs on a finite design space via "
      "the multiplicative MM algorithm with overrelaxation"};

  std::string problem_path;
  std::string builtin;
  std::string start = "uniform";
  std::string trace_out;
  std::string report_out;
  optdesign::SolverConfig config;

  app.add_option("problem", problem_path, "problem description file (JSON)");
  app.add_option("--builtin", builtin, "run a built-in problem instead")
      ->check(CLI::IsMember({"paper-logistic"}));
  app.add_option("--a", config.a, "overrelaxation coefficient in [0, 1]")
      ->capture_default_str();
  app.add_option("--epsilon", config.epsilon,
                 "stopping tolerance: max_i d_i <= m + epsilon")
      ->capture_default_str();
  app.add_option("--max-iter", config.max_iter, "iteration cap")
      ->capture_default_str();
  app.add_option("--start", start,
                 "\"uniform\" or a path to a JSON weight vector")
      ->capture_default_str();
  app.add_option("--trace-out", trace_out,
                 "write the per-iteration trace CSV here");
  app.add_option("--report-out", report_out,
                 "write the machine-readable report (JSON) here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (problem_path.empty() == builtin.empty()) {
      std::cerr << "error: give exactly one of a problem file or --builtin\n";
      return kExitError;
    }

    optdesign::DesignProblem problem;
    std::string source;
    if (!builtin.empty()) {
      problem = optdesign::logistic_grid_benchmark();
      source = builtin;
    } else {
      problem =
          optdesign::io::build_problem(optdesign::io::read_problem_file(problem_path));
      source = problem_path;
    }

    optdesign::DesignWeights w0 =
        start == "uniform"
            ? optdesign::DesignWeights::uniform(problem.num_points())
            : optdesign::io::read_weights_file(start, problem.num_points());

    const optdesign::SolveResult result =
        optdesign::solve(problem, w0, config);

    const optdesign::io::RunReport report =
        optdesign::io::make_report(problem, result, config, source, start);
    std::cout << optdesign::io::report_text(report);
    if (!report_out.empty()) {
      std::ofstream out(report_out, std::ios::binary);
      if (!out) throw optdesign::io::ParseError("cannot open " + report_out);
      out << optdesign::io::report_json(report);
    }
    if (!trace_out.empty())
      optdesign::io::write_trace_csv(result.trace, trace_out);

    return result.trace.status == optdesign::SolveStatus::Converged
               ? kExitConverged
               : kExitIterLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
