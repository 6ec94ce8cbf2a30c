#pragma once

#include "optdesign/design_core.hpp"
#include "optdesign/mm_solver.hpp"

#include <string>
#include <vector>

namespace optdesign::io {

// Malformed input (unreadable file, invalid JSON, wrong value type).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally valid input that violates an invariant; the message carries
// the offending field path.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ModelKind { Logistic, Linear, Explicit };

std::string to_string(ModelKind kind);

// In-memory form of the JSON problem file.
//
//   model:          "logistic" | "linear" | "explicit"
//   design_points:  n x p array of reals
//   prior:          { support: K x m array, probs: length-K array };
//                   omitted for "linear" (implies a single point mass)
//   atoms:          n x K x m x m array, required iff model == "explicit"
struct ProblemFile {
  ModelKind model = ModelKind::Explicit;
  std::vector<std::vector<double>> design_points;
  bool has_prior = false;
  std::vector<std::vector<double>> prior_support;
  std::vector<double> prior_probs;
  bool has_atoms = false;
  std::vector<std::vector<std::vector<std::vector<double>>>> atoms;
};

ProblemFile parse_problem_json(const std::string& text);
ProblemFile read_problem_file(const std::string& path);
std::string problem_file_to_json(const ProblemFile& pf);
void write_problem_file(const ProblemFile& pf, const std::string& path);

// Validates shapes and invariants, builds the atoms for model-backed files,
// and returns a fully validated problem.
DesignProblem build_problem(const ProblemFile& pf);

ProblemFile make_logistic_problem_file(const DesignSpace& space,
                                       const DiscretePrior& prior);
ProblemFile make_linear_problem_file(const DesignSpace& space);
ProblemFile make_explicit_problem_file(const DesignProblem& problem);

// Start weights file: either a bare JSON array of n reals or {"w": [...]}.
DesignWeights read_weights_file(const std::string& path, int expected_n);

// Run summary in the shape of the output table: one labeled weight per
// design point, plus status, iteration count, phi, equivalence gap, and a
// config echo.
struct RunReport {
  std::string problem_source;  // file path or builtin name
  int n = 0;
  int num_support = 0;
  int param_dim = 0;
  double a = 1.0;
  double epsilon = 1e-3;
  long max_iter = 100000;
  std::string start = "uniform";
  SolveStatus status = SolveStatus::IterLimit;
  long iterations = 0;
  double final_phi = 0.0;
  double final_gap = 0.0;
  std::vector<std::string> labels;             // x1 .. xn
  std::vector<std::vector<double>> points;     // design point coordinates
  std::vector<double> weights;                 // full precision
};

RunReport make_report(const DesignProblem& problem, const SolveResult& result,
                      const SolverConfig& config,
                      const std::string& problem_source,
                      const std::string& start);

// Human summary: weights printed to 3 decimals, no pruning of small entries.
std::string report_text(const RunReport& report);

// Machine-readable report, full-precision weights.
std::string report_json(const RunReport& report);

// CSV with header iter,phi,min_d,max_d,alpha; one row per recorded
// iteration, 17 significant digits.
void write_trace_csv(const IterationTrace& trace, const std::string& path);

std::vector<IterationRecord> read_trace_csv(const std::string& path);

}  // namespace optdesign::io
