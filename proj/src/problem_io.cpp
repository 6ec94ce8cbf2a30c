#include "optdesign/problem_io.hpp"

#include "optdesign/models.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace optdesign::io {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
  throw ValidationError(field + ": " + what);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) throw ParseError("cannot read " + path);
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << text;
  if (!out.good()) throw ParseError("cannot write " + path);
}

std::vector<double> number_row(const json& node, const std::string& field) {
  if (!node.is_array()) invalid(field, "expected an array of numbers");
  std::vector<double> row;
  row.reserve(node.size());
  for (size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number())
      invalid(field + "[" + std::to_string(i) + "]", "expected a number");
    row.push_back(node[i].get<double>());
  }
  return row;
}

std::vector<std::vector<double>> number_matrix(const json& node,
                                               const std::string& field) {
  if (!node.is_array() || node.empty())
    invalid(field, "expected a nonempty array of rows");
  std::vector<std::vector<double>> rows;
  rows.reserve(node.size());
  for (size_t i = 0; i < node.size(); ++i)
    rows.push_back(number_row(node[i], field + "[" + std::to_string(i) + "]"));
  return rows;
}

Eigen::VectorXd to_vector(const std::vector<double>& row) {
  return Eigen::Map<const Eigen::VectorXd>(row.data(),
                                           static_cast<Eigen::Index>(row.size()));
}

std::vector<double> from_vector(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

DesignSpace space_from(const ProblemFile& pf) {
  DesignSpace space;
  space.points.reserve(pf.design_points.size());
  for (const auto& row : pf.design_points) space.points.push_back(to_vector(row));
  return space;
}

DiscretePrior prior_from(const ProblemFile& pf) {
  DiscretePrior prior;
  prior.support.reserve(pf.prior_support.size());
  for (const auto& row : pf.prior_support)
    prior.support.push_back(to_vector(row));
  prior.probs = pf.prior_probs;
  return prior;
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Logistic:
      return "logistic";
    case ModelKind::Linear:
      return "linear";
    case ModelKind::Explicit:
      return "explicit";
  }
  return "?";
}

ProblemFile parse_problem_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) invalid("(root)", "expected a JSON object");

  ProblemFile pf;
  if (!root.contains("model") || !root["model"].is_string())
    invalid("model", "expected one of \"logistic\", \"linear\", \"explicit\"");
  const std::string model = root["model"].get<std::string>();
  if (model == "logistic")
    pf.model = ModelKind::Logistic;
  else if (model == "linear")
    pf.model = ModelKind::Linear;
  else if (model == "explicit")
    pf.model = ModelKind::Explicit;
  else
    invalid("model", "unknown model \"" + model + "\"");

  if (!root.contains("design_points"))
    invalid("design_points", "missing");
  pf.design_points = number_matrix(root["design_points"], "design_points");

  if (root.contains("prior")) {
    if (pf.model == ModelKind::Linear)
      invalid("prior", "must be omitted for model \"linear\"");
    const json& prior = root["prior"];
    if (!prior.is_object()) invalid("prior", "expected an object");
    if (!prior.contains("support")) invalid("prior.support", "missing");
    if (!prior.contains("probs")) invalid("prior.probs", "missing");
    pf.prior_support = number_matrix(prior["support"], "prior.support");
    pf.prior_probs = number_row(prior["probs"], "prior.probs");
    pf.has_prior = true;
  } else if (pf.model != ModelKind::Linear) {
    invalid("prior", "required for model \"" + model + "\"");
  }

  if (root.contains("atoms")) {
    if (pf.model != ModelKind::Explicit)
      invalid("atoms", "only allowed for model \"explicit\"");
    const json& atoms = root["atoms"];
    if (!atoms.is_array() || atoms.empty())
      invalid("atoms", "expected a nonempty n x K x m x m array");
    pf.atoms.reserve(atoms.size());
    for (size_t i = 0; i < atoms.size(); ++i) {
      const std::string fi = "atoms[" + std::to_string(i) + "]";
      if (!atoms[i].is_array() || atoms[i].empty())
        invalid(fi, "expected a nonempty array over prior support points");
      std::vector<std::vector<std::vector<double>>> per_point;
      per_point.reserve(atoms[i].size());
      for (size_t k = 0; k < atoms[i].size(); ++k)
        per_point.push_back(
            number_matrix(atoms[i][k], fi + "[" + std::to_string(k) + "]"));
      pf.atoms.push_back(std::move(per_point));
    }
    pf.has_atoms = true;
  } else if (pf.model == ModelKind::Explicit) {
    invalid("atoms", "required for model \"explicit\"");
  }

  return pf;
}

ProblemFile read_problem_file(const std::string& path) {
  return parse_problem_json(read_text(path));
}

std::string problem_file_to_json(const ProblemFile& pf) {
  json root;
  root["model"] = to_string(pf.model);
  root["design_points"] = pf.design_points;
  if (pf.has_prior) {
    root["prior"]["support"] = pf.prior_support;
    root["prior"]["probs"] = pf.prior_probs;
  }
  if (pf.has_atoms) root["atoms"] = pf.atoms;
  return root.dump(2) + "\n";
}

void write_problem_file(const ProblemFile& pf, const std::string& path) {
  write_text(path, problem_file_to_json(pf));
}

DesignProblem build_problem(const ProblemFile& pf) {
  const size_t n = pf.design_points.size();
  if (n == 0) invalid("design_points", "need at least one design point");
  const size_t p = pf.design_points.front().size();
  if (p == 0) invalid("design_points[0]", "points must be nonempty");
  for (size_t i = 0; i < n; ++i) {
    if (pf.design_points[i].size() != p)
      invalid("design_points[" + std::to_string(i) + "]",
              "length differs from design_points[0]");
  }

  DiscretePrior prior;
  if (pf.has_prior) {
    const size_t K = pf.prior_support.size();
    if (K == 0) invalid("prior.support", "need at least one support point");
    const size_t m = pf.prior_support.front().size();
    for (size_t k = 0; k < K; ++k) {
      if (pf.prior_support[k].size() != m)
        invalid("prior.support[" + std::to_string(k) + "]",
                "length differs from prior.support[0]");
    }
    if (pf.prior_probs.size() != K)
      invalid("prior.probs", "length differs from prior.support");
    prior = prior_from(pf);
    try {
      prior.validate();
    } catch (const std::invalid_argument& e) {
      invalid("prior", e.what());
    }
  }

  DesignSpace space = space_from(pf);

  try {
    switch (pf.model) {
      case ModelKind::Logistic: {
        DesignProblem problem{space, prior, logistic_atoms({space, prior})};
        problem.validate();
        return problem;
      }
      case ModelKind::Linear: {
        // implied point mass; the location is irrelevant to A_i = x_i x_i'
        DiscretePrior point_mass;
        point_mass.support.push_back(
            Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p)));
        point_mass.probs.push_back(1.0);
        DesignProblem problem{space, point_mass, linear_atoms(space)};
        problem.validate();
        return problem;
      }
      case ModelKind::Explicit: {
        const size_t K = pf.prior_support.size();
        if (pf.atoms.size() != n)
          invalid("atoms", "outer length must equal the design point count");
        const size_t m = pf.prior_support.front().size();
        InformationAtoms atoms(static_cast<int>(n), static_cast<int>(K),
                               static_cast<int>(m));
        for (size_t i = 0; i < n; ++i) {
          if (pf.atoms[i].size() != K)
            invalid("atoms[" + std::to_string(i) + "]",
                    "length must equal the prior support count");
          for (size_t k = 0; k < K; ++k) {
            const auto& rows = pf.atoms[i][k];
            const std::string field = "atoms[" + std::to_string(i) + "][" +
                                      std::to_string(k) + "]";
            if (rows.size() != m) invalid(field, "expected an m x m matrix");
            Eigen::MatrixXd a(static_cast<Eigen::Index>(m),
                              static_cast<Eigen::Index>(m));
            for (size_t r = 0; r < m; ++r) {
              if (rows[r].size() != m)
                invalid(field + "[" + std::to_string(r) + "]",
                        "expected m entries");
              for (size_t c = 0; c < m; ++c)
                a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    rows[r][c];
            }
            atoms.at(static_cast<int>(i), static_cast<int>(k)) = std::move(a);
          }
        }
        DesignProblem problem{space, prior, atoms};
        problem.validate();
        return problem;
      }
    }
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  throw ValidationError("model: unknown");
}

ProblemFile make_logistic_problem_file(const DesignSpace& space,
                                       const DiscretePrior& prior) {
  ProblemFile pf;
  pf.model = ModelKind::Logistic;
  for (const auto& x : space.points) pf.design_points.push_back(from_vector(x));
  pf.has_prior = true;
  for (const auto& theta : prior.support)
    pf.prior_support.push_back(from_vector(theta));
  pf.prior_probs = prior.probs;
  return pf;
}

ProblemFile make_linear_problem_file(const DesignSpace& space) {
  ProblemFile pf;
  pf.model = ModelKind::Linear;
  for (const auto& x : space.points) pf.design_points.push_back(from_vector(x));
  return pf;
}

ProblemFile make_explicit_problem_file(const DesignProblem& problem) {
  ProblemFile pf;
  pf.model = ModelKind::Explicit;
  for (const auto& x : problem.space.points)
    pf.design_points.push_back(from_vector(x));
  pf.has_prior = true;
  for (const auto& theta : problem.prior.support)
    pf.prior_support.push_back(from_vector(theta));
  pf.prior_probs = problem.prior.probs;
  pf.has_atoms = true;
  const int n = problem.num_points();
  const int K = problem.num_support();
  const int m = problem.param_dim();
  pf.atoms.resize(n);
  for (int i = 0; i < n; ++i) {
    pf.atoms[i].resize(K);
    for (int k = 0; k < K; ++k) {
      const Eigen::MatrixXd& a = problem.atoms.at(i, k);
      auto& rows = pf.atoms[i][k];
      rows.assign(m, std::vector<double>(m));
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) rows[r][c] = a(r, c);
    }
  }
  return pf;
}

DesignWeights read_weights_file(const std::string& path, int expected_n) {
  json root;
  try {
    root = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  const json* arr = &root;
  if (root.is_object()) {
    if (!root.contains("w")) invalid("w", "missing weight array");
    arr = &root["w"];
  }
  const std::vector<double> w = number_row(*arr, "w");
  if (static_cast<int>(w.size()) != expected_n)
    invalid("w", "expected " + std::to_string(expected_n) + " weights, got " +
                     std::to_string(w.size()));
  try {
    return DesignWeights(to_vector(w));
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("w: ") + e.what());
  }
}

RunReport make_report(const DesignProblem& problem, const SolveResult& result,
                      const SolverConfig& config,
                      const std::string& problem_source,
                      const std::string& start) {
  RunReport report;
  report.problem_source = problem_source;
  report.n = problem.num_points();
  report.num_support = problem.num_support();
  report.param_dim = problem.param_dim();
  report.a = config.a;
  report.epsilon = config.epsilon;
  report.max_iter = config.max_iter;
  report.start = start;
  report.status = result.trace.status;
  report.iterations = result.iterations;
  report.final_phi = result.final_phi;
  report.final_gap = result.final_gap;
  for (int i = 0; i < report.n; ++i) {
    report.labels.push_back("x" + std::to_string(i + 1));
    report.points.push_back(from_vector(problem.space.points[i]));
    report.weights.push_back(result.weights[i]);
  }
  return report;
}

namespace {

std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string report_text(const RunReport& report) {
  std::ostringstream out;
  out << "problem: " << report.problem_source << " (n=" << report.n
      << ", K=" << report.num_support << ", m=" << report.param_dim << ")\n";
  out << "config: a=" << report.a << " epsilon=" << report.epsilon
      << " max-iter=" << report.max_iter << " start=" << report.start << "\n";
  out << "status: "
      << (report.status == SolveStatus::Converged ? "Converged" : "IterLimit")
      << "\n";
  out << "iterations: " << report.iterations << "\n";
  out << "phi: " << full(report.final_phi) << "\n";
  out << "equivalence gap: " << full(report.final_gap) << "\n";
  out << "weights:\n";
  for (int i = 0; i < report.n; ++i) {
    char row[160];
    std::string coords;
    for (size_t c = 0; c < report.points[i].size(); ++c) {
      char num[32];
      std::snprintf(num, sizeof(num), "%g", report.points[i][c]);
      coords += (c ? ", " : "") + std::string(num);
    }
    std::snprintf(row, sizeof(row), "  %-5s (%s)  %.3f\n",
                  report.labels[i].c_str(), coords.c_str(),
                  report.weights[i]);
    out << row;
  }
  return out.str();
}

std::string report_json(const RunReport& report) {
  json root;
  root["problem"] = report.problem_source;
  root["n"] = report.n;
  root["K"] = report.num_support;
  root["m"] = report.param_dim;
  root["config"]["a"] = report.a;
  root["config"]["epsilon"] = report.epsilon;
  root["config"]["max_iter"] = report.max_iter;
  root["config"]["start"] = report.start;
  root["status"] =
      report.status == SolveStatus::Converged ? "Converged" : "IterLimit";
  root["iterations"] = report.iterations;
  root["phi"] = report.final_phi;
  root["equivalence_gap"] = report.final_gap;
  root["labels"] = report.labels;
  root["design_points"] = report.points;
  root["weights"] = report.weights;
  return root.dump(2) + "\n";
}

void write_trace_csv(const IterationTrace& trace, const std::string& path) {
  if (trace.records.empty())
    throw std::invalid_argument("trace: nothing to write");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << "iter,phi,min_d,max_d,alpha\n";
  char buf[256];
  for (const IterationRecord& rec : trace.records) {
    std::snprintf(buf, sizeof(buf), "%ld,%.17g,%.17g,%.17g,%.17g\n", rec.iter,
                  rec.phi, rec.min_d, rec.max_d, rec.alpha);
    out << buf;
  }
  if (!out.good()) throw ParseError("cannot write " + path);
}

std::vector<IterationRecord> read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "iter,phi,min_d,max_d,alpha")
    throw ParseError(path + ": bad trace header");
  std::vector<IterationRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    IterationRecord rec{};
    if (std::sscanf(line.c_str(), "%ld,%lf,%lf,%lf,%lf", &rec.iter, &rec.phi,
                    &rec.min_d, &rec.max_d, &rec.alpha) != 5)
      throw ParseError(path + ": bad trace row: " + line);
    records.push_back(rec);
  }
  return records;
}

}  // namespace optdesign::io
