#include "picklab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "picklab/constrained_hardy.hpp"
#include "picklab/finite_algebra.hpp"
#include "picklab/npc.hpp"
#include "picklab/schur.hpp"

namespace picklab {

namespace {

using nlohmann::json;

/// Schema violations; reported with exit code 2 and the offending field.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void reject(const std::string& field, const std::string& why) {
  throw SchemaError("field '" + field + "': " + why);
}

double expect_number(const json& j, const std::string& field) {
  if (!j.is_number()) {
    reject(field, "expected a number");
  }
  return j.get<double>();
}

int expect_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) {
    reject(field, "expected an integer");
  }
  return j.get<int>();
}

Complex parse_complex(const json& j, const std::string& field) {
  if (j.is_number()) {
    return Complex(j.get<double>(), 0.0);
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  reject(field, "expected a complex value as [re, im] or a real number");
}

std::vector<Complex> parse_complex_list(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) {
    reject(field, "expected a nonempty array of complex values");
  }
  std::vector<Complex> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_complex(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

/// A node is an array of complex coordinates: [[re,im], ...].
Node parse_node(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) {
    reject(field, "expected a node as an array of [re, im] coordinates");
  }
  std::vector<Complex> coords;
  coords.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    const json& c = j[k];
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
      reject(field + "[" + std::to_string(k) + "]", "expected [re, im]");
    }
    coords.emplace_back(c[0].get<double>(), c[1].get<double>());
  }
  return Node(std::move(coords));
}

std::vector<Node> parse_nodes(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) {
    reject(field, "expected a nonempty array of nodes");
  }
  std::vector<Node> nodes;
  nodes.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    nodes.push_back(parse_node(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return nodes;
}

Matrix parse_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) {
    reject(field, "expected a nonempty row-major nested array");
  }
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  Matrix m;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].empty()) {
      reject(field + "[" + std::to_string(i) + "]", "expected a nonempty row");
    }
    if (i == 0) {
      cols = j[i].size();
      m.resize(static_cast<Index>(rows), static_cast<Index>(cols));
    } else if (j[i].size() != cols) {
      reject(field + "[" + std::to_string(i) + "]", "ragged rows");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Index>(i), static_cast<Index>(k)) = parse_complex(
          j[i][k], field + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return m;
}

/// Index sets are 1-based in problem files and reports.
std::vector<int> parse_index_set(const json& j, const std::string& field, int n) {
  if (!j.is_array() || j.empty()) {
    reject(field, "expected a nonempty array of 1-based indices");
  }
  std::vector<int> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const int v = expect_int(j[i], field + "[" + std::to_string(i) + "]");
    if (v < 1 || v > n) {
      reject(field + "[" + std::to_string(i) + "]",
             "index must be in 1.." + std::to_string(n));
    }
    out.push_back(v - 1);
  }
  return out;
}

json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json complex_list_json(const std::vector<Complex>& values) {
  json out = json::array();
  for (const Complex& z : values) {
    out.push_back(complex_json(z));
  }
  return out;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back(complex_json(m(i, j)));
    }
    rows.push_back(row);
  }
  return rows;
}

json index_set_json(const std::vector<int>& indices) {
  json out = json::array();
  for (int i : indices) {
    out.push_back(i + 1);
  }
  return out;
}

KernelSpec parse_kernel(const json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("variant") || !j["variant"].is_string()) {
    reject(field + ".variant", "expected a kernel variant name");
  }
  const std::string variant = j["variant"].get<std::string>();
  if (variant == "szego") {
    return KernelSpec::szego();
  }
  if (variant == "bergman") {
    return KernelSpec::bergman();
  }
  if (variant == "drury_arveson") {
    if (!j.contains("d")) {
      reject(field + ".d", "drury_arveson requires the ball dimension");
    }
    return KernelSpec::drury_arveson(expect_int(j["d"], field + ".d"));
  }
  if (variant == "weighted_bergman") {
    if (!j.contains("s")) {
      reject(field + ".s", "weighted_bergman requires the weight exponent");
    }
    const double s = expect_number(j["s"], field + ".s");
    int truncation = 500;
    if (j.contains("truncation")) {
      truncation = expect_int(j["truncation"], field + ".truncation");
    }
    return KernelSpec::weighted_bergman(s, truncation);
  }
  if (variant == "explicit_gram") {
    if (!j.contains("matrix") || !j.contains("labels")) {
      reject(field, "explicit_gram requires 'matrix' and 'labels'");
    }
    Matrix g = parse_matrix(j["matrix"], field + ".matrix");
    std::vector<Node> labels = parse_nodes(j["labels"], field + ".labels");
    try {
      return KernelSpec::explicit_gram(HermitianMatrix(std::move(g)), std::move(labels));
    } catch (const std::invalid_argument& err) {
      reject(field + ".matrix", err.what());
    }
  }
  reject(field + ".variant", "unknown kernel variant '" + variant + "'");
}

struct ReportClock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
  }
};

std::string format_csv_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

// --- task handlers ------------------------------------------------------

json run_pick_check(const json& payload, double tol, std::string* csv) {
  if (!payload.contains("kernel") || !payload.contains("nodes")) {
    reject("payload", "pick-check requires 'kernel' and 'nodes'");
  }
  const KernelSpec kernel = parse_kernel(payload["kernel"], "kernel");
  const std::vector<Node> nodes = parse_nodes(payload["nodes"], "nodes");
  const bool block = payload.contains("matrix_targets");
  if (block == payload.contains("targets")) {
    reject("targets", "pick-check requires exactly one of 'targets' or 'matrix_targets'");
  }
  const HermitianMatrix gram = gram_matrix(kernel, nodes);

  PickReport report = [&]() {
    if (!block) {
      InterpolationData data{nodes, parse_complex_list(payload["targets"], "targets")};
      return scalar_pick(data, gram, kernel.name(), tol);
    }
    const json& wj = payload["matrix_targets"];
    if (!wj.is_array() || wj.size() != nodes.size()) {
      reject("matrix_targets", "expected one matrix per node");
    }
    MatrixInterpolationData data;
    data.nodes = nodes;
    for (std::size_t i = 0; i < wj.size(); ++i) {
      data.targets.push_back(parse_matrix(wj[i], "matrix_targets[" + std::to_string(i) + "]"));
    }
    data.r = static_cast<int>(data.targets.front().rows());
    return block_pick(data, gram, kernel.name(), tol);
  }();

  if (csv) {
    reject("--csv", "pick-check emits no per-sigma table");
  }
  json results;
  results["kind"] = block ? "block" : "scalar";
  results["label"] = report.label;
  results["matrix"] = matrix_json(report.matrix.entries());
  results["min_eigenvalue"] = report.verdict.min_eigenvalue;
  results["tolerance"] = report.verdict.tolerance;
  results["is_psd"] = report.verdict.is_psd;
  return results;
}

json run_pick_solve(const json& payload, double tol, std::string* csv) {
  if (csv) {
    reject("--csv", "pick-solve emits no per-sigma table");
  }
  if (!payload.contains("nodes") || !payload.contains("targets")) {
    reject("payload", "pick-solve requires 'nodes' and 'targets'");
  }
  InterpolationData data{parse_nodes(payload["nodes"], "nodes"),
                         parse_complex_list(payload["targets"], "targets")};
  int samples = 4096;
  if (payload.contains("boundary_samples")) {
    samples = expect_int(payload["boundary_samples"], "boundary_samples");
  }
  const SolveResult solved = solve_classical(data, tol);

  json results;
  switch (solved.status) {
    case SolveStatus::Solved:
      results["status"] = "solved";
      break;
    case SolveStatus::Marginal:
      results["status"] = "marginal";
      break;
    case SolveStatus::Unsolvable:
      results["status"] = "unsolvable";
      break;
  }
  results["pick_min_eigenvalue"] = solved.pick_min_eigenvalue;
  results["scale"] = solved.scale;
  results["violating_step"] = solved.violating_step;
  if (solved.interpolant) {
    json steps = json::array();
    for (const SchurStep& step : solved.interpolant->steps()) {
      steps.push_back(json{{"node", complex_json(step.node)},
                           {"parameter", complex_json(step.parameter)}});
    }
    results["interpolant"] =
        json{{"steps", steps}, {"terminal", complex_json(solved.interpolant->terminal())}};
    results["node_error"] = solved.node_error;
    results["boundary_sup"] = solved.interpolant->boundary_sup(samples);
    json values = json::array();
    for (const Node& node : data.nodes) {
      values.push_back(complex_json(solved.interpolant->evaluate(node.coordinate(0))));
    }
    results["node_values"] = values;
  } else {
    results["interpolant"] = nullptr;
  }
  return results;
}

json run_h1_sweep(const json& payload, double tol, int grid_density, std::string* csv) {
  if (!payload.contains("nodes") || !payload.contains("targets")) {
    reject("payload", "h1-sweep requires 'nodes' and 'targets'");
  }
  InterpolationData data{parse_nodes(payload["nodes"], "nodes"),
                         parse_complex_list(payload["targets"], "targets")};
  const ConstrainedFamilyReport report = h1_family_sweep(data, grid_density, tol);

  if (csv) {
    std::ostringstream out;
    out << "theta,phi,min_eigenvalue\n";
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
      out << format_csv_double(report.grid[i].theta) << ","
          << format_csv_double(report.grid[i].phi) << ","
          << format_csv_double(report.min_eigenvalues[i]) << "\n";
    }
    *csv = out.str();
  }

  json results;
  results["verdict"] = report.verdict;
  results["certification"] = report.certification;
  results["grid_density"] = report.grid_density;
  results["worst"] = json{{"theta", report.worst_parameter.theta},
                          {"phi", report.worst_parameter.phi},
                          {"alpha", complex_json(report.worst_parameter.alpha)},
                          {"beta", complex_json(report.worst_parameter.beta)},
                          {"min_eigenvalue", report.worst_eigenvalue},
                          {"scale", report.worst_scale}};
  results["min_eigenvalues"] = report.min_eigenvalues;
  return results;
}

HermitianMatrix npc_gram(const json& payload) {
  if (payload.contains("gram")) {
    try {
      return HermitianMatrix(parse_matrix(payload["gram"], "gram"));
    } catch (const std::invalid_argument& err) {
      reject("gram", err.what());
    }
  }
  if (!payload.contains("kernel") || !payload.contains("nodes")) {
    reject("payload", "npc tasks require 'gram' or ('kernel' and 'nodes')");
  }
  return gram_matrix(parse_kernel(payload["kernel"], "kernel"),
                     parse_nodes(payload["nodes"], "nodes"));
}

int npc_base(const json& payload, Index n) {
  int base = 1;
  if (payload.contains("base")) {
    base = expect_int(payload["base"], "base");
  }
  if (base < 1 || base > static_cast<int>(n)) {
    reject("base", "1-based index must be in 1.." + std::to_string(n));
  }
  return base - 1;
}

json run_npc_test(const json& payload, double tol, std::string* csv) {
  if (csv) {
    reject("--csv", "npc-test emits no per-sigma table");
  }
  const HermitianMatrix gram = npc_gram(payload);
  const CompleteNpResult result = complete_np_test(gram, npc_base(payload, gram.size()), tol);
  json results;
  results["is_complete_np"] = result.verdict.is_psd;
  // The verdict is exact for the restricted kernel and necessary for any
  // extension of it.
  results["statement"] = result.verdict.is_psd ? "restriction passes" : "restriction fails";
  results["min_eigenvalue"] = result.verdict.min_eigenvalue;
  results["tolerance"] = result.verdict.tolerance;
  results["F"] = matrix_json(result.f.entries());
  results["base"] = result.base + 1;
  return results;
}

json run_npc_embed(const json& payload, double tol, std::string* csv) {
  if (csv) {
    reject("--csv", "npc-embed emits no per-sigma table");
  }
  const HermitianMatrix gram = npc_gram(payload);
  const EmbeddingResult result =
      embed_drury_arveson(gram, npc_base(payload, gram.size()), tol);
  json results;
  results["d"] = result.d;
  results["base"] = result.base + 1;
  results["residual"] = result.residual;
  json b = json::array();
  for (const Vector& bi : result.b) {
    json coords = json::array();
    for (Index k = 0; k < bi.size(); ++k) {
      coords.push_back(complex_json(bi(k)));
    }
    b.push_back(coords);
  }
  results["b"] = b;
  results["delta"] = complex_list_json(result.delta);
  return results;
}

OptimizerOptions parse_optimizer(const json& payload, const RunOverrides& overrides,
                                 double tol_override_applies) {
  OptimizerOptions opt;
  if (payload.contains("optimizer")) {
    const json& oj = payload["optimizer"];
    if (!oj.is_object()) {
      reject("optimizer", "expected an object");
    }
    if (oj.contains("restarts")) {
      opt.restarts = expect_int(oj["restarts"], "optimizer.restarts");
    }
    if (oj.contains("max_iter")) {
      opt.max_iter = expect_int(oj["max_iter"], "optimizer.max_iter");
    }
    if (oj.contains("tol")) {
      opt.tol = expect_number(oj["tol"], "optimizer.tol");
    }
  }
  if (overrides.restarts) {
    opt.restarts = *overrides.restarts;
  }
  if (overrides.tol && tol_override_applies) {
    opt.tol = *overrides.tol;
  }
  if (opt.restarts < 1 || opt.max_iter < 1 || !(opt.tol > 0.0)) {
    reject("optimizer", "restarts, max_iter must be >= 1 and tol > 0");
  }
  return opt;
}

json distance_report_json(const DistanceReport& report, const std::vector<int>& complement) {
  json per_sigma = json::array();
  for (const SigmaNorm& entry : report.compressions.per_sigma) {
    per_sigma.push_back(
        json{{"sigma", index_set_json(entry.sigma)}, {"norm", entry.norm}});
  }
  json results;
  results["per_sigma"] = per_sigma;
  results["sup_compression"] = report.compressions.supremum;
  results["sup_argmax"] = index_set_json(report.compressions.argmax);
  results["distance"] = report.distance;
  results["minimizer"] = complex_list_json(report.minimizer);
  results["complement"] = index_set_json(complement);
  results["gap"] = report.gap;
  results["converged"] = report.converged;
  results["restart_spread"] = report.restart_spread;
  return results;
}

json run_finite_run(const json& payload, const OptimizerOptions& opt, int max_n,
                    std::string* csv, int* exit_code) {
  if (!payload.contains("S") || !payload.contains("a") || !payload.contains("E")) {
    reject("payload", "finite-run requires 'S', 'a' and 'E'");
  }
  const Matrix s = parse_matrix(payload["S"], "S");
  if (s.rows() != s.cols()) {
    reject("S", "similarity must be square");
  }
  const int n = static_cast<int>(s.rows());
  const std::vector<Complex> a = parse_complex_list(payload["a"], "a");
  if (static_cast<int>(a.size()) != n) {
    reject("a", "expected " + std::to_string(n) + " coefficients");
  }
  const std::vector<int> e = parse_index_set(payload["E"], "E", n);

  const FiniteAlgebra alg = FiniteAlgebra::build(s);
  const DistanceReport report = np_gap(alg, a, e, opt, Execution::Parallel, max_n);

  if (csv) {
    std::ostringstream out;
    out << "sigma,norm\n";
    for (const SigmaNorm& entry : report.compressions.per_sigma) {
      out << '"' << format_index_set(entry.sigma) << "\","
          << format_csv_double(entry.norm) << "\n";
    }
    *csv = out.str();
  }
  if (!report.converged) {
    *exit_code = 3;
  }

  std::vector<int> complement;
  for (int i = 0; i < n; ++i) {
    if (std::find(e.begin(), e.end(), i) == e.end()) {
      complement.push_back(i);
    }
  }
  return distance_report_json(report, complement);
}

json run_finite_search(const json& payload, const RunOverrides& overrides,
                       const OptimizerOptions& opt, std::uint64_t* seed_out,
                       std::string* csv) {
  if (csv) {
    reject("--csv", "finite-search emits no per-sigma table");
  }
  if (!payload.contains("n") || !payload.contains("E_size")) {
    reject("payload", "finite-search requires 'n' and 'E_size'");
  }
  const int n = expect_int(payload["n"], "n");
  const int e_size = expect_int(payload["E_size"], "E_size");

  SearchSampler sampler;
  if (payload.contains("sampler")) {
    const json& sj = payload["sampler"];
    if (!sj.is_object()) {
      reject("sampler", "expected an object");
    }
    if (sj.contains("distribution")) {
      const std::string name = sj["distribution"].is_string()
                                   ? sj["distribution"].get<std::string>()
                                   : std::string();
      if (name == "integer_uniform") {
        sampler.distribution = SearchSampler::Distribution::IntegerUniform;
      } else if (name == "complex_gaussian") {
        sampler.distribution = SearchSampler::Distribution::ComplexGaussian;
      } else {
        reject("sampler.distribution",
               "expected 'integer_uniform' or 'complex_gaussian'");
      }
    }
    if (sj.contains("entry_range")) {
      const json& r = sj["entry_range"];
      if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
        reject("sampler.entry_range", "expected [lo, hi]");
      }
      sampler.entry_min = r[0].get<double>();
      sampler.entry_max = r[1].get<double>();
      if (!(sampler.entry_min < sampler.entry_max)) {
        reject("sampler.entry_range", "lo must be < hi");
      }
    }
    if (sj.contains("integer_entries")) {
      if (!sj["integer_entries"].is_boolean()) {
        reject("sampler.integer_entries", "expected a boolean");
      }
      sampler.integer_entries = sj["integer_entries"].get<bool>();
    }
  }

  std::uint64_t seed = 0;
  if (payload.contains("seed")) {
    if (!payload["seed"].is_number_unsigned() && !payload["seed"].is_number_integer()) {
      reject("seed", "expected an integer seed");
    }
    seed = payload["seed"].get<std::uint64_t>();
  }
  if (overrides.seed) {
    seed = *overrides.seed;
  }
  *seed_out = seed;

  int budget = 1000;
  if (payload.contains("budget")) {
    budget = expect_int(payload["budget"], "budget");
  }
  if (overrides.budget) {
    budget = *overrides.budget;
  }
  double threshold = 1e-4;
  if (payload.contains("threshold")) {
    threshold = expect_number(payload["threshold"], "threshold");
  }
  if (overrides.threshold) {
    threshold = *overrides.threshold;
  }

  std::vector<SearchCandidate> inject;
  if (payload.contains("inject")) {
    const json& ij = payload["inject"];
    if (!ij.is_array()) {
      reject("inject", "expected an array of {S, a, E} candidates");
    }
    for (std::size_t k = 0; k < ij.size(); ++k) {
      const std::string where = "inject[" + std::to_string(k) + "]";
      if (!ij[k].is_object() || !ij[k].contains("S") || !ij[k].contains("a") ||
          !ij[k].contains("E")) {
        reject(where, "expected an object with 'S', 'a', 'E'");
      }
      SearchCandidate candidate;
      candidate.s = parse_matrix(ij[k]["S"], where + ".S");
      if (candidate.s.rows() != candidate.s.cols() ||
          candidate.s.rows() != static_cast<Index>(n)) {
        reject(where + ".S", "expected an n x n matrix");
      }
      candidate.a = parse_complex_list(ij[k]["a"], where + ".a");
      if (candidate.a.size() != static_cast<std::size_t>(n)) {
        reject(where + ".a", "expected n coefficients");
      }
      candidate.e = parse_index_set(ij[k]["E"], where + ".E", n);
      inject.push_back(std::move(candidate));
    }
  }

  const SearchOutcome outcome = search_violations(
      n, e_size, sampler, seed, budget, threshold, opt, Execution::Parallel, inject);

  json hits = json::array();
  for (const SearchHit& hit : outcome.hits) {
    hits.push_back(json{{"S", matrix_json(hit.s)},
                        {"a", complex_list_json(hit.a)},
                        {"E", index_set_json(hit.e)},
                        {"gap", hit.report.gap},
                        {"distance", hit.report.distance},
                        {"sup_compression", hit.report.compressions.supremum},
                        {"converged", hit.report.converged},
                        {"sample_index", hit.sample_index}});
  }
  json results;
  results["hits"] = hits;
  results["samples_evaluated"] = outcome.samples_evaluated;
  results["samples_skipped"] = outcome.samples_skipped;
  results["threshold"] = threshold;
  results["budget"] = budget;
  return results;
}

json tolerance_ledger(const std::string& task, double tol, const OptimizerOptions* opt) {
  json ledger;
  ledger["rank_tol"] = kDefaultRankTol;
  ledger["containment_tol"] = kContainmentTol;
  if (task == "pick-check" || task == "npc-test" || task == "npc-embed") {
    ledger["kernel_normalization"] = "k(0,0)=1 (series weights scaled to c0=1)";
  }
  if (task == "pick-check" || task == "h1-sweep") {
    ledger["pick_rel_tol"] = tol;
  }
  if (task == "pick-solve") {
    ledger["solve_tol"] = tol;
  }
  if (task == "npc-test" || task == "npc-embed") {
    ledger["npc_tol"] = tol;
  }
  if (opt) {
    ledger["optimizer_tol"] = opt->tol;
    ledger["optimizer_restarts"] = opt->restarts;
    ledger["optimizer_max_iter"] = opt->max_iter;
  }
  return ledger;
}

RunResult run_parsed(const json& problem, const RunOverrides& overrides) {
  ReportClock clock;
  if (!problem.is_object()) {
    reject("<root>", "expected a JSON object");
  }
  if (!problem.contains("version") || !problem["version"].is_number_integer() ||
      problem["version"].get<int>() != 1) {
    reject("version", "expected version 1");
  }
  if (!problem.contains("task") || !problem["task"].is_string()) {
    reject("task", "expected a task name");
  }
  if (!problem.contains("payload") || !problem["payload"].is_object()) {
    reject("payload", "expected a payload object");
  }
  const std::string task = problem["task"].get<std::string>();
  const json& payload = problem["payload"];

  double tol = 0.0;
  if (task == "pick-check" || task == "h1-sweep") {
    tol = payload.contains("tol") ? expect_number(payload["tol"], "tol")
                                  : (task == "pick-check" ? kPickRelTol : 1e-7);
  } else if (task == "pick-solve") {
    tol = payload.contains("tol") ? expect_number(payload["tol"], "tol") : 1e-9;
  } else if (task == "npc-test") {
    tol = payload.contains("tol") ? expect_number(payload["tol"], "tol") : 1e-10;
  } else if (task == "npc-embed") {
    tol = payload.contains("tol") ? expect_number(payload["tol"], "tol") : 1e-9;
  }
  if (overrides.tol) {
    tol = *overrides.tol;
  }

  int grid_density = 32;
  if (task == "h1-sweep") {
    if (payload.contains("grid_density")) {
      grid_density = expect_int(payload["grid_density"], "grid_density");
    }
    if (overrides.grid) {
      grid_density = *overrides.grid;
    }
  }
  int max_n = kDefaultLatticeCap;
  if (payload.contains("max_n")) {
    max_n = expect_int(payload["max_n"], "max_n");
  }
  if (overrides.max_n) {
    max_n = *overrides.max_n;
  }

  int exit_code = 0;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string csv;
  std::string* csv_slot = overrides.csv ? &csv : nullptr;
  json results;
  std::optional<OptimizerOptions> opt_used;

  if (task == "pick-check") {
    results = run_pick_check(payload, tol, csv_slot);
  } else if (task == "pick-solve") {
    results = run_pick_solve(payload, tol, csv_slot);
  } else if (task == "h1-sweep") {
    results = run_h1_sweep(payload, tol, grid_density, csv_slot);
  } else if (task == "npc-test") {
    results = run_npc_test(payload, tol, csv_slot);
  } else if (task == "npc-embed") {
    results = run_npc_embed(payload, tol, csv_slot);
  } else if (task == "finite-run") {
    opt_used = parse_optimizer(payload, overrides, true);
    results = run_finite_run(payload, *opt_used, max_n, csv_slot, &exit_code);
  } else if (task == "finite-search") {
    opt_used = parse_optimizer(payload, overrides, false);
    results = run_finite_search(payload, overrides, *opt_used, &seed, csv_slot);
    has_seed = true;
  } else {
    reject("task", "unknown task '" + task + "'");
  }

  RunResult result;
  result.exit_code = exit_code;
  if (overrides.csv) {
    result.output = csv;
    return result;
  }

  json report;
  report["tool"] = "picklab 0.1.0";
  report["task"] = task;
  report["inputs"] = payload;
  report["results"] = results;
  report["tolerances"] =
      tolerance_ledger(task, tol, opt_used ? &*opt_used : nullptr);
  report["seed"] = has_seed ? json(seed) : json(nullptr);
  report["wall_time_ms"] = clock.elapsed_ms();
  result.output = report.dump(2) + "\n";
  return result;
}

}  // namespace

RunResult run_problem_text(const std::string& text, const RunOverrides& overrides) {
  json problem;
  try {
    problem = json::parse(text);
  } catch (const json::parse_error& err) {
    return RunResult{2, "", std::string("invalid problem file: ") + err.what()};
  }
  try {
    return run_parsed(problem, overrides);
  } catch (const SchemaError& err) {
    return RunResult{2, "", err.what()};
  } catch (const std::exception& err) {
    // Numerical failures: singular similarity, optimizer breakdown, etc.
    return RunResult{3, "", err.what()};
  }
}

RunResult run_problem_file(const std::string& path, const RunOverrides& overrides) {
  std::ifstream in(path);
  if (!in) {
    return RunResult{2, "", "cannot read problem file '" + path + "'"};
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return run_problem_text(buffer.str(), overrides);
}

}  // namespace picklab
