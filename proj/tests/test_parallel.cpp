// Serial and OpenMP execution must produce bit-identical results: every
// kernel computes per-item values independently and merges them with a
// sequential reduction.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "picklab/constrained_hardy.hpp"
#include "picklab/finite_algebra.hpp"
#include "test_support.hpp"

using namespace picklab;
using namespace picklab::testing;

TEST_CASE("compression_sup: serial equals parallel") {
  std::mt19937_64 rng(191);
  const FiniteAlgebra alg = FiniteAlgebra::build(random_similarity(7, 1e4, rng));
  std::vector<Complex> a;
  for (int i = 0; i < 7; ++i) {
    a.emplace_back(i - 3.0, 0.5 * i);
  }
  const std::vector<int> e{0, 2};
  const CompressionTable serial = compression_sup(alg, a, e, Execution::Serial);
  const CompressionTable parallel = compression_sup(alg, a, e, Execution::Parallel);
  REQUIRE(serial.per_sigma.size() == parallel.per_sigma.size());
  for (std::size_t k = 0; k < serial.per_sigma.size(); ++k) {
    CHECK(serial.per_sigma[k].sigma == parallel.per_sigma[k].sigma);
    CHECK(serial.per_sigma[k].norm == parallel.per_sigma[k].norm);
  }
  CHECK(serial.supremum == parallel.supremum);
  CHECK(serial.argmax == parallel.argmax);
}

TEST_CASE("h1_family_sweep: serial equals parallel") {
  InterpolationData data;
  data.nodes = {Node(Complex(0.2, 0.1)), Node(Complex(-0.3, 0.0)),
                Node(Complex(0.0, 0.35))};
  data.targets = {Complex(0.1, 0.0), Complex(0.0, 0.05), Complex(-0.02, 0.0)};
  const ConstrainedFamilyReport serial =
      h1_family_sweep(data, 16, 1e-7, Execution::Serial);
  const ConstrainedFamilyReport parallel =
      h1_family_sweep(data, 16, 1e-7, Execution::Parallel);
  REQUIRE(serial.min_eigenvalues.size() == parallel.min_eigenvalues.size());
  for (std::size_t k = 0; k < serial.min_eigenvalues.size(); ++k) {
    CHECK(serial.min_eigenvalues[k] == parallel.min_eigenvalues[k]);
  }
  CHECK(serial.worst_eigenvalue == parallel.worst_eigenvalue);
  CHECK(serial.worst_parameter.theta == parallel.worst_parameter.theta);
  CHECK(serial.worst_parameter.phi == parallel.worst_parameter.phi);
  CHECK(serial.verdict == parallel.verdict);
}

TEST_CASE("family_pick_verdict and block_family_test: serial equals parallel") {
  const FiniteAlgebra alg = FiniteAlgebra::build(sec5_similarity());
  const std::vector<int> e = sec5_ideal();
  const std::vector<Complex> w{Complex(-0.2, 0.1), Complex(-0.3, 0), Complex(0.65, 0)};
  const auto serial = family_pick_verdict(alg, e, w, kPickRelTol, Execution::Serial);
  const auto parallel =
      family_pick_verdict(alg, e, w, kPickRelTol, Execution::Parallel);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t k = 0; k < serial.size(); ++k) {
    CHECK(serial[k].label == parallel[k].label);
    CHECK(serial[k].verdict.min_eigenvalue == parallel[k].verdict.min_eigenvalue);
  }

  std::vector<Matrix> blocks;
  for (const Complex& value : w) {
    Matrix m(2, 2);
    m << value, Complex(0.05, 0), Complex(0, 0), 0.5 * value;
    blocks.push_back(m);
  }
  const auto bs = block_family_test(alg, e, blocks, kPickRelTol, Execution::Serial);
  const auto bp = block_family_test(alg, e, blocks, kPickRelTol, Execution::Parallel);
  REQUIRE(bs.size() == bp.size());
  for (std::size_t k = 0; k < bs.size(); ++k) {
    CHECK(bs[k].verdict.min_eigenvalue == bp[k].verdict.min_eigenvalue);
  }
}

TEST_CASE("search_violations: serial equals parallel") {
  SearchSampler sampler;
  sampler.distribution = SearchSampler::Distribution::ComplexGaussian;
  sampler.integer_entries = false;
  OptimizerOptions opt;
  opt.restarts = 3;
  const SearchOutcome serial =
      search_violations(4, 2, sampler, 321, 40, -1.0, opt, Execution::Serial);
  const SearchOutcome parallel =
      search_violations(4, 2, sampler, 321, 40, -1.0, opt, Execution::Parallel);
  REQUIRE(serial.hits.size() == parallel.hits.size());
  CHECK(serial.samples_skipped == parallel.samples_skipped);
  for (std::size_t k = 0; k < serial.hits.size(); ++k) {
    CHECK(serial.hits[k].sample_index == parallel.hits[k].sample_index);
    CHECK(serial.hits[k].report.gap == parallel.hits[k].report.gap);
    CHECK(serial.hits[k].report.distance == parallel.hits[k].report.distance);
  }
}
