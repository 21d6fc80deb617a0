// Benchmark comparing the serial reference paths against the OpenMP kernels
// on the three data-parallel hot spots: lattice compression sweeps, family
// parameter sweeps, and the randomized counterexample search.  Also verifies
// that both modes produce identical results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "picklab/constrained_hardy.hpp"
#include "picklab/finite_algebra.hpp"

using namespace picklab;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

Matrix random_similarity(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-3, 3);
  Matrix s(n, n);
  while (true) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        s(i, j) = Complex(dist(rng), 0.0);
      }
    }
    Eigen::JacobiSVD<Matrix> svd(s);
    if (svd.singularValues()(n - 1) > 1e-6 * svd.singularValues()(0)) {
      return s;
    }
  }
}

struct Timing {
  double serial_ms = 0.0;
  double parallel_ms = 0.0;
  double max_delta = 0.0;
};

void print_row(const char* name, const Timing& t) {
  std::printf("%-24s %10.1f ms %10.1f ms %8.2fx   max |delta| %.3g\n", name,
              t.serial_ms, t.parallel_ms, t.serial_ms / t.parallel_ms, t.max_delta);
}

Timing bench_compression() {
  std::mt19937_64 rng(42);
  const int n = 12;
  const FiniteAlgebra alg = FiniteAlgebra::build(random_similarity(n, rng));
  std::vector<Complex> a;
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  for (int i = 0; i < n; ++i) {
    a.emplace_back(coef(rng), 0.0);
  }
  const std::vector<int> e{0, 1, 2};

  Timing t;
  double start = now_ms();
  const CompressionTable serial = compression_sup(alg, a, e, Execution::Serial);
  t.serial_ms = now_ms() - start;
  start = now_ms();
  const CompressionTable parallel = compression_sup(alg, a, e, Execution::Parallel);
  t.parallel_ms = now_ms() - start;
  for (std::size_t i = 0; i < serial.per_sigma.size(); ++i) {
    t.max_delta = std::max(
        t.max_delta, std::abs(serial.per_sigma[i].norm - parallel.per_sigma[i].norm));
  }
  return t;
}

Timing bench_sweep() {
  InterpolationData data;
  data.nodes = {Node(Complex(0.2, 0.1)), Node(Complex(-0.3, 0.2)),
                Node(Complex(0.1, -0.4)), Node(Complex(-0.1, -0.1))};
  data.targets = {Complex(0.04, 0.0), Complex(0.05, -0.08), Complex(-0.1, 0.0),
                  Complex(0.01, 0.0)};
  Timing t;
  double start = now_ms();
  const ConstrainedFamilyReport serial = h1_family_sweep(data, 96, 1e-7, Execution::Serial);
  t.serial_ms = now_ms() - start;
  start = now_ms();
  const ConstrainedFamilyReport parallel =
      h1_family_sweep(data, 96, 1e-7, Execution::Parallel);
  t.parallel_ms = now_ms() - start;
  for (std::size_t i = 0; i < serial.min_eigenvalues.size(); ++i) {
    t.max_delta = std::max(t.max_delta, std::abs(serial.min_eigenvalues[i] -
                                                 parallel.min_eigenvalues[i]));
  }
  return t;
}

Timing bench_search() {
  SearchSampler sampler;
  OptimizerOptions opt;
  opt.restarts = 4;
  Timing t;
  double start = now_ms();
  const SearchOutcome serial =
      search_violations(4, 2, sampler, 2024, 300, 1e-3, opt, Execution::Serial);
  t.serial_ms = now_ms() - start;
  start = now_ms();
  const SearchOutcome parallel =
      search_violations(4, 2, sampler, 2024, 300, 1e-3, opt, Execution::Parallel);
  t.parallel_ms = now_ms() - start;
  t.max_delta = std::abs(static_cast<double>(serial.hits.size()) -
                         static_cast<double>(parallel.hits.size()));
  for (std::size_t i = 0; i < std::min(serial.hits.size(), parallel.hits.size()); ++i) {
    t.max_delta = std::max(t.max_delta, std::abs(serial.hits[i].report.gap -
                                                 parallel.hits[i].report.gap));
  }
  return t;
}

}  // namespace

int main() {
  std::printf("%-24s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");
  print_row("compression_sup n=12", bench_compression());
  print_row("h1_family_sweep g=96", bench_sweep());
  print_row("search n=4 budget=300", bench_search());
  return 0;
}
