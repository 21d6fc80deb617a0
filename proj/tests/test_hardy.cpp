#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "picklab/constrained_hardy.hpp"
#include "test_support.hpp"

using namespace picklab;
using namespace picklab::testing;

namespace {

InterpolationData disk_data(const std::vector<Complex>& nodes,
                            const std::vector<Complex>& targets) {
  InterpolationData data;
  for (const Complex& z : nodes) {
    data.nodes.emplace_back(z);
  }
  data.targets = targets;
  return data;
}

/// Projection oracle: expand k^S_w in monomials up to the given degree,
/// project onto span{alpha + beta z} + z^2 H^2, evaluate at z.
Complex projection_oracle(const FamilyParameter& p, Complex z, Complex w, int degree) {
  const Complex pairing = std::conj(p.alpha) + std::conj(w) * std::conj(p.beta);
  Complex value = pairing * (p.alpha + p.beta * z);
  Complex term = std::conj(w) * std::conj(w) * z * z;
  for (int n = 2; n <= degree; ++n) {
    value += term;
    term *= std::conj(w) * z;
  }
  return value;
}

}  // namespace

TEST_CASE("h1_kernel at the base parameter and origin") {
  const FamilyParameter p = FamilyParameter::from_angles(0.0, 0.0);
  CHECK_NEAR(std::abs(h1_kernel(p, Node(Complex(0, 0)), Node(Complex(0, 0))) -
                      Complex(1, 0)),
             0.0, 1e-15);
}

TEST_CASE("h1_kernel at the origin sees only |alpha|^2") {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> t(0.0, 1.5707963267948966);
  std::uniform_real_distribution<double> f(0.0, 6.283185307179586);
  for (int trial = 0; trial < 20; ++trial) {
    const FamilyParameter p = FamilyParameter::from_angles(t(rng), f(rng));
    const Complex v = h1_kernel(p, Node(Complex(0, 0)), Node(Complex(0, 0)));
    CHECK_NEAR(std::abs(v - Complex(std::norm(p.alpha), 0)), 0.0, 1e-14);
  }
}

TEST_CASE("h1_kernel matches the truncated projection oracle") {
  const FamilyParameter p{Complex(0.6, 0), Complex(0.8, 0), std::acos(0.6), 0.0};
  const Complex z(0.3, 0.0);
  const Complex w(0.2, 0.0);
  const Complex direct = h1_kernel(p, Node(z), Node(w));
  const Complex oracle = projection_oracle(p, z, w, 400);
  CHECK_NEAR(std::abs(direct - oracle), 0.0, 1e-9);
}

TEST_CASE("h1_kernel at (1,0) has the closed form 1 + q^2/(1-q)") {
  std::mt19937_64 rng(101);
  const FamilyParameter p = FamilyParameter::from_angles(0.0, 0.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = separated_disk_points(2, 0.9, rng);
    const Complex q = pts[0] * std::conj(pts[1]);
    const Complex expected = 1.0 + q * q / (1.0 - q);
    CHECK_NEAR(std::abs(h1_kernel(p, Node(pts[0]), Node(pts[1])) - expected), 0.0,
               1e-13);
  }
}

TEST_CASE("h1_kernel validates parameters and nodes") {
  FamilyParameter bad;
  bad.alpha = 1.0;
  bad.beta = 0.5;
  CHECK_THROWS_AS(h1_kernel(bad, Node(Complex(0, 0)), Node(Complex(0, 0))),
                  std::invalid_argument);
  const FamilyParameter p = FamilyParameter::from_angles(0.3, 0.1);
  CHECK_THROWS_AS(h1_kernel(p, Node(Complex(1.0, 0)), Node(Complex(0, 0))),
                  std::invalid_argument);
}

TEST_CASE("property: global phase leaves kernel and verdict unchanged") {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  for (int trial = 0; trial < 20; ++trial) {
    const FamilyParameter p = FamilyParameter::from_angles(angle(rng) / 4.0, angle(rng));
    const double theta = angle(rng);
    const Complex phase(std::cos(theta), std::sin(theta));
    FamilyParameter q;
    q.alpha = phase * p.alpha;
    q.beta = phase * p.beta;
    const auto pts = separated_disk_points(2, 0.8, rng);
    const Complex a = h1_kernel(p, Node(pts[0]), Node(pts[1]));
    const Complex b = h1_kernel(q, Node(pts[0]), Node(pts[1]));
    CHECK_NEAR(std::abs(a - b), 0.0, 1e-13);
  }
}

TEST_CASE("property: h1 kernels are positive kernels") {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> t(0.0, 1.5707963267948966);
  std::uniform_real_distribution<double> f(0.0, 6.283185307179586);
  std::uniform_int_distribution<int> count(2, 6);
  for (int trial = 0; trial < 15; ++trial) {
    const FamilyParameter p = FamilyParameter::from_angles(t(rng), f(rng));
    const auto pts = separated_disk_points(count(rng), 0.85, rng);
    const Index n = static_cast<Index>(pts.size());
    Matrix g(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        g(i, j) = h1_kernel(p, Node(pts[static_cast<std::size_t>(i)]),
                            Node(pts[static_cast<std::size_t>(j)]));
      }
    }
    const HermitianMatrix h(g);
    CHECK(psd_check(h, 1e-10 * std::max(1.0, h.trace_mean())).is_psd);
  }
}

TEST_CASE("sweep accepts data sampled from z^2") {
  const InterpolationData data = disk_data({Complex(0.2, 0), Complex(-0.2, 0)},
                                           {Complex(0.04, 0), Complex(0.04, 0)});
  const ConstrainedFamilyReport report = h1_family_sweep(data, 32, 1e-7);
  CHECK(report.verdict);
  CHECK(report.certification == "grid-certified");
}

TEST_CASE("sweep rejects data violating the unconstrained test") {
  const InterpolationData data = disk_data({Complex(0, 0), Complex(0.1, 0)},
                                           {Complex(0, 0), Complex(0.9, 0)});
  const ConstrainedFamilyReport report = h1_family_sweep(data, 32, 1e-7);
  CHECK_FALSE(report.verdict);
  CHECK(report.certification == "counterexample");
  CHECK(report.worst_eigenvalue < -1e-3);
}

TEST_CASE("sweep accepts a single node with a small target") {
  const ConstrainedFamilyReport report =
      h1_family_sweep(disk_data({Complex(0, 0)}, {Complex(0.7, 0)}), 8, 1e-7);
  CHECK(report.verdict);
}

TEST_CASE("sweep rejects too coarse grids") {
  CHECK_THROWS_AS(
      h1_family_sweep(disk_data({Complex(0, 0)}, {Complex(0.1, 0)}), 4, 1e-7),
      std::invalid_argument);
}

TEST_CASE("property: data from the H-infinity-1 unit ball passes every grid point") {
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    // f = c + z^2 g with g a low-degree polynomial, normalized on the boundary.
    std::vector<Complex> coeffs(5);
    for (auto& c : coeffs) {
      c = Complex(coef(rng), coef(rng));
    }
    auto f = [&coeffs](Complex z) {
      Complex value = coeffs[0];
      Complex zp = z * z;
      for (std::size_t k = 1; k < coeffs.size(); ++k) {
        value += coeffs[k] * zp;
        zp *= z;
      }
      return value;
    };
    double sup = 0.0;
    for (int j = 0; j < 4096; ++j) {
      const double t = 2.0 * 3.14159265358979323846 * j / 4096;
      sup = std::max(sup, std::abs(f(Complex(std::cos(t), std::sin(t)))));
    }
    const double scale = 1.0 / (sup * (1.0 + 1e-6));
    const auto pts = separated_disk_points(3, 0.7, rng);
    std::vector<Complex> targets;
    for (const Complex& z : pts) {
      targets.push_back(scale * f(z));
    }
    const ConstrainedFamilyReport report =
        h1_family_sweep(disk_data(pts, targets), 16, 1e-7);
    CHECK(report.worst_eigenvalue >= -1e-7 * std::max(report.worst_scale, 0.0));
    CHECK(report.verdict);
  }
}
