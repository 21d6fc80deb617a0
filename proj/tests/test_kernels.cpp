#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "picklab/kernels.hpp"
#include "test_support.hpp"

using namespace picklab;
using namespace picklab::testing;

namespace {

std::vector<Node> random_disk_nodes(int count, double max_radius, std::mt19937_64& rng) {
  std::vector<Node> nodes;
  for (const Complex& z : separated_disk_points(count, max_radius, rng)) {
    nodes.emplace_back(z);
  }
  return nodes;
}

std::vector<Node> random_ball_nodes(int count, int dim, double max_radius,
                                    std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<Node> nodes;
  while (static_cast<int>(nodes.size()) < count) {
    std::vector<Complex> coords(static_cast<std::size_t>(dim));
    double norm2 = 0.0;
    for (auto& c : coords) {
      c = Complex(coord(rng), coord(rng));
      norm2 += std::norm(c);
    }
    if (norm2 >= max_radius * max_radius) {
      continue;
    }
    nodes.emplace_back(Node(coords));
  }
  return nodes;
}

// Truncated-monomial Bergman pairing <h, k> = sum h_n conj(k_n) / (n+1),
// independent of the closed-form kernel path.
Complex bergman_pairing(const std::vector<Complex>& h_coeffs,
                        const std::vector<Complex>& k_coeffs) {
  Complex sum = 0.0;
  const std::size_t len = std::min(h_coeffs.size(), k_coeffs.size());
  for (std::size_t n = 0; n < len; ++n) {
    sum += h_coeffs[n] * std::conj(k_coeffs[n]) / (static_cast<double>(n) + 1.0);
  }
  return sum;
}

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  double sum = f(a) + f(b);
  const double h = (b - a) / panels;
  for (int k = 1; k < panels; ++k) {
    sum += f(a + k * h) * (k % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("szego kernel at the origin") {
  CHECK(kernel_eval(KernelSpec::szego(), Node(Complex(0, 0)), Node(Complex(0, 0))) ==
        Complex(1.0, 0.0));
}

TEST_CASE("bergman kernel closed form at 0.5") {
  const Complex v =
      kernel_eval(KernelSpec::bergman(), Node(Complex(0.5, 0)), Node(Complex(0.5, 0)));
  CHECK_NEAR(v.real(), 16.0 / 9.0, 1e-14);
  CHECK_NEAR(v.imag(), 0.0, 1e-14);
}

TEST_CASE("weighted bergman with s=1 reproduces the bergman kernel") {
  const KernelSpec weighted = KernelSpec::weighted_bergman(1.0, 200);
  const Node z(Complex(0.3, 0.0));
  const Complex series = kernel_eval(weighted, z, z);
  const Complex closed = kernel_eval(KernelSpec::bergman(), z, z);
  CHECK_NEAR(std::abs(series - closed), 0.0, 1e-8);
  // Normalization pins k(0,0) = 1.
  const Complex at0 =
      kernel_eval(weighted, Node(Complex(0, 0)), Node(Complex(0, 0)));
  CHECK_NEAR(std::abs(at0 - Complex(1.0, 0.0)), 0.0, 1e-14);
}

TEST_CASE("conjugate symmetry for every variant") {
  std::mt19937_64 rng(17);
  const std::vector<KernelSpec> specs = {
      KernelSpec::szego(), KernelSpec::bergman(), KernelSpec::weighted_bergman(1.7, 300)};
  for (const KernelSpec& spec : specs) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto pts = random_disk_nodes(2, 0.9, rng);
      const Complex a = kernel_eval(spec, pts[0], pts[1]);
      const Complex b = kernel_eval(spec, pts[1], pts[0]);
      CHECK_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-12 * std::abs(a));
    }
  }
  const KernelSpec da = KernelSpec::drury_arveson(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pts = random_ball_nodes(2, 3, 0.9, rng);
    const Complex a = kernel_eval(da, pts[0], pts[1]);
    const Complex b = kernel_eval(da, pts[1], pts[0]);
    CHECK_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-12 * std::abs(a));
  }
}

TEST_CASE("kernel_eval rejects boundary nodes and dimension mismatch") {
  CHECK_THROWS_AS(
      kernel_eval(KernelSpec::szego(), Node(Complex(1.0, 0)), Node(Complex(0, 0))),
      std::invalid_argument);
  CHECK_THROWS_AS(kernel_eval(KernelSpec::drury_arveson(2), Node(Complex(0.1, 0)),
                              Node(Complex(0.2, 0))),
                  std::invalid_argument);
}

TEST_CASE("gram_matrix examples") {
  const HermitianMatrix single =
      gram_matrix(KernelSpec::szego(), {Node(Complex(0, 0))});
  CHECK(single.size() == 1);
  CHECK_NEAR(std::abs(single(0, 0) - Complex(1, 0)), 0.0, 1e-15);

  const HermitianMatrix two = gram_matrix(
      KernelSpec::szego(), {Node(Complex(0, 0)), Node(Complex(0.5, 0))});
  CHECK_NEAR(std::abs(two(0, 0) - Complex(1, 0)), 0.0, 1e-15);
  CHECK_NEAR(std::abs(two(0, 1) - Complex(1, 0)), 0.0, 1e-15);
  CHECK_NEAR(std::abs(two(1, 1) - Complex(4.0 / 3.0, 0)), 0.0, 1e-15);
}

TEST_CASE("gram_matrix rejects duplicate nodes") {
  CHECK_THROWS_AS(
      gram_matrix(KernelSpec::szego(), {Node(Complex(0.1, 0)), Node(Complex(0.1, 0))}),
      std::invalid_argument);
}

TEST_CASE("drury-arveson gram on random ball points is PSD") {
  std::mt19937_64 rng(19);
  const auto nodes = random_ball_nodes(4, 2, 0.9, rng);
  const HermitianMatrix g = gram_matrix(KernelSpec::drury_arveson(2), nodes);
  const PsdVerdict verdict = psd_check(g, 1e-10 * g.trace_mean());
  CHECK(verdict.is_psd);
}

TEST_CASE("property: grams of every variant on random nodes are PSD") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    std::uniform_int_distribution<int> count(2, 8);
    const int m = count(rng);
    const auto nodes = random_disk_nodes(m, 0.85, rng);
    for (const KernelSpec& spec :
         {KernelSpec::szego(), KernelSpec::bergman(),
          KernelSpec::weighted_bergman(0.5 + 0.3 * trial, 400)}) {
      const HermitianMatrix g = gram_matrix(spec, nodes);
      CHECK(psd_check(g, 1e-8 * g.trace_mean()).is_psd);
    }
    const auto ball = random_ball_nodes(m, 2, 0.85, rng);
    const HermitianMatrix g = gram_matrix(KernelSpec::drury_arveson(2), ball);
    CHECK(psd_check(g, 1e-8 * g.trace_mean()).is_psd);
  }
}

TEST_CASE("property: two-point szego gram determinant matches the closed form") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pts = separated_disk_points(2, 0.9, rng);
    const Complex z = pts[0];
    const Complex w = pts[1];
    const HermitianMatrix g =
        gram_matrix(KernelSpec::szego(), {Node(z), Node(w)});
    const Complex det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    const double closed = 1.0 / ((1.0 - std::norm(z)) * (1.0 - std::norm(w))) -
                          1.0 / std::norm(1.0 - std::conj(z) * w);
    CHECK_NEAR(det.real(), closed, 1e-12 * std::max(1.0, std::abs(closed)));
    CHECK_NEAR(det.imag(), 0.0, 1e-12);
  }
}

TEST_CASE("explicit gram kernel answers by label and rejects unknown nodes") {
  Matrix g(2, 2);
  g << 2.0, 0.5, 0.5, 1.0;
  const std::vector<Node> labels{Node(Complex(0.1, 0)), Node(Complex(0.2, 0))};
  const KernelSpec spec = KernelSpec::explicit_gram(HermitianMatrix(g), labels);
  CHECK_NEAR(std::abs(kernel_eval(spec, labels[0], labels[1]) - Complex(0.5, 0)), 0.0,
             1e-15);
  CHECK_THROWS_AS(kernel_eval(spec, Node(Complex(0.3, 0)), labels[0]),
                  std::invalid_argument);
}

TEST_CASE("bergman derivative kernel reduces to the bergman kernel at n=0") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = separated_disk_points(2, 0.9, rng);
    const Complex direct = bergman_derivative_kernel(Node(pts[0]), 0, Node(pts[1]));
    const Complex closed =
        kernel_eval(KernelSpec::bergman(), Node(pts[1]), Node(pts[0]));
    CHECK(direct == closed);  // identical formula path, bit-exact
  }
}

TEST_CASE("bergman derivative kernel formula at the origin") {
  const Complex v =
      bergman_derivative_kernel(Node(Complex(0, 0)), 1, Node(Complex(0.5, 0)));
  CHECK_NEAR(std::abs(v - Complex(1.0, 0.0)), 0.0, 1e-15);
}

TEST_CASE("bergman derivative kernel pairing reproduces h'(lambda)") {
  // h(z) = z^2, lambda = 0.3: <h, k_{lambda,1}> should equal h'(0.3) = 0.6.
  const Complex lambda(0.3, 0.0);
  const int degree = 400;
  std::vector<Complex> h(3, 0.0);
  h[2] = 1.0;
  // Monomial coefficients of k_{lambda,1} from point evaluations is awkward;
  // expand analytically: k(z) = 2 z sum_m C(m+2,2)-style growth.  Use finite
  // differences instead: coefficients via derivatives of the closed form at 0.
  // k(z) = 2! z (1 - conj(lambda) z)^{-3} = sum_m 2 binom(m+2, 2) conj(lambda)^m z^{m+1}.
  std::vector<Complex> k(static_cast<std::size_t>(degree) + 2, 0.0);
  for (int m = 0; m + 1 <= degree + 1; ++m) {
    const double binom = (m + 2.0) * (m + 1.0) / 2.0;
    k[static_cast<std::size_t>(m) + 1] =
        2.0 * binom * std::pow(std::conj(lambda), m);
  }
  const Complex paired = bergman_pairing(h, k);
  CHECK_NEAR(std::abs(paired - Complex(0.6, 0.0)), 0.0, 1e-7);
}

TEST_CASE("weighted_bergman_norms across s") {
  const auto bergman = weighted_bergman_norms(1.0, 6);
  for (int n = 0; n <= 6; ++n) {
    CHECK_NEAR(bergman[static_cast<std::size_t>(n)], 1.0 / (n + 1.0), 1e-12);
  }
  for (double s : {0.4, 1.0, 2.0, 3.5}) {
    CHECK_NEAR(weighted_bergman_norms(s, 3)[0], 1.0, 1e-15);
  }
  CHECK_THROWS_AS(weighted_bergman_norms(0.0, 3), std::invalid_argument);
}

TEST_CASE("weighted_bergman_norms s=2 n=3 against quadrature") {
  // c_3 / c_0 with c_n = 2 pi int_0^1 r^{2n+1} (1-r)^{s-1} dr at s = 2.
  const auto norms = weighted_bergman_norms(2.0, 3);
  const auto w = [](double r, int n) { return std::pow(r, 2 * n + 1) * (1.0 - r); };
  const double c3 = simpson([&](double r) { return w(r, 3); }, 0.0, 1.0, 4096);
  const double c0 = simpson([&](double r) { return w(r, 0); }, 0.0, 1.0, 4096);
  CHECK_NEAR(norms[3], c3 / c0, 1e-9);
  CHECK_NEAR(norms[3], 1.0 / 12.0, 1e-12);
}
