#pragma once

#include <cmath>
#include <random>

#include "picklab/finite_algebra.hpp"
#include "picklab/types.hpp"

#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))
#define REQUIRE_NEAR(a, b, tol) REQUIRE(std::abs((a) - (b)) <= (tol))

namespace picklab::testing {

inline Matrix random_complex_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return m;
}

inline Vector random_complex_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) {
    v(i) = Complex(gauss(rng), gauss(rng));
  }
  return v;
}

inline Matrix random_unitary(Index n, std::mt19937_64& rng) {
  const Matrix g = random_complex_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  // Fix column phases so Q is a deterministic function of G.
  const Matrix r = q.adjoint() * g;
  for (Index k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0) {
      q.col(k) *= d / std::abs(d);
    }
  }
  return q;
}

/// Random similarity with condition number below the given cap.
inline Matrix random_similarity(int n, double cond_cap, std::mt19937_64& rng) {
  while (true) {
    const Matrix s = random_complex_matrix(n, n, rng);
    Eigen::JacobiSVD<Matrix> svd(s);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) > 0 && sv(0) / sv(n - 1) <= cond_cap) {
      return s;
    }
  }
}

/// The 5x5 similarity of the bundled counterexample.
inline Matrix sec5_similarity() {
  Matrix s(5, 5);
  s << 3, 1, 1, 0, -1,
       0, 1, -2, -1, 0,
      -1, 0, -1, 1, -1,
      -1, 1, 2, 1, -1,
       1, 1, 3, 1, -2;
  return s;
}

inline std::vector<Complex> sec5_coefficients() {
  return {Complex(-2, 0), Complex(-3, 0), Complex(7, 0), Complex(0, 0), Complex(0, 0)};
}

inline std::vector<int> sec5_ideal() { return {0, 1, 2}; }

/// Finite Blaschke product with the given zeros, contractive on the disk.
struct BlaschkeProduct {
  std::vector<Complex> zeros;
  Complex phase = 1.0;

  Complex operator()(Complex z) const {
    Complex value = phase;
    for (const Complex& a : zeros) {
      value *= (z - a) / (1.0 - std::conj(a) * z);
    }
    return value;
  }
};

inline BlaschkeProduct random_blaschke(int degree, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> radius(0.0, 0.8);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
  BlaschkeProduct b;
  for (int k = 0; k < degree; ++k) {
    const double r = radius(rng);
    const double t = angle(rng);
    b.zeros.emplace_back(r * std::cos(t), r * std::sin(t));
  }
  const double t = angle(rng);
  b.phase = Complex(std::cos(t), std::sin(t));
  return b;
}

/// Distinct nodes in the disk of the given radius, pairwise separated.
inline std::vector<Complex> separated_disk_points(int count, double max_radius,
                                                  std::mt19937_64& rng) {
  std::uniform_real_distribution<double> radius(0.0, max_radius);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
  std::vector<Complex> points;
  while (static_cast<int>(points.size()) < count) {
    const double r = radius(rng);
    const double t = angle(rng);
    const Complex z(r * std::cos(t), r * std::sin(t));
    bool ok = true;
    for (const Complex& p : points) {
      if (std::abs(p - z) < 0.1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      points.push_back(z);
    }
  }
  return points;
}

}  // namespace picklab::testing
