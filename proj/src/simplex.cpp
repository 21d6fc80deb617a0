#include "picklab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace picklab {

namespace {

struct Simplex {
  std::vector<RealVector> points;
  std::vector<double> values;
};

void sort_simplex(Simplex& s, std::vector<int>& order) {
  order.resize(s.points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&s](int a, int b) { return s.values[a] < s.values[b]; });
  std::vector<RealVector> pts(s.points.size());
  std::vector<double> vals(s.points.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    pts[i] = s.points[static_cast<std::size_t>(order[i])];
    vals[i] = s.values[static_cast<std::size_t>(order[i])];
  }
  s.points = std::move(pts);
  s.values = std::move(vals);
}

SimplexResult run_once(const std::function<double(const RealVector&)>& f,
                       const RealVector& start, double step, const SimplexOptions& opt,
                       int* evals) {
  const Index dim = start.size();
  Simplex s;
  s.points.push_back(start);
  s.values.push_back(f(start));
  ++*evals;
  for (Index k = 0; k < dim; ++k) {
    RealVector p = start;
    p(k) += step * std::max(1.0, std::abs(start(k)));
    s.points.push_back(p);
    s.values.push_back(f(p));
    ++*evals;
  }

  std::vector<int> order;
  int iter = 0;
  for (; iter < opt.max_iter; ++iter) {
    sort_simplex(s, order);
    const double spread = s.values.back() - s.values.front();
    double diameter = 0.0;
    for (std::size_t i = 1; i < s.points.size(); ++i) {
      diameter = std::max(diameter, (s.points[i] - s.points[0]).lpNorm<Eigen::Infinity>());
    }
    if (spread <= opt.f_tol * (1.0 + std::abs(s.values.front())) &&
        diameter <= opt.x_tol * (1.0 + s.points[0].lpNorm<Eigen::Infinity>())) {
      break;
    }

    RealVector centroid = RealVector::Zero(dim);
    for (std::size_t i = 0; i + 1 < s.points.size(); ++i) {
      centroid += s.points[i];
    }
    centroid /= static_cast<double>(dim);

    const RealVector& worst = s.points.back();
    const RealVector reflected = centroid + (centroid - worst);
    const double f_reflected = f(reflected);
    ++*evals;

    if (f_reflected < s.values.front()) {
      const RealVector expanded = centroid + 2.0 * (centroid - worst);
      const double f_expanded = f(expanded);
      ++*evals;
      if (f_expanded < f_reflected) {
        s.points.back() = expanded;
        s.values.back() = f_expanded;
      } else {
        s.points.back() = reflected;
        s.values.back() = f_reflected;
      }
      continue;
    }
    if (f_reflected < s.values[s.values.size() - 2]) {
      s.points.back() = reflected;
      s.values.back() = f_reflected;
      continue;
    }

    const bool outside = f_reflected < s.values.back();
    const RealVector contracted =
        outside ? RealVector(centroid + 0.5 * (reflected - centroid))
                : RealVector(centroid + 0.5 * (worst - centroid));
    const double f_contracted = f(contracted);
    ++*evals;
    if (f_contracted < std::min(f_reflected, s.values.back())) {
      s.points.back() = contracted;
      s.values.back() = f_contracted;
      continue;
    }

    for (std::size_t i = 1; i < s.points.size(); ++i) {
      s.points[i] = s.points[0] + 0.5 * (s.points[i] - s.points[0]);
      s.values[i] = f(s.points[i]);
      ++*evals;
    }
  }

  sort_simplex(s, order);
  SimplexResult result;
  result.x = s.points.front();
  result.value = s.values.front();
  result.iterations = iter;
  return result;
}

}  // namespace

SimplexResult simplex_minimize(const std::function<double(const RealVector&)>& objective,
                               const RealVector& start, const SimplexOptions& options) {
  if (start.size() == 0) {
    SimplexResult result;
    result.x = start;
    result.value = objective(start);
    result.evaluations = 1;
    return result;
  }
  int evals = 0;
  SimplexResult best = run_once(objective, start, options.initial_step, options, &evals);
  double step = options.initial_step;
  for (int round = 1; round < options.polish_rounds; ++round) {
    step = std::max(step * 0.05, 1e-7);
    SimplexResult next = run_once(objective, best.x, step, options, &evals);
    const double gain = best.value - next.value;
    if (next.value < best.value) {
      next.iterations += best.iterations;
      best = std::move(next);
    }
    if (gain <= options.f_tol * (1.0 + std::abs(best.value))) {
      break;
    }
  }
  best.evaluations = evals;
  return best;
}

}  // namespace picklab
