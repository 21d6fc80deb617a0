#include "picklab/finite_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "picklab/simplex.hpp"

namespace picklab {

namespace {

void validate_index_set(const std::vector<int>& indices, int n, const char* who) {
  std::set<int> seen;
  for (int i : indices) {
    if (i < 0 || i >= n) {
      std::ostringstream msg;
      msg << who << ": index " << i << " out of range for n = " << n;
      throw std::invalid_argument(msg.str());
    }
    if (!seen.insert(i).second) {
      std::ostringstream msg;
      msg << who << ": repeated index " << i;
      throw std::invalid_argument(msg.str());
    }
  }
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  for (int i : a) {
    if (std::find(b.begin(), b.end(), i) == b.end()) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<int> complement_of(const std::vector<int>& e, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (std::find(e.begin(), e.end(), i) == e.end()) {
      out.push_back(i);
    }
  }
  return out;
}

/// All sigma with E subset sigma subset {0..n-1}, in ascending submask order
/// over the complement of E.
std::vector<std::vector<int>> supersets_of(const std::vector<int>& e, int n,
                                           int lattice_cap, const char* who) {
  if (n > lattice_cap) {
    std::ostringstream msg;
    msg << who << ": n = " << n << " exceeds the lattice enumeration cap "
        << lattice_cap << " (use the override to raise it)";
    throw std::invalid_argument(msg.str());
  }
  const std::vector<int> ec = complement_of(e, n);
  const std::size_t free_bits = ec.size();
  std::vector<std::vector<int>> out;
  out.reserve(static_cast<std::size_t>(1) << free_bits);
  for (std::uint64_t mask = 0; mask < (static_cast<std::uint64_t>(1) << free_bits);
       ++mask) {
    std::vector<int> sigma = e;
    for (std::size_t b = 0; b < free_bits; ++b) {
      if (mask & (static_cast<std::uint64_t>(1) << b)) {
        sigma.push_back(ec[b]);
      }
    }
    out.push_back(sorted(std::move(sigma)));
  }
  return out;
}

/// Unit vector spanning L_sigma (-) L_{sigma \ {i}}.
Vector kernel_direction(const FiniteAlgebra& alg, const std::vector<int>& sigma, int i) {
  const Subspace one = semi_invariant(alg, sigma, std::vector<int>{i});
  if (one.dim() != 1) {
    throw std::runtime_error("kernel_direction: expected a one-dimensional space");
  }
  return one.basis().col(0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over the pair; each sample gets an independent stream.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::string format_index_set(const std::vector<int>& indices) {
  std::ostringstream out;
  out << "{";
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k > 0) {
      out << ",";
    }
    out << indices[k] + 1;
  }
  out << "}";
  return out.str();
}

FiniteAlgebra::FiniteAlgebra(Matrix s, Matrix s_inv, Matrix y, double condition)
    : s_(std::move(s)), s_inv_(std::move(s_inv)), y_(std::move(y)),
      condition_(condition) {}

FiniteAlgebra FiniteAlgebra::build(const Matrix& s, double tol) {
  if (s.rows() < 1 || s.rows() != s.cols()) {
    throw std::invalid_argument("build_algebra: similarity must be square, n >= 1");
  }
  Eigen::JacobiSVD<Matrix> svd(s);
  const auto& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > tol * sv(0))) {
    throw std::invalid_argument("build_algebra: singular similarity");
  }
  const double condition = sv(0) / sv(sv.size() - 1);

  const Matrix s_inv = s.partialPivLu().inverse();
  const Matrix y = s_inv.adjoint();  // y_i = (S^*)^{-1} e_i, so <x_j, y_i> = delta_ij

  const Index n = s.rows();
  const Matrix duality = y.adjoint() * s;
  const double duality_defect = (duality - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (duality_defect > 1e-10 * condition) {
    std::ostringstream msg;
    msg << "build_algebra: duality defect " << duality_defect
        << " too large for condition " << condition;
    throw std::runtime_error(msg.str());
  }
  return FiniteAlgebra(s, s_inv, y, condition);
}

Matrix assemble(const FiniteAlgebra& alg, const std::vector<Complex>& a) {
  const Index n = alg.similarity().rows();
  if (static_cast<Index>(a.size()) != n) {
    throw std::invalid_argument("assemble: coefficient count must equal n");
  }
  Vector diag(n);
  for (Index i = 0; i < n; ++i) {
    diag(i) = a[static_cast<std::size_t>(i)];
  }
  return alg.similarity() * diag.asDiagonal() * alg.similarity_inverse();
}

Subspace lattice_subspace(const FiniteAlgebra& alg, const std::vector<int>& sigma) {
  const int n = alg.size();
  validate_index_set(sigma, n, "lattice_subspace");
  if (sigma.empty()) {
    return Subspace::zero(n);
  }
  Matrix columns(n, static_cast<Index>(sigma.size()));
  const std::vector<int> sig = sorted(sigma);
  for (std::size_t k = 0; k < sig.size(); ++k) {
    columns.col(static_cast<Index>(k)) = alg.x(sig[k]);
  }
  return orthonormal_basis(columns);
}

Subspace semi_invariant(const FiniteAlgebra& alg, const std::vector<int>& sigma,
                        const std::vector<int>& e) {
  validate_index_set(sigma, alg.size(), "semi_invariant");
  validate_index_set(e, alg.size(), "semi_invariant");
  const Subspace big = lattice_subspace(alg, sigma);
  const Subspace small = lattice_subspace(alg, set_minus(sorted(sigma), e));
  return subspace_difference(big, small);
}

CompressionTable compression_sup(const FiniteAlgebra& alg, const std::vector<Complex>& a,
                                 const std::vector<int>& e, Execution exec,
                                 int lattice_cap) {
  const int n = alg.size();
  validate_index_set(e, n, "compression_sup");
  if (e.empty()) {
    throw std::invalid_argument("compression_sup: E must be nonempty");
  }
  const std::vector<std::vector<int>> sigmas =
      supersets_of(sorted(e), n, lattice_cap, "compression_sup");
  const Matrix op = assemble(alg, a);

  CompressionTable table;
  table.per_sigma.resize(sigmas.size());
  for_each_index(sigmas.size(), exec, [&](std::size_t idx) {
    const std::vector<int>& sigma = sigmas[idx];
    const Subspace n_sigma = semi_invariant(alg, sigma, e);
    table.per_sigma[idx] = SigmaNorm{sigma, compression_norm(op, n_sigma)};
  });

  table.supremum = 0.0;
  table.argmax = table.per_sigma.front().sigma;
  for (const SigmaNorm& entry : table.per_sigma) {
    if (entry.norm > table.supremum) {
      table.supremum = entry.norm;
      table.argmax = entry.sigma;
    }
  }
  return table;
}

DistanceResult distance_to_ideal(const FiniteAlgebra& alg, const std::vector<Complex>& a,
                                 const std::vector<int>& e, const OptimizerOptions& opt) {
  const int n = alg.size();
  validate_index_set(e, n, "distance_to_ideal");
  if (e.empty()) {
    throw std::invalid_argument("distance_to_ideal: E must be nonempty");
  }
  if (static_cast<int>(a.size()) != n) {
    throw std::invalid_argument("distance_to_ideal: coefficient count must equal n");
  }
  const Matrix op = assemble(alg, a);
  const std::vector<int> ec = complement_of(sorted(e), n);
  const std::size_t m = ec.size();

  DistanceResult result;
  if (m == 0) {
    result.distance = spectral_norm(op);
    result.converged = true;
    return result;
  }

  std::vector<Matrix> idempotents;
  idempotents.reserve(m);
  for (int i : ec) {
    idempotents.push_back(alg.idempotent(i));
  }

  auto objective = [&](const RealVector& v) {
    Matrix candidate = op;
    for (std::size_t k = 0; k < m; ++k) {
      const Complex c(v(static_cast<Index>(2 * k)), v(static_cast<Index>(2 * k + 1)));
      candidate -= c * idempotents[k];
    }
    return spectral_norm(candidate);
  };

  RealVector diagonal_start = RealVector::Zero(static_cast<Index>(2 * m));
  double a_scale = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const Complex ai = a[static_cast<std::size_t>(ec[k])];
    diagonal_start(static_cast<Index>(2 * k)) = ai.real();
    diagonal_start(static_cast<Index>(2 * k + 1)) = ai.imag();
  }
  for (const Complex& ai : a) {
    a_scale = std::max(a_scale, std::abs(ai));
  }

  std::vector<RealVector> starts;
  starts.push_back(RealVector::Zero(static_cast<Index>(2 * m)));
  starts.push_back(diagonal_start);
  std::mt19937_64 rng(0x5eedf00dULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (static_cast<int>(starts.size()) < std::max(opt.restarts, 2)) {
    RealVector perturbed = diagonal_start;
    for (Index k = 0; k < perturbed.size(); ++k) {
      perturbed(k) += 0.3 * (1.0 + a_scale) * gauss(rng);
    }
    starts.push_back(perturbed);
  }

  SimplexOptions simplex_options;
  simplex_options.max_iter = opt.max_iter;
  simplex_options.f_tol = 0.01 * opt.tol;
  simplex_options.x_tol = 1e-12;
  simplex_options.initial_step = 0.5 * (1.0 + a_scale);
  simplex_options.polish_rounds = 4;

  std::vector<double> finals(starts.size());
  std::vector<RealVector> minimizers(starts.size());
  for (std::size_t r = 0; r < starts.size(); ++r) {
    const SimplexResult run = simplex_minimize(objective, starts[r], simplex_options);
    finals[r] = run.value;
    minimizers[r] = run.x;
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < finals.size(); ++r) {
    if (finals[r] < finals[best]) {
      best = r;
    }
  }
  result.distance = finals[best];
  result.minimizer.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    result.minimizer.emplace_back(minimizers[best](static_cast<Index>(2 * k)),
                                  minimizers[best](static_cast<Index>(2 * k + 1)));
  }
  const double worst = *std::max_element(finals.begin(), finals.end());
  result.restart_spread = worst - result.distance;
  result.converged =
      result.restart_spread <= 10.0 * opt.tol * std::max(1.0, result.distance);
  return result;
}

DistanceReport np_gap(const FiniteAlgebra& alg, const std::vector<Complex>& a,
                      const std::vector<int>& e, const OptimizerOptions& opt,
                      Execution exec, int lattice_cap) {
  DistanceReport report;
  report.compressions = compression_sup(alg, a, e, exec, lattice_cap);
  DistanceResult distance = distance_to_ideal(alg, a, e, opt);
  report.distance = distance.distance;
  report.minimizer = std::move(distance.minimizer);
  report.converged = distance.converged;
  report.restart_spread = distance.restart_spread;
  report.gap = report.distance - report.compressions.supremum;
  return report;
}

std::vector<PickReport> family_pick_verdict(const FiniteAlgebra& alg,
                                            const std::vector<int>& e,
                                            const std::vector<Complex>& targets,
                                            double rel_tol, Execution exec,
                                            int lattice_cap) {
  const int n = alg.size();
  const std::vector<int> e_sorted = sorted(e);
  validate_index_set(e_sorted, n, "family_pick_verdict");
  if (e_sorted.empty() || targets.size() != e_sorted.size()) {
    throw std::invalid_argument("family_pick_verdict: one target per index of E required");
  }
  const std::vector<std::vector<int>> sigmas =
      supersets_of(e_sorted, n, lattice_cap, "family_pick_verdict");

  std::vector<PickReport> reports;
  reports.reserve(sigmas.size());
  for (std::size_t idx = 0; idx < sigmas.size(); ++idx) {
    reports.push_back(PickReport{HermitianMatrix(Matrix::Identity(1, 1)), PsdVerdict{},
                                 std::string{}});
  }
  for_each_index(sigmas.size(), exec, [&](std::size_t idx) {
    const std::vector<int>& sigma = sigmas[idx];
    std::vector<Vector> kappa;
    kappa.reserve(e_sorted.size());
    for (int i : e_sorted) {
      kappa.push_back(kernel_direction(alg, sigma, i));
    }
    reports[idx] = multiplicity_pick(targets, kappa,
                                     "sigma=" + format_index_set(sigma), rel_tol);
  });
  return reports;
}

std::vector<PickReport> block_family_test(const FiniteAlgebra& alg,
                                          const std::vector<int>& e,
                                          const std::vector<Matrix>& targets,
                                          double rel_tol, Execution exec,
                                          int lattice_cap) {
  const int n = alg.size();
  const std::vector<int> e_sorted = sorted(e);
  validate_index_set(e_sorted, n, "block_family_test");
  if (e_sorted.empty() || targets.size() != e_sorted.size()) {
    throw std::invalid_argument("block_family_test: one target per index of E required");
  }
  const Index r = targets.front().rows();
  for (const Matrix& w : targets) {
    if (w.rows() != r || w.cols() != r) {
      throw std::invalid_argument("block_family_test: all targets must be square, equal size");
    }
  }
  const std::vector<std::vector<int>> sigmas =
      supersets_of(e_sorted, n, lattice_cap, "block_family_test");

  std::vector<PickReport> reports;
  reports.reserve(sigmas.size());
  for (std::size_t idx = 0; idx < sigmas.size(); ++idx) {
    reports.push_back(PickReport{HermitianMatrix(Matrix::Identity(1, 1)), PsdVerdict{},
                                 std::string{}});
  }
  const Matrix identity = Matrix::Identity(r, r);
  for_each_index(sigmas.size(), exec, [&](std::size_t idx) {
    const std::vector<int>& sigma = sigmas[idx];
    const std::size_t m = e_sorted.size();
    std::vector<Matrix> q;  // one basis per point, relative to L_sigma
    q.reserve(m);
    for (int i : e_sorted) {
      q.push_back(semi_invariant(alg, sigma, std::vector<int>{i}).basis());
    }
    Matrix block(static_cast<Index>(m) * r, static_cast<Index>(m) * r);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        block.block(static_cast<Index>(i) * r, static_cast<Index>(j) * r, r, r) =
            kron(identity - targets[i] * targets[j].adjoint(),
                 q[i].adjoint() * q[j]);
      }
    }
    HermitianMatrix wrapped(0.5 * (block + block.adjoint()));
    const double scale = std::abs(wrapped.trace_mean());
    const PsdVerdict verdict = psd_check(wrapped, rel_tol * scale);
    reports[idx] =
        PickReport{std::move(wrapped), verdict, "sigma=" + format_index_set(sigma)};
  });
  return reports;
}

namespace {

struct Draw {
  Matrix s;
  std::vector<Complex> a;
  std::vector<int> e;
};

Draw draw_sample(int n, int e_size, const SearchSampler& sampler, std::mt19937_64& rng) {
  Draw draw;
  draw.s.resize(n, n);
  const double lo = sampler.entry_min;
  const double hi = sampler.entry_max;
  auto entry = [&]() -> Complex {
    if (sampler.distribution == SearchSampler::Distribution::IntegerUniform) {
      std::uniform_int_distribution<int> dist(static_cast<int>(std::ceil(lo)),
                                              static_cast<int>(std::floor(hi)));
      double re = dist(rng);
      double im = sampler.integer_entries ? 0.0 : dist(rng);
      return Complex(re, im);
    }
    std::normal_distribution<double> gauss(0.0, 0.5 * (hi - lo) / 2.0);
    return Complex(gauss(rng), gauss(rng));
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      draw.s(i, j) = entry();
    }
  }
  draw.a.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    draw.a[static_cast<std::size_t>(i)] = entry();
  }
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    all[static_cast<std::size_t>(i)] = i;
  }
  for (int k = 0; k < e_size; ++k) {
    std::uniform_int_distribution<int> pick_index(k, n - 1);
    std::swap(all[static_cast<std::size_t>(k)],
              all[static_cast<std::size_t>(pick_index(rng))]);
  }
  draw.e.assign(all.begin(), all.begin() + e_size);
  std::sort(draw.e.begin(), draw.e.end());
  return draw;
}

}  // namespace

SearchOutcome search_violations(int n, int e_size, const SearchSampler& sampler,
                                std::uint64_t seed, int budget, double threshold,
                                const OptimizerOptions& opt, Execution exec,
                                const std::vector<SearchCandidate>& inject) {
  if (n < 2) {
    throw std::invalid_argument("search_violations: n must be >= 2");
  }
  if (e_size < 1 || e_size >= n) {
    throw std::invalid_argument("search_violations: E size must satisfy 1 <= |E| < n");
  }
  if (budget < 1) {
    throw std::invalid_argument("search_violations: budget must be >= 1");
  }

  constexpr double kConditionCutoff = 1e6;

  struct Slot {
    bool hit = false;
    bool skipped = false;
    SearchHit value;
  };
  const std::size_t total = static_cast<std::size_t>(budget) + inject.size();
  std::vector<Slot> slots(total);

  for_each_index(total, exec, [&](std::size_t idx) {
    Slot& slot = slots[idx];
    Draw draw;
    std::int64_t sample_index;
    if (idx < inject.size()) {
      const SearchCandidate& candidate = inject[idx];
      draw = Draw{candidate.s, candidate.a, candidate.e};
      sample_index = -static_cast<std::int64_t>(idx) - 1;
    } else {
      const std::uint64_t k = idx - inject.size();
      std::mt19937_64 rng(mix_seed(seed, k));
      draw = draw_sample(n, e_size, sampler, rng);
      sample_index = static_cast<std::int64_t>(k);
    }
    try {
      FiniteAlgebra alg = FiniteAlgebra::build(draw.s, 1.0 / kConditionCutoff);
      if (alg.condition() > kConditionCutoff) {
        slot.skipped = true;
        return;
      }
      DistanceReport report =
          np_gap(alg, draw.a, draw.e, opt, Execution::Serial, kDefaultLatticeCap);
      if (report.gap > threshold) {
        slot.hit = true;
        slot.value = SearchHit{std::move(draw.s), std::move(draw.a), std::move(draw.e),
                               std::move(report), sample_index};
      }
    } catch (const std::exception&) {
      slot.skipped = true;
    }
  });

  SearchOutcome outcome;
  outcome.samples_evaluated = budget;
  for (Slot& slot : slots) {
    if (slot.skipped) {
      ++outcome.samples_skipped;
    } else if (slot.hit) {
      outcome.hits.push_back(std::move(slot.value));
    }
  }
  std::stable_sort(outcome.hits.begin(), outcome.hits.end(),
                   [](const SearchHit& a, const SearchHit& b) {
                     if (a.report.gap != b.report.gap) {
                       return a.report.gap > b.report.gap;
                     }
                     return a.sample_index < b.sample_index;
                   });
  return outcome;
}

}  // namespace picklab
