#include "picklab/kernels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace picklab {

namespace {

void require_on_disk(const Node& z, const char* who) {
  if (z.norm() >= 1.0) {
    std::ostringstream msg;
    msg << who << ": node norm " << z.norm() << " not inside the open unit ball";
    throw std::invalid_argument(msg.str());
  }
}

void require_dim(const Node& z, int dim, const char* who) {
  if (z.dim() != dim) {
    std::ostringstream msg;
    msg << who << ": node dimension " << z.dim() << ", expected " << dim;
    throw std::invalid_argument(msg.str());
  }
}

Complex ball_pairing(const Node& z, const Node& w) {
  Complex sum = 0.0;
  for (int k = 0; k < z.dim(); ++k) {
    sum += z.coordinate(k) * std::conj(w.coordinate(k));
  }
  return sum;
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace

Node::Node(std::vector<Complex> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw std::invalid_argument("Node: needs at least one coordinate");
  }
}

double Node::norm() const {
  double sum = 0.0;
  for (const Complex& c : coords_) {
    sum += std::norm(c);
  }
  return std::sqrt(sum);
}

KernelSpec KernelSpec::szego() {
  KernelSpec spec;
  spec.variant_ = Variant::Szego;
  return spec;
}

KernelSpec KernelSpec::bergman() {
  KernelSpec spec;
  spec.variant_ = Variant::Bergman;
  return spec;
}

KernelSpec KernelSpec::drury_arveson(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("KernelSpec: Drury-Arveson dimension must be >= 1");
  }
  KernelSpec spec;
  spec.variant_ = Variant::DruryArveson;
  spec.node_dim_ = dim;
  return spec;
}

KernelSpec KernelSpec::weighted_bergman(double s, int truncation) {
  if (!(s > 0.0)) {
    throw std::invalid_argument("KernelSpec: weighted Bergman parameter s must be positive");
  }
  if (truncation < 1) {
    throw std::invalid_argument("KernelSpec: weighted Bergman truncation must be >= 1");
  }
  KernelSpec spec;
  spec.variant_ = Variant::WeightedBergman;
  spec.s_ = s;
  spec.truncation_ = truncation;
  spec.norms_ = std::make_shared<const std::vector<double>>(
      weighted_bergman_norms(s, truncation));
  return spec;
}

KernelSpec KernelSpec::explicit_gram(HermitianMatrix gram, std::vector<Node> labels) {
  if (static_cast<Index>(labels.size()) != gram.size()) {
    throw std::invalid_argument("KernelSpec: one node label per Gram row required");
  }
  const PsdVerdict verdict = psd_check(gram, 1e-10 * std::max(1.0, gram.trace_mean()));
  if (!verdict.is_psd) {
    std::ostringstream msg;
    msg << "KernelSpec: explicit Gram not PSD, min eigenvalue " << verdict.min_eigenvalue;
    throw std::invalid_argument(msg.str());
  }
  KernelSpec spec;
  spec.variant_ = Variant::ExplicitGram;
  spec.node_dim_ = labels.front().dim();
  spec.gram_ = std::make_shared<const HermitianMatrix>(std::move(gram));
  spec.labels_ = std::make_shared<const std::vector<Node>>(std::move(labels));
  return spec;
}

std::string KernelSpec::name() const {
  switch (variant_) {
    case Variant::Szego:
      return "szego";
    case Variant::Bergman:
      return "bergman";
    case Variant::DruryArveson:
      return "drury_arveson(" + std::to_string(node_dim_) + ")";
    case Variant::WeightedBergman:
      return "weighted_bergman(s=" + std::to_string(s_) + ")";
    case Variant::ExplicitGram:
      return "explicit_gram";
  }
  return "unknown";
}

const HermitianMatrix& KernelSpec::gram() const {
  if (!gram_) {
    throw std::logic_error("KernelSpec: no Gram stored for this variant");
  }
  return *gram_;
}

const std::vector<Node>& KernelSpec::labels() const {
  if (!labels_) {
    throw std::logic_error("KernelSpec: no labels stored for this variant");
  }
  return *labels_;
}

const std::vector<double>& KernelSpec::monomial_norms() const {
  if (!norms_) {
    throw std::logic_error("KernelSpec: no monomial norms stored for this variant");
  }
  return *norms_;
}

Complex kernel_eval(const KernelSpec& spec, const Node& z, const Node& w) {
  switch (spec.variant()) {
    case KernelSpec::Variant::Szego: {
      require_dim(z, 1, "kernel_eval");
      require_dim(w, 1, "kernel_eval");
      require_on_disk(z, "kernel_eval");
      require_on_disk(w, "kernel_eval");
      return 1.0 / (1.0 - z.coordinate(0) * std::conj(w.coordinate(0)));
    }
    case KernelSpec::Variant::Bergman: {
      require_dim(z, 1, "kernel_eval");
      require_dim(w, 1, "kernel_eval");
      require_on_disk(z, "kernel_eval");
      require_on_disk(w, "kernel_eval");
      const Complex q = 1.0 - z.coordinate(0) * std::conj(w.coordinate(0));
      return 1.0 / (q * q);
    }
    case KernelSpec::Variant::DruryArveson: {
      require_dim(z, spec.node_dim(), "kernel_eval");
      require_dim(w, spec.node_dim(), "kernel_eval");
      require_on_disk(z, "kernel_eval");
      require_on_disk(w, "kernel_eval");
      return 1.0 / (1.0 - ball_pairing(z, w));
    }
    case KernelSpec::Variant::WeightedBergman: {
      require_dim(z, 1, "kernel_eval");
      require_dim(w, 1, "kernel_eval");
      require_on_disk(z, "kernel_eval");
      require_on_disk(w, "kernel_eval");
      const Complex q = z.coordinate(0) * std::conj(w.coordinate(0));
      const std::vector<double>& c = spec.monomial_norms();
      const int trunc = spec.truncation();
      Complex sum = 0.0;
      Complex power = 1.0;
      for (int n = 0; n <= trunc; ++n) {
        sum += power / c[static_cast<std::size_t>(n)];
        power *= q;
      }
      // Tail control: 1/c_n grows by at most (1 + s/(2n+2))^2 per step.
      const double aq = std::abs(q);
      const double growth = std::pow(1.0 + spec.weight_s() / (2.0 * trunc + 2.0), 2.0);
      if (aq * growth >= 1.0) {
        throw std::runtime_error("kernel_eval: weighted Bergman truncation insufficient");
      }
      const double tail = (growth / c[static_cast<std::size_t>(trunc)]) *
                          std::pow(aq, trunc + 1) / (1.0 - aq * growth);
      if (tail > 1e-12 * std::max(1.0, std::abs(sum))) {
        throw std::runtime_error("kernel_eval: weighted Bergman truncation insufficient");
      }
      return sum;
    }
    case KernelSpec::Variant::ExplicitGram: {
      const std::vector<Node>& labels = spec.labels();
      auto find = [&labels](const Node& node) -> Index {
        for (std::size_t i = 0; i < labels.size(); ++i) {
          if (labels[i] == node) {
            return static_cast<Index>(i);
          }
        }
        throw std::invalid_argument("kernel_eval: explicit Gram queried at unlabeled node");
      };
      return spec.gram()(find(z), find(w));
    }
  }
  throw std::logic_error("kernel_eval: unhandled kernel variant");
}

HermitianMatrix gram_matrix(const KernelSpec& spec, const std::vector<Node>& nodes) {
  if (nodes.empty()) {
    throw std::invalid_argument("gram_matrix: needs at least one node");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes[i] == nodes[j]) {
        throw std::invalid_argument("gram_matrix: duplicate nodes");
      }
    }
  }
  const Index n = static_cast<Index>(nodes.size());
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const Complex value = kernel_eval(spec, nodes[static_cast<std::size_t>(i)],
                                        nodes[static_cast<std::size_t>(j)]);
      g(i, j) = value;
      g(j, i) = std::conj(value);
    }
    g(i, i) = Complex(g(i, i).real(), 0.0);
  }
  return HermitianMatrix(std::move(g));
}

Complex bergman_derivative_kernel(const Node& lambda, int n, const Node& z) {
  require_dim(lambda, 1, "bergman_derivative_kernel");
  require_dim(z, 1, "bergman_derivative_kernel");
  require_on_disk(lambda, "bergman_derivative_kernel");
  require_on_disk(z, "bergman_derivative_kernel");
  if (n < 0) {
    throw std::invalid_argument("bergman_derivative_kernel: derivative order must be >= 0");
  }
  double factorial = 1.0;
  for (int k = 2; k <= n + 1; ++k) {
    factorial *= k;
  }
  const Complex zc = z.coordinate(0);
  const Complex base = 1.0 - std::conj(lambda.coordinate(0)) * zc;
  return factorial * std::pow(zc, n) / std::pow(base, n + 2);
}

std::vector<double> weighted_bergman_norms(double s, int max_degree) {
  if (!(s > 0.0)) {
    throw std::invalid_argument("weighted_bergman_norms: s must be positive");
  }
  if (max_degree < 0) {
    throw std::invalid_argument("weighted_bergman_norms: max_degree must be >= 0");
  }
  std::vector<double> norms(static_cast<std::size_t>(max_degree) + 1);
  const double log_c0 = log_beta(2.0, s);
  for (int n = 0; n <= max_degree; ++n) {
    norms[static_cast<std::size_t>(n)] = std::exp(log_beta(2.0 * n + 2.0, s) - log_c0);
  }
  return norms;
}

}  // namespace picklab
