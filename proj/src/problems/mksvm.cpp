#include "ogaprox/problems/mksvm.hpp"

#include "ogaprox/linalg.hpp"

#include <cmath>

namespace ogaprox {

namespace {

constexpr double kDomainTol = 1e-8;

}  // namespace

std::string to_string(KernelType k) {
  switch (k) {
    case KernelType::Polynomial:
      return "polynomial";
    case KernelType::Gaussian:
      return "gaussian";
    case KernelType::Linear:
      return "linear";
  }
  return "unknown";
}

Matrix kernel_matrix(KernelType type, const Matrix& points) {
  const Matrix gram = points * points.transpose();
  switch (type) {
    case KernelType::Polynomial:
      return (gram.array() + 1.0).square().matrix();
    case KernelType::Linear:
      return gram;
    case KernelType::Gaussian: {
      const Vector sq = gram.diagonal();
      Matrix k(gram.rows(), gram.cols());
      for (Index j = 0; j < k.cols(); ++j)
        for (Index i = 0; i < k.rows(); ++i) k(i, j) = std::exp(-5.0 * std::max(0.0, sq(i) + sq(j) - 2.0 * gram(i, j)));
      return k;
    }
  }
  throw InvalidArgument("unknown kernel type");
}

Matrix normalize_kernel(const Matrix& k) {
  if (k.rows() != k.cols()) throw InvalidArgument("normalize_kernel: matrix must be square");
  const Vector diag = k.diagonal();
  if (!(diag.minCoeff() > 0.0)) throw InvalidArgument("normalize_kernel: diagonal entries must be positive");
  const Vector s = diag.cwiseSqrt().cwiseInverse();
  return s.asDiagonal() * k * s.asDiagonal();
}

MkSvmProblem::MkSvmProblem(std::vector<Matrix> m_list, Vector labels, double mu, double nu, double box_c)
    : m_(std::move(m_list)), b_(std::move(labels)), set_(0.0, box_c, b_, 0.0) {
  if (m_.empty()) throw InvalidArgument("mksvm: need at least one kernel");
  if (!(mu >= 0.0) || !(nu >= 0.0)) throw InvalidArgument("mksvm: mu and nu must be nonnegative");
  for (Index i = 0; i < b_.size(); ++i)
    if (b_(i) != 1.0 && b_(i) != -1.0) throw InvalidArgument("mksvm: labels must be +1 or -1");
  double max_norm = 0.0;
  for (const Matrix& m : m_) {
    if (m.rows() != b_.size() || m.cols() != b_.size()) throw InvalidArgument("mksvm: kernel block has wrong size");
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff()))
      throw InvalidArgument("mksvm: kernel block is not symmetric");
    max_norm = std::max(max_norm, spectral_norm(m));
  }
  const double d = static_cast<double>(m_.size()), n = static_cast<double>(b_.size());
  constants_.l_yx = box_c * std::sqrt(d * n) * max_norm;
  constants_.l_yy = max_norm;
  constants_.mu = mu;
  constants_.nu = nu;
}

MkSvmProblem MkSvmProblem::from_kernels(const std::vector<Matrix>& kernels, const std::vector<Index>& train,
                                        const Vector& train_labels, double mu, double nu, double box_c) {
  if (static_cast<Index>(train.size()) != train_labels.size())
    throw InvalidArgument("mksvm: one label per training index required");
  double c = 0.0;
  for (const Matrix& k : kernels) c += k.trace();
  std::vector<Matrix> m_list;
  for (const Matrix& k : kernels) {
    const double r = k.trace();
    const Index n = static_cast<Index>(train.size());
    Matrix m(n, n);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) m(i, j) = (c / r) * train_labels(i) * train_labels(j) * k(train[i], train[j]);
    m_list.push_back(std::move(m));
  }
  return MkSvmProblem(std::move(m_list), train_labels, mu, nu, box_c);
}

Vector MkSvmProblem::grad_y(const Vector& x, const Vector& y) const {
  if (!in_x_domain(x)) throw InvalidArgument("mksvm: grad_y needs x in the simplex");
  Vector out = Vector::Ones(y.size());
  for (std::size_t i = 0; i < m_.size(); ++i) out.noalias() -= x(static_cast<Index>(i)) * (m_[i] * y);
  return out;
}

Vector MkSvmProblem::prox_phi_x(double tau, const Vector& y, const Vector& x, ProxWorkspace*) const {
  Vector xi(dim_x());
  for (std::size_t i = 0; i < m_.size(); ++i) xi(static_cast<Index>(i)) = 0.5 * y.dot(m_[i] * y);
  return project_simplex((x + tau * xi) / (1.0 + constants_.mu * tau));
}

Vector MkSvmProblem::prox_g(double sigma, const Vector& v, ProxWorkspace*) const {
  return project_box_hyperplane(set_, v / (1.0 + constants_.nu * sigma));
}

bool MkSvmProblem::in_x_domain(const Vector& x) const {
  if (x.size() != dim_x() || !all_finite(x)) return false;
  return x.minCoeff() >= -kDomainTol && std::abs(x.sum() - 1.0) <= kDomainTol;
}

bool MkSvmProblem::in_y_domain(const Vector& y) const {
  if (y.size() != dim_y() || !all_finite(y)) return false;
  return set_.contains(y, kDomainTol * std::max(1.0, box_c()));
}

double MkSvmProblem::phi(const Vector& x, const Vector& y) const {
  double quad = 0.0;
  for (std::size_t i = 0; i < m_.size(); ++i) quad += x(static_cast<Index>(i)) * y.dot(m_[i] * y);
  return 0.5 * constants_.mu * x.squaredNorm() - 0.5 * quad + y.sum();
}

Vector MkSvmProblem::sample_x(Philox4x32& rng) const {
  // Uniform on the simplex via normalized exponentials.
  Vector x(dim_x());
  for (Index i = 0; i < x.size(); ++i) x(i) = -std::log(1.0 - rng.uniform01());
  return x / x.sum();
}

Vector MkSvmProblem::sample_y(Philox4x32& rng) const {
  Vector y(dim_y());
  for (Index i = 0; i < y.size(); ++i) y(i) = rng.uniform(0.0, box_c());
  return project_box_hyperplane(set_, y);
}

Vector mksvm_eta(const std::vector<Matrix>& kernels, const Vector& x) {
  if (static_cast<Index>(kernels.size()) != x.size()) throw InvalidArgument("mksvm_eta: one weight per kernel");
  double c = 0.0;
  for (const Matrix& k : kernels) c += k.trace();
  Vector eta(x.size());
  for (Index i = 0; i < x.size(); ++i) eta(i) = c * x(i) / kernels[static_cast<std::size_t>(i)].trace();
  return eta;
}

MkSvmPrediction mksvm_predict(const std::vector<Matrix>& kernels, const std::vector<Index>& train,
                              const Vector& train_labels, const std::vector<Index>& test, const Vector& alpha,
                              const Vector& eta, double nu, double box_c, bool allow_fallback) {
  const Index n = static_cast<Index>(train.size());
  if (alpha.size() != n || train_labels.size() != n) throw InvalidArgument("mksvm_predict: alpha/labels size mismatch");
  if (eta.size() != static_cast<Index>(kernels.size())) throw InvalidArgument("mksvm_predict: one eta per kernel");

  const double tol_act = 1e-4 * box_c;
  MkSvmPrediction out;
  for (Index j = 0; j < n; ++j) {
    if (alpha(j) < tol_act || alpha(j) > box_c - tol_act) continue;
    if (out.j0 < 0 || alpha(j) < alpha(out.j0)) out.j0 = j;
  }
  if (out.j0 < 0) {
    if (!allow_fallback) throw NoActiveSupportVector("mksvm_predict: no alpha strictly inside (0, C)");
    out.fallback = true;
    double best = -1.0;
    for (Index j = 0; j < n; ++j) {
      const double interior = std::min(alpha(j), box_c - alpha(j));
      if (interior > best) {
        best = interior;
        out.j0 = j;
      }
    }
  }

  // K*_{i,col} for the train rows i.
  auto kstar_column = [&](Index col) {
    Vector column = Vector::Zero(n);
    for (std::size_t q = 0; q < kernels.size(); ++q) {
      const double w = eta(static_cast<Index>(q));
      if (w == 0.0) continue;
      for (Index i = 0; i < n; ++i) column(i) += w * kernels[q](train[i], col);
    }
    return column;
  };
  const Vector weights = train_labels.cwiseProduct(alpha);
  const Index j0 = out.j0;
  out.gamma = train_labels(j0) * (1.0 - nu * alpha(j0)) - weights.dot(kstar_column(train[j0]));
  out.labels.reserve(test.size());
  for (Index k : test) {
    const double score = weights.dot(kstar_column(k)) + out.gamma;
    out.labels.push_back(score >= 0.0 ? 1 : -1);
  }
  return out;
}

}  // namespace ogaprox
