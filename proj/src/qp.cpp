#include "ogaprox/qp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ogaprox {

std::string to_string(QpStatus status) {
  switch (status) {
    case QpStatus::Optimal:
      return "Optimal";
    case QpStatus::MaxIter:
      return "MaxIter";
    case QpStatus::Infeasible:
      return "Infeasible";
  }
  return "Unknown";
}

double KktResiduals::max() const {
  return std::max({stationarity, primal, complementarity, dual});
}

void QpProblem::validate() const {
  const Index n = q_vector.size();
  if (n == 0) throw InvalidArgument("QP has no variables");
  if (q_matrix.rows() != n || q_matrix.cols() != n)
    throw InvalidArgument("QP: q_matrix must be n×n with n = size of q_vector");
  if (ineq_matrix.rows() != ineq_vector.size() || (ineq_matrix.rows() > 0 && ineq_matrix.cols() != n))
    throw InvalidArgument("QP: inequality block has inconsistent dimensions");
  if (eq_matrix.rows() != eq_vector.size() || (eq_matrix.rows() > 0 && eq_matrix.cols() != n))
    throw InvalidArgument("QP: equality block has inconsistent dimensions");
  if (!all_finite(q_matrix.reshaped()) || !all_finite(q_vector) || !all_finite(ineq_matrix.reshaped()) ||
      !all_finite(ineq_vector) || !all_finite(eq_matrix.reshaped()) || !all_finite(eq_vector))
    throw InvalidArgument("QP: non-finite problem data");
  const double scale = std::max(1.0, q_matrix.cwiseAbs().maxCoeff());
  if ((q_matrix - q_matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidArgument("QP: q_matrix is not symmetric");
}

KktResiduals kkt_residuals(const QpProblem& p, const Vector& u, const Vector& lambda, const Vector& mu) {
  KktResiduals r;
  Vector grad = p.q_matrix * u + p.q_vector;
  if (p.num_ineq() > 0) grad -= p.ineq_matrix.transpose() * lambda;
  if (p.num_eq() > 0) grad -= p.eq_matrix.transpose() * mu;
  r.stationarity = grad.cwiseAbs().maxCoeff();
  if (p.num_ineq() > 0) {
    const Vector slack = p.ineq_matrix * u - p.ineq_vector;
    r.primal = std::max(0.0, -slack.minCoeff());
    r.complementarity = lambda.cwiseProduct(slack).cwiseAbs().maxCoeff();
    r.dual = std::max(0.0, -lambda.minCoeff());
  }
  if (p.num_eq() > 0) r.primal = std::max(r.primal, (p.eq_matrix * u - p.eq_vector).cwiseAbs().maxCoeff());
  return r;
}

namespace {

enum class HessianKind { Zero, ScaledIdentity, Diagonal, Dense };

HessianKind classify(const Matrix& h) {
  const Index n = h.rows();
  bool diagonal = true;
  for (Index j = 0; j < n && diagonal; ++j)
    for (Index i = 0; i < n; ++i)
      if (i != j && h(i, j) != 0.0) {
        diagonal = false;
        break;
      }
  if (!diagonal) return HessianKind::Dense;
  const Vector d = h.diagonal();
  if (n == 0 || d.cwiseAbs().maxCoeff() == 0.0) return HessianKind::Zero;
  if ((d.array() == d(0)).all()) return HessianKind::ScaledIdentity;
  return HessianKind::Diagonal;
}

// minimize ½ wᵀHw + cᵀw  s.t.  A w ≥ b, from a feasible start.
class ActiveSet {
 public:
  ActiveSet(const Matrix& h, const Vector& c, const Matrix& a, const Vector& b, double tol)
      : h_(h), c_(c), a_(a), b_(b), tol_(tol), kind_(classify(h)) {
    const Index n = c.size();
    const Index m = b.size();
    bound_var_.assign(static_cast<std::size_t>(m), -1);
    bound_coef_.assign(static_cast<std::size_t>(m), 0.0);
    for (Index i = 0; i < m; ++i) {
      Index nz = 0, var = -1;
      for (Index j = 0; j < n; ++j)
        if (a(i, j) != 0.0) {
          ++nz;
          var = j;
        }
      if (nz == 1) {
        bound_var_[i] = var;
        bound_coef_[i] = a(i, var);
      }
    }
    row_norm_ = a.rowwise().norm();
    fixed_by_.assign(static_cast<std::size_t>(n), -1);
    in_working_.assign(static_cast<std::size_t>(m), false);
  }

  // Seeds the working set with rows active at w, keeping them independent.
  void seed(Vector& w, const std::vector<Index>& rows) {
    std::vector<Index> sorted(rows);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const Vector aw = a_ * w;
    auto active = [&](Index i) {
      return i >= 0 && i < b_.size() && std::abs(aw(i) - b_(i)) <= tol_ * std::max(1.0, std::abs(b_(i)));
    };
    for (Index i : sorted) {
      if (!active(i) || bound_var_[i] < 0) continue;
      const Index j = bound_var_[i];
      if (fixed_by_[j] >= 0) continue;
      fixed_by_[j] = i;
      in_working_[i] = true;
      w(j) = b_(i) / bound_coef_[i];
    }
    const std::vector<Index> free = free_vars();
    std::vector<Vector> basis;
    for (Index i : sorted) {
      if (!active(i) || bound_var_[i] >= 0) continue;
      Vector v(static_cast<Index>(free.size()));
      for (std::size_t r = 0; r < free.size(); ++r) v(static_cast<Index>(r)) = a_(i, free[r]);
      const double norm0 = v.norm();
      if (norm0 == 0.0) continue;
      for (int pass = 0; pass < 2; ++pass)
        for (const Vector& q : basis) v -= q.dot(v) * q;
      const double norm1 = v.norm();
      if (norm1 <= 1e-10 * norm0) continue;
      basis.push_back(v / norm1);
      general_.push_back(i);
      in_working_[i] = true;
    }
  }

  QpStatus solve(Vector& w, Index max_iter, Index& iterations) {
    bool newton_done = false;
    while (true) {
      if (iterations >= max_iter) return QpStatus::MaxIter;
      ++iterations;

      const Vector g = h_ * w + c_;
      const std::vector<Index> free = free_vars();
      const Index nf = static_cast<Index>(free.size());
      const Index kg = static_cast<Index>(general_.size());

      Vector g_free(nf);
      for (Index r = 0; r < nf; ++r) g_free(r) = g(free[r]);

      // Null-space basis of the general working rows restricted to free variables.
      Matrix z_basis;
      const bool identity_z = kg == 0;
      Eigen::HouseholderQR<Matrix> qr;
      if (!identity_z) {
        qr.compute(restricted_rows(free));
        z_basis = Matrix::Zero(nf, nf - kg);
        z_basis.bottomRows(nf - kg).setIdentity();
        z_basis.applyOnTheLeft(qr.householderQ());
      }
      const Index nz = identity_z ? nf : nf - kg;

      Vector p = Vector::Zero(w.size());
      bool newton = true;
      if (nz > 0 && !newton_done) {
        const Vector gz = identity_z ? g_free : Vector(z_basis.transpose() * g_free);
        Vector pz;
        direction(free, identity_z, z_basis, gz, pz, newton);
        const Vector p_free = identity_z ? pz : Vector(z_basis * pz);
        for (Index r = 0; r < nf; ++r) p(free[r]) = p_free(r);
      }

      const double p_norm = p.cwiseAbs().maxCoeff();
      if (newton_done || p_norm <= 1e-14 * std::max(1.0, w.cwiseAbs().maxCoeff())) {
        // Stationary on the working set: inspect multipliers.
        compute_multipliers(g, free, qr);
        Index drop = -1;
        double most_negative = -tol_;
        for (Index i = 0; i < static_cast<Index>(in_working_.size()); ++i) {
          if (!in_working_[i]) continue;
          if (lambda_(i) < most_negative) {
            most_negative = lambda_(i);
            drop = i;
          }
        }
        if (drop < 0) return QpStatus::Optimal;
        remove_row(drop);
        newton_done = false;
        continue;
      }

      // Ratio test over rows outside the working set.
      const Vector ap = a_ * p;
      const Vector aw = a_ * w;
      double alpha = newton ? 1.0 : std::numeric_limits<double>::infinity();
      Index block = -1;
      const double p_len = p.norm();
      for (Index i = 0; i < b_.size(); ++i) {
        if (in_working_[i]) continue;
        if (ap(i) >= -1e-14 * row_norm_(i) * p_len) continue;
        const double ratio = std::max(0.0, aw(i) - b_(i)) / (-ap(i));
        if (ratio < alpha) {
          alpha = ratio;
          block = i;
        }
      }
      if (!std::isfinite(alpha)) throw NumericalError("QP objective is unbounded below on the feasible set");

      w += alpha * p;
      if (block >= 0) {
        add_row(block, w);
        newton_done = false;
      } else {
        newton_done = true;
      }
    }
  }

  const Vector& multipliers() const { return lambda_; }

  std::vector<Index> working_rows() const {
    std::vector<Index> rows;
    for (Index i = 0; i < static_cast<Index>(in_working_.size()); ++i)
      if (in_working_[i]) rows.push_back(i);
    return rows;
  }

  // Multipliers at the current point (used after Optimal).
  void finalize(const Vector& w) {
    const Vector g = h_ * w + c_;
    const std::vector<Index> free = free_vars();
    Eigen::HouseholderQR<Matrix> qr;
    if (!general_.empty()) qr.compute(restricted_rows(free));
    compute_multipliers(g, free, qr);
  }

 private:
  std::vector<Index> free_vars() const {
    std::vector<Index> free;
    free.reserve(fixed_by_.size());
    for (Index j = 0; j < static_cast<Index>(fixed_by_.size()); ++j)
      if (fixed_by_[j] < 0) free.push_back(j);
    return free;
  }

  void direction(const std::vector<Index>& free, bool identity_z, const Matrix& z_basis, const Vector& gz,
                 Vector& pz, bool& newton) const {
    const Index nz = gz.size();
    const double g_scale = std::max(1.0, gz.cwiseAbs().maxCoeff());
    if (kind_ == HessianKind::Zero) {
      newton = false;
      pz = gz.cwiseAbs().maxCoeff() > 1e-14 * g_scale ? Vector(-gz) : Vector::Zero(nz);
      if (pz.isZero()) newton = true;
      return;
    }
    if (kind_ == HessianKind::ScaledIdentity && h_(0, 0) > 0.0) {
      newton = true;
      pz = -gz / h_(0, 0);
      return;
    }
    Matrix hz;
    if (kind_ == HessianKind::Diagonal || kind_ == HessianKind::ScaledIdentity) {
      Vector d(static_cast<Index>(free.size()));
      for (std::size_t r = 0; r < free.size(); ++r) d(static_cast<Index>(r)) = h_(free[r], free[r]);
      hz = identity_z ? Matrix(d.asDiagonal()) : Matrix(z_basis.transpose() * d.asDiagonal() * z_basis);
    } else {
      Matrix hff(static_cast<Index>(free.size()), static_cast<Index>(free.size()));
      for (std::size_t c = 0; c < free.size(); ++c)
        for (std::size_t r = 0; r < free.size(); ++r)
          hff(static_cast<Index>(r), static_cast<Index>(c)) = h_(free[r], free[c]);
      hz = identity_z ? hff : Matrix(z_basis.transpose() * hff * z_basis);
    }
    const double h_scale = std::max(hz.diagonal().cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    Eigen::LLT<Matrix> llt(hz);
    if (llt.info() == Eigen::Success) {
      const double min_pivot = llt.matrixLLT().diagonal().minCoeff();
      if (min_pivot * min_pivot > 1e-10 * h_scale) {
        newton = true;
        pz = -llt.solve(gz);
        return;
      }
    }
    // Semidefinite reduced Hessian: follow a zero-curvature descent direction
    // if the gradient has a component there, else take the pseudo-inverse step.
    Eigen::SelfAdjointEigenSolver<Matrix> eig(hz);
    const Vector& vals = eig.eigenvalues();
    const Matrix& vecs = eig.eigenvectors();
    const double cut = 1e-10 * std::max(h_scale, vals.cwiseAbs().maxCoeff());
    Vector null_part = Vector::Zero(nz);
    Vector range_part = Vector::Zero(nz);
    for (Index k = 0; k < nz; ++k) {
      const double coef = vecs.col(k).dot(gz);
      if (vals(k) <= cut)
        null_part -= coef * vecs.col(k);
      else
        range_part -= (coef / vals(k)) * vecs.col(k);
    }
    if (null_part.norm() > 1e-12 * g_scale) {
      newton = false;
      pz = null_part;
    } else {
      newton = true;
      pz = range_part;
    }
  }

  // Transposed general working rows restricted to the free variables.
  Matrix restricted_rows(const std::vector<Index>& free) const {
    const Index nf = static_cast<Index>(free.size());
    const Index kg = static_cast<Index>(general_.size());
    Matrix aft(nf, kg);
    for (Index k = 0; k < kg; ++k)
      for (Index r = 0; r < nf; ++r) aft(r, k) = a_(general_[k], free[r]);
    return aft;
  }

  void compute_multipliers(const Vector& g, const std::vector<Index>& free, const Eigen::HouseholderQR<Matrix>& qr) {
    const Index kg = static_cast<Index>(general_.size());
    lambda_ = Vector::Zero(b_.size());
    Vector lam_general;
    if (kg > 0) {
      Vector qtg(static_cast<Index>(free.size()));
      for (std::size_t r = 0; r < free.size(); ++r) qtg(static_cast<Index>(r)) = g(free[r]);
      qtg.applyOnTheLeft(qr.householderQ().transpose());
      lam_general = qr.matrixQR().topLeftCorner(kg, kg).triangularView<Eigen::Upper>().solve(qtg.head(kg));
      for (Index k = 0; k < kg; ++k) lambda_(general_[k]) = lam_general(k);
    }
    for (Index j = 0; j < static_cast<Index>(fixed_by_.size()); ++j) {
      const Index row = fixed_by_[j];
      if (row < 0) continue;
      double residual = g(j);
      for (Index k = 0; k < kg; ++k) residual -= lam_general(k) * a_(general_[k], j);
      lambda_(row) = residual / bound_coef_[row];
    }
  }

  void add_row(Index row, Vector& w) {
    in_working_[row] = true;
    if (bound_var_[row] >= 0) {
      const Index j = bound_var_[row];
      fixed_by_[j] = row;
      w(j) = b_(row) / bound_coef_[row];
    } else {
      general_.push_back(row);
    }
  }

  void remove_row(Index row) {
    in_working_[row] = false;
    if (bound_var_[row] >= 0 && fixed_by_[bound_var_[row]] == row) {
      fixed_by_[bound_var_[row]] = -1;
    } else {
      general_.erase(std::find(general_.begin(), general_.end(), row));
    }
  }

  const Matrix& h_;
  const Vector& c_;
  const Matrix& a_;
  const Vector& b_;
  double tol_;
  HessianKind kind_;
  std::vector<Index> bound_var_;
  std::vector<double> bound_coef_;
  Vector row_norm_;
  std::vector<Index> fixed_by_;
  std::vector<bool> in_working_;
  std::vector<Index> general_;
  Vector lambda_;
};

double max_violation(const Matrix& a, const Vector& b, const Vector& w) {
  if (b.size() == 0) return 0.0;
  return std::max(0.0, (b - a * w).maxCoeff());
}

// Elastic feasibility phase over the violated rows V:
// minimize Σ s  s.t.  A w + S s ≥ b, s ≥ 0, with S selecting V.
bool feasibility_phase(const Matrix& a, const Vector& b, Vector& w, double tol, Index max_iter,
                       Index& iterations) {
  const Index n = w.size();
  const Index m = b.size();
  const Vector resid = b - a * w;
  std::vector<Index> violated;
  for (Index i = 0; i < m; ++i)
    if (resid(i) > 0.0) violated.push_back(i);
  const Index k = static_cast<Index>(violated.size());
  Matrix a1 = Matrix::Zero(m + k, n + k);
  a1.topLeftCorner(m, n) = a;
  for (Index t = 0; t < k; ++t) {
    a1(violated[t], n + t) = 1.0;
    a1(m + t, n + t) = 1.0;
  }
  Vector b1 = Vector::Zero(m + k);
  b1.head(m) = b;
  const Matrix h1 = Matrix::Zero(n + k, n + k);
  Vector c1 = Vector::Zero(n + k);
  c1.tail(k).setOnes();
  Vector z(n + k);
  z.head(n) = w;
  for (Index t = 0; t < k; ++t) z(n + t) = resid(violated[t]);
  ActiveSet phase1(h1, c1, a1, b1, tol);
  const QpStatus status = phase1.solve(z, max_iter, iterations);
  if (status != QpStatus::Optimal) return false;
  w = z.head(n);
  return max_violation(a, b, w) <= tol * std::max(1.0, b.cwiseAbs().maxCoeff());
}

}  // namespace

QpResult solve_qp(const QpProblem& p, const QpOptions& options) {
  p.validate();
  if (!(options.tol > 0.0)) throw InvalidArgument("QP tolerance must be positive");
  const Index n = p.num_vars();
  const Index m = p.num_ineq();
  const Index pe = p.num_eq();
  const Index max_iter = options.max_iter > 0 ? options.max_iter : 10 * (n + m);
  const double tol = options.tol;

  QpResult result;
  result.ineq_multipliers = Vector::Zero(m);
  result.eq_multipliers = Vector::Zero(pe);

  // Equality elimination: u = u_p + N w.
  Vector u_p = Vector::Zero(n);
  Matrix null_basis;
  Matrix h_red, a_red;
  Vector c_red, b_red;
  const bool has_eq = pe > 0;
  if (has_eq) {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(p.eq_matrix);
    u_p = cod.solve(p.eq_vector);
    if ((p.eq_matrix * u_p - p.eq_vector).cwiseAbs().maxCoeff() > tol * std::max(1.0, p.eq_vector.cwiseAbs().maxCoeff())) {
      result.solution = u_p;
      result.status = QpStatus::Infeasible;
      return result;
    }
    Eigen::ColPivHouseholderQR<Matrix> qr(p.eq_matrix.transpose());
    const Index rank = qr.rank();
    const Matrix q_full = qr.householderQ() * Matrix::Identity(n, n);
    null_basis = q_full.rightCols(n - rank);
    h_red = null_basis.transpose() * p.q_matrix * null_basis;
    h_red = 0.5 * (h_red + h_red.transpose()).eval();
    c_red = null_basis.transpose() * (p.q_matrix * u_p + p.q_vector);
    a_red = p.ineq_matrix * null_basis;
    b_red = p.ineq_vector - p.ineq_matrix * u_p;
  }
  const Matrix& h = has_eq ? h_red : p.q_matrix;
  const Vector& c = has_eq ? c_red : p.q_vector;
  const Matrix& a = has_eq ? a_red : p.ineq_matrix;
  const Vector& b = has_eq ? b_red : p.ineq_vector;
  const Index nw = c.size();

  auto lift = [&](const Vector& w) -> Vector { return has_eq ? Vector(u_p + null_basis * w) : w; };

  Vector w = Vector::Zero(nw);
  std::vector<Index> seed_rows;
  if (options.warm_start != nullptr && options.warm_start->point.size() == n) {
    w = has_eq ? Vector(null_basis.transpose() * (options.warm_start->point - u_p)) : options.warm_start->point;
    seed_rows = options.warm_start->working_set;
  }

  Index iterations = 0;
  if (nw == 0) {
    // Equalities pin the point down completely.
    result.solution = u_p;
    result.status = max_violation(p.ineq_matrix, p.ineq_vector, u_p) <= tol ? QpStatus::Optimal : QpStatus::Infeasible;
  } else {
    const double feas_tol = tol * std::max(1.0, b.size() > 0 ? b.cwiseAbs().maxCoeff() : 0.0);
    if (max_violation(a, b, w) > feas_tol) {
      seed_rows.clear();
      if (!feasibility_phase(a, b, w, tol, max_iter, iterations)) {
        result.solution = lift(w);
        result.iterations = iterations;
        result.status = iterations >= max_iter ? QpStatus::MaxIter : QpStatus::Infeasible;
        return result;
      }
    }
    ActiveSet solver(h, c, a, b, tol);
    solver.seed(w, seed_rows);
    result.status = solver.solve(w, max_iter, iterations);
    if (result.status == QpStatus::Optimal) solver.finalize(w);
    result.solution = lift(w);
    result.ineq_multipliers = solver.multipliers().size() == m ? solver.multipliers() : Vector(Vector::Zero(m));
    result.working_set = solver.working_rows();
  }
  result.iterations = iterations;

  if (has_eq) {
    Vector resid = p.q_matrix * result.solution + p.q_vector;
    if (m > 0) resid -= p.ineq_matrix.transpose() * result.ineq_multipliers;
    result.eq_multipliers = p.eq_matrix.transpose().colPivHouseholderQr().solve(resid);
  }
  result.kkt = kkt_residuals(p, result.solution, result.ineq_multipliers, result.eq_multipliers);
  return result;
}

}  // namespace ogaprox
