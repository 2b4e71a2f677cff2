#pragma once

#include "ogaprox/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ogaprox {

/// Dense convex QP
///
///   minimize   ½ uᵀQu + qᵀu
///   subject to G u ≥ h,   E u = e.
///
/// Q must be symmetric positive semidefinite. Any of G/E may have zero rows.
struct QpProblem {
  Matrix q_matrix;
  Vector q_vector;
  Matrix ineq_matrix;
  Vector ineq_vector;
  Matrix eq_matrix;
  Vector eq_vector;

  Index num_vars() const { return q_vector.size(); }
  Index num_ineq() const { return ineq_vector.size(); }
  Index num_eq() const { return eq_vector.size(); }

  double objective(const Vector& u) const { return 0.5 * u.dot(q_matrix * u) + q_vector.dot(u); }

  /// Throws InvalidArgument on inconsistent dimensions, asymmetric Q
  /// (beyond 1e-12 relative) or non-finite data.
  void validate() const;
};

enum class QpStatus { Optimal, MaxIter, Infeasible };

std::string to_string(QpStatus status);

/// Starting information for a solve. `point` must be feasible (up to tol);
/// otherwise the solver runs its feasibility phase from it. Rows of
/// `working_set` index the inequality constraints and are used only if they
/// are active at `point`.
struct QpWarmStart {
  Vector point;
  std::vector<Index> working_set;
};

struct QpOptions {
  double tol = 1e-9;
  Index max_iter = 0;  // 0 selects 10·(n + m)
  const QpWarmStart* warm_start = nullptr;
};

struct KktResiduals {
  double stationarity = 0.0;
  double primal = 0.0;
  double complementarity = 0.0;
  double dual = 0.0;  // magnitude of the most negative inequality multiplier

  double max() const;
};

struct QpResult {
  Vector solution;
  QpStatus status = QpStatus::MaxIter;
  Vector ineq_multipliers;
  Vector eq_multipliers;
  std::vector<Index> working_set;  // active inequality rows at exit, ascending
  Index iterations = 0;
  KktResiduals kkt;

  QpWarmStart warm_start() const { return {solution, working_set}; }
};

KktResiduals kkt_residuals(const QpProblem& p, const Vector& u, const Vector& ineq_multipliers,
                           const Vector& eq_multipliers);

/// Primal active-set method. Equality constraints are eliminated through a
/// null-space basis up front; simple-bound rows fix variables; general working
/// rows are handled with a null-space QR step. Blocking ties and multiplier
/// ties both resolve to the lowest constraint index, so identical inputs give
/// bit-identical outputs.
QpResult solve_qp(const QpProblem& p, const QpOptions& options);

inline QpResult solve_qp(const QpProblem& p, double tol = 1e-9, Index max_iter = 0) {
  QpOptions options;
  options.tol = tol;
  options.max_iter = max_iter;
  return solve_qp(p, options);
}

}  // namespace ogaprox
