#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "sricci/error.hpp"

namespace sricci {

struct LpSolution {
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// Dense tableau simplex for  max c.x  s.t.  A x <= b, x >= 0  with b >= 0,
/// so the slack basis is feasible from the start. Bland's rule (smallest
/// improving column, smallest basic index on ratio ties) rules out cycling.
inline LpSolution maximize_leq(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                               double eps = 1e-12) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  for (Eigen::Index r = 0; r < m; ++r)
    if (b(r) < 0) throw Error(ErrorKind::BadParams, "simplex start needs a nonnegative right-hand side");

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  t.topLeftCorner(m, n) = a;
  t.block(0, n, m, m).setIdentity();
  t.col(n + m).head(m) = b;
  t.row(m).head(n) = c.transpose();  // reduced costs; rhs holds -objective
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index r = 0; r < m; ++r) basis[static_cast<std::size_t>(r)] = n + r;

  for (;;) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j)
      if (t(m, j) > eps) {
        enter = j;
        break;
      }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    double best = 0.0;
    for (Eigen::Index r = 0; r < m; ++r) {
      if (t(r, enter) <= eps) continue;
      const double ratio = t(r, n + m) / t(r, enter);
      if (leave < 0 || ratio < best - eps ||
          (ratio <= best + eps && basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
        if (leave < 0 || ratio < best - eps) best = ratio;
        leave = r;
      }
    }
    if (leave < 0) throw Error(ErrorKind::LpUnbounded, "linear program is unbounded");

    t.row(leave) /= t(leave, enter);
    for (Eigen::Index r = 0; r <= m; ++r)
      if (r != leave && t(r, enter) != 0.0) t.row(r) -= t(r, enter) * t.row(leave);
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  LpSolution s{Eigen::VectorXd::Zero(n), -t(m, n + m)};
  for (Eigen::Index r = 0; r < m; ++r)
    if (basis[static_cast<std::size_t>(r)] < n) s.x(basis[static_cast<std::size_t>(r)]) = t(r, n + m);
  return s;
}

}  // namespace sricci
