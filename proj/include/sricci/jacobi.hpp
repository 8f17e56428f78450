#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "sricci/error.hpp"

namespace sricci {

inline double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      if (r != c) sum += a(r, c) * a(r, c);
  return std::sqrt(sum);
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, run
/// until the off-diagonal Frobenius norm drops below `tolerance`. Ascending.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a, double tolerance = 1e-12,
                                              int max_sweeps = 100) {
  const Eigen::Index n = a.rows();
  if (!a.allFinite()) throw Error(ErrorKind::NonFiniteMatrix, "matrix has non-finite entries");

  int sweep = 0;
  while (off_diagonal_norm(a) >= tolerance) {
    if (++sweep > max_sweeps)
      throw Error(ErrorKind::NoEigenConvergence, "Jacobi iteration did not converge");
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Entries already below the rounding of both diagonals are dropped.
        if (sweep > 4 && std::abs(apq) * 1e18 < std::abs(app) && std::abs(apq) * 1e18 < std::abs(aqq)) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index r = 0; r < n; ++r) {
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const double apr = a(p, r);
          const double aqr = a(q, r);
          a(p, r) = c * apr - s * aqr;
          a(q, r) = s * apr + c * aqr;
        }
        a(p, q) = a(q, p) = 0.0;
      }
    }
  }

  std::vector<double> values(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace sricci
