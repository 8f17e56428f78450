#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sricci/complex.hpp"
#include "sricci/jacobi.hpp"

namespace sricci {

/// Matrix of the coboundary map delta_i: rows are (i+1)-faces, columns i-faces,
/// entry sgn([F], d[Fbar]). Integer valued so that D_{i} D_{i-1} = 0 holds exactly.
struct CoboundaryMatrix {
  int source_dim = 0;
  Eigen::MatrixXi matrix;
};

/// `orientation`, when given for dimension i+1, re-signs the rows.
inline CoboundaryMatrix coboundary_matrix(const SimplicialComplex& k, int i,
                                          const Orientation* orientation = nullptr) {
  if (i < 0 || i >= k.dim())
    throw Error(ErrorKind::DimensionOutOfRange,
                "coboundary of dimension " + std::to_string(i) + " needs 0 <= i < " + std::to_string(k.dim()));
  CoboundaryMatrix d{i, Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(k.count(i + 1)),
                                              static_cast<Eigen::Index>(k.count(i)))};
  const bool resign = orientation != nullptr && orientation->dim == i + 1;
  for (std::size_t row = 0; row < k.count(i + 1); ++row) {
    const auto bd = k.boundary(i + 1, row);
    const int row_sign = resign ? orientation->signs.at(row) : 1;
    for (std::size_t j = 0; j < bd.size(); ++j)
      d.matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(bd[j])) = row_sign * (j % 2 == 0 ? 1 : -1);
  }
  return d;
}

enum class LaplacianKind { Up, Down, Full };

constexpr std::string_view to_string(LaplacianKind kind) {
  switch (kind) {
    case LaplacianKind::Up: return "up";
    case LaplacianKind::Down: return "down";
    case LaplacianKind::Full: return "full";
  }
  return "unknown";
}

/// An i-Laplacian in the face basis together with its symmetrization
/// W^{1/2} M W^{-1/2}, which shares its spectrum.
struct LaplacianMatrix {
  LaplacianKind kind = LaplacianKind::Full;
  int dim = 0;
  Eigen::MatrixXd matrix;
  Eigen::MatrixXd symmetric;
};

namespace detail {

inline Eigen::VectorXd weight_vector(const WeightAssignment& w, int d, std::size_t n) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = w(d, i);
  return v;
}

inline void check_dim(const SimplicialComplex& k, int i) {
  if (i < 0 || i > k.dim())
    throw Error(ErrorKind::DimensionOutOfRange,
                "dimension " + std::to_string(i) + " outside [0, " + std::to_string(k.dim()) + "]");
}

}  // namespace detail

/// W_i^{-1} D_i^T W_{i+1} D_i; zero at the top dimension.
inline LaplacianMatrix up_laplacian(const SimplicialComplex& k, int i, const WeightAssignment& w) {
  detail::check_dim(k, i);
  const auto n = static_cast<Eigen::Index>(k.count(i));
  LaplacianMatrix l{LaplacianKind::Up, i, Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
  if (i == k.dim()) return l;

  const Eigen::MatrixXd d = coboundary_matrix(k, i).matrix.cast<double>();
  const Eigen::VectorXd wi = detail::weight_vector(w, i, k.count(i));
  const Eigen::VectorXd wu = detail::weight_vector(w, i + 1, k.count(i + 1));
  l.matrix = wi.cwiseInverse().asDiagonal() * d.transpose() * wu.asDiagonal() * d;
  const Eigen::MatrixXd b = wu.cwiseSqrt().asDiagonal() * d * wi.cwiseSqrt().cwiseInverse().asDiagonal();
  l.symmetric = b.transpose() * b;
  return l;
}

/// D_{i-1} W_{i-1}^{-1} D_{i-1}^T W_i, expressed in the oriented basis when an
/// orientation of dimension i is supplied.
inline LaplacianMatrix down_laplacian(const SimplicialComplex& k, int i, const WeightAssignment& w,
                                      const Orientation* orientation = nullptr) {
  detail::check_dim(k, i);
  if (i == 0) throw Error(ErrorKind::DimensionOutOfRange, "the down Laplacian starts at dimension 1");

  const Eigen::MatrixXd d = coboundary_matrix(k, i - 1, orientation).matrix.cast<double>();
  const Eigen::VectorXd wl = detail::weight_vector(w, i - 1, k.count(i - 1));
  const Eigen::VectorXd wi = detail::weight_vector(w, i, k.count(i));
  LaplacianMatrix l{LaplacianKind::Down, i, {}, {}};
  l.matrix = d * wl.cwiseInverse().asDiagonal() * d.transpose() * wi.asDiagonal();
  const Eigen::MatrixXd b = wi.cwiseSqrt().asDiagonal() * d * wl.cwiseSqrt().cwiseInverse().asDiagonal();
  l.symmetric = b * b.transpose();
  return l;
}

inline LaplacianMatrix full_laplacian(const SimplicialComplex& k, int i, const WeightAssignment& w) {
  LaplacianMatrix l = up_laplacian(k, i, w);
  l.kind = LaplacianKind::Full;
  if (i >= 1) {
    const LaplacianMatrix down = down_laplacian(k, i, w);
    l.matrix += down.matrix;
    l.symmetric += down.symmetric;
  }
  return l;
}

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  double zero_threshold = 1e-8;

  bool is_zero(double v) const { return std::abs(v) <= zero_threshold; }

  std::size_t zero_count() const {
    return static_cast<std::size_t>(
        std::count_if(eigenvalues.begin(), eigenvalues.end(), [&](double v) { return is_zero(v); }));
  }

  std::vector<double> nonzero() const {
    std::vector<double> out;
    for (double v : eigenvalues)
      if (!is_zero(v)) out.push_back(v);
    return out;
  }
};

inline constexpr double kDefaultZeroThreshold = 1e-8;

inline Spectrum spectrum_of_symmetric(const Eigen::MatrixXd& s, double zero_threshold = kDefaultZeroThreshold) {
  return {jacobi_eigenvalues(s), zero_threshold};
}

inline Spectrum spectrum(const LaplacianMatrix& l, double zero_threshold = kDefaultZeroThreshold) {
  return spectrum_of_symmetric(l.symmetric, zero_threshold);
}

/// Largest positional deviation between two ascending lists, or nullopt when
/// their lengths differ.
inline std::optional<double> multiset_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::nullopt;
  double dev = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) dev = std::max(dev, std::abs(a[j] - b[j]));
  return dev;
}

struct SpectrumPairing {
  int dim = 0;
  bool vacuous = false;
  std::vector<double> up_nonzero;
  std::vector<double> down_nonzero;
  double max_deviation = 0.0;
  bool matched = false;
};

/// Nonzero spectra of the up Laplacian at i and the down Laplacian at i+1
/// coincide as multisets.
inline SpectrumPairing check_spectrum_pairing(const SimplicialComplex& k, int i, const WeightAssignment& w,
                                              double zero_threshold = kDefaultZeroThreshold,
                                              double tolerance = 1e-7) {
  detail::check_dim(k, i);
  SpectrumPairing p{i, i == k.dim(), {}, {}, 0.0, true};
  if (p.vacuous) return p;
  p.up_nonzero = spectrum(up_laplacian(k, i, w), zero_threshold).nonzero();
  p.down_nonzero = spectrum(down_laplacian(k, i + 1, w), zero_threshold).nonzero();
  const auto dev = multiset_deviation(p.up_nonzero, p.down_nonzero);
  p.matched = dev.has_value() && *dev <= tolerance;
  p.max_deviation = dev.value_or(std::numeric_limits<double>::infinity());
  return p;
}

/// sum over E in dF of 1/deg E for every top face, in face order.
inline std::vector<double> reciprocal_degree_sums(const SimplicialComplex& k, const WeightAssignment& w) {
  const int top = k.dim();
  std::vector<double> sums(k.count(top), 0.0);
  if (top < 1) return sums;
  for (std::size_t f = 0; f < sums.size(); ++f)
    for (std::size_t e : k.boundary(top, f)) sums[f] += 1.0 / degree(k, top - 1, e, w);
  return sums;
}

/// The common value 1/D of the reciprocal degree sums, or nullopt when the
/// sums differ between faces.
inline std::optional<double> homogeneous_reciprocal_degree(const SimplicialComplex& k, const WeightAssignment& w) {
  const auto sums = reciprocal_degree_sums(k, w);
  if (sums.empty()) return std::nullopt;
  for (double s : sums)
    if (std::abs(s - sums.front()) > 1e-12) return std::nullopt;
  return sums.front();
}

struct ConstantEigenpair {
  double eigenvalue = 0.0;
  double residual = 0.0;  // max-norm of (Delta_down 1 - eigenvalue 1)
};

/// Eigenvalue sum_E 2/deg E - (i+1) carried by the constant function in the
/// oriented basis of the top dimension.
inline ConstantEigenpair constant_function_eigenvalue(const SimplicialComplex& k, const WeightAssignment& w) {
  const auto orientation = orient(k);
  if (!orientation) throw Error(ErrorKind::NotOrientable, "complex is not orientable");
  const auto inv_d = homogeneous_reciprocal_degree(k, w);
  if (!inv_d) throw Error(ErrorKind::HeterogeneousDegreeSum, "reciprocal degree sums differ between faces");
  const int top = k.dim();
  ConstantEigenpair out;
  out.eigenvalue = 2.0 * *inv_d - (top + 1);
  const auto l = down_laplacian(k, top, w, &*orientation);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(l.matrix.rows());
  out.residual = (l.matrix * ones - out.eigenvalue * ones).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace sricci
