#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "isac/errors.hpp"
#include "isac/types.hpp"

namespace isac {

/// |A^H y|, entrywise.
template <typename DerivedA, typename DerivedY>
RVector matched_filter(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedY>& y) {
  if (a.rows() != y.rows()) throw DimensionError("matched_filter: y length does not match A rows");
  return (a.adjoint() * y).cwiseAbs().template cast<double>();
}

/// |a_n^H y| / |a_n|^2: the single-scatterer coefficient estimate per voxel.
template <typename DerivedA, typename DerivedY>
RVector matched_filter_coefficients(const Eigen::MatrixBase<DerivedA>& a,
                                    const Eigen::MatrixBase<DerivedY>& y) {
  RVector mf = matched_filter(a, y);
  const RVector energy = a.colwise().squaredNorm().transpose().template cast<double>();
  for (Index n = 0; n < mf.size(); ++n) mf(n) = energy(n) > 0 ? mf(n) / energy(n) : 0.0;
  return mf;
}

/// Indices of the m largest scores, ties to the lower index; returned ascending.
inline std::vector<Index> top_indices(const RVector& scores, Index m) {
  if (m < 0 || m > scores.size()) throw DimensionError("select_top: m exceeds the number of candidates");
  std::vector<Index> order(static_cast<std::size_t>(scores.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::partial_sort(order.begin(), order.begin() + m, order.end(), [&](Index i, Index j) {
    return scores(i) > scores(j) || (scores(i) == scores(j) && i < j);
  });
  order.resize(static_cast<std::size_t>(m));
  std::sort(order.begin(), order.end());
  return order;
}

template <typename DerivedA, typename DerivedV>
std::vector<Index> select_top(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedV>& v,
                              Index m) {
  if (m > a.cols()) throw DimensionError("select_top: m > number of voxels");
  return top_indices(matched_filter(a, v), m);
}

template <typename Derived>
Matrix<typename Derived::Scalar> gather_columns(const Eigen::MatrixBase<Derived>& a,
                                                const std::vector<Index>& support) {
  Matrix<typename Derived::Scalar> sub(a.rows(), Index(support.size()));
  for (std::size_t k = 0; k < support.size(); ++k) sub.col(Index(k)) = a.col(support[k]);
  return sub;
}

/// argmin_x |y - A_S x|_2 via column-pivoted QR. Throws SingularSystemError
/// when A_S is rank deficient.
template <typename DerivedA, typename DerivedY>
Vector<typename DerivedA::Scalar> ls_on_support(const Eigen::MatrixBase<DerivedA>& a,
                                                const Eigen::MatrixBase<DerivedY>& y,
                                                const std::vector<Index>& support) {
  using Scalar = typename DerivedA::Scalar;
  if (a.rows() != y.rows()) throw DimensionError("ls_on_support: y length does not match A rows");
  if (support.empty()) return Vector<Scalar>(0);
  if (Index(support.size()) > a.rows()) throw SingularSystemError("ls_on_support: support larger than rows");
  const auto sub = gather_columns(a, support);
  Eigen::ColPivHouseholderQR<Matrix<Scalar>> qr(sub);
  if (qr.rank() < sub.cols()) throw SingularSystemError("ls_on_support: support columns are linearly dependent");
  return qr.solve(y.derived().template cast<Scalar>());
}

enum class StopReason { residual_below_epsilon, support_stable, residual_increase, max_iterations };

const char* to_string(StopReason reason);

struct RecoveryResult {
  RVector sigma_hat;
  std::vector<Index> support;  // ascending
  int iterations = 0;
  double final_residual_norm = 0.0;
  std::vector<double> residual_history;  // residual norm of every accepted support, initial first
  StopReason stop = StopReason::max_iterations;
  bool exhausted() const { return stop == StopReason::max_iterations; }
};

struct SubspacePursuitOptions {
  Index m_prior = 6;
  double epsilon = 0.0;
  int max_iter = 20;
};

/// Noise-floor stopping threshold sqrt(N1 * sigma2) * scale.
inline double default_epsilon(Index n_rows, double noise_sigma2, double scale = 1.1) {
  return std::sqrt(double(n_rows) * noise_sigma2) * scale;
}

namespace detail {

template <typename Scalar>
struct SupportFit {
  std::vector<Index> support;
  Vector<Scalar> coeffs;
  Vector<Scalar> residual;
  double residual_norm = 0.0;
};

// Least squares on `support`, discarding columns the pivoted QR finds
// dependent on earlier ones.
template <typename DerivedA, typename DerivedY>
SupportFit<typename DerivedA::Scalar> fit_support(const Eigen::MatrixBase<DerivedA>& a,
                                                  const Eigen::MatrixBase<DerivedY>& y,
                                                  std::vector<Index> support) {
  using Scalar = typename DerivedA::Scalar;
  SupportFit<Scalar> fit;
  const Vector<Scalar> yy = y.derived().template cast<Scalar>();
  if (!support.empty()) {
    auto sub = gather_columns(a, support);
    Eigen::ColPivHouseholderQR<Matrix<Scalar>> qr(sub);
    if (qr.rank() < sub.cols()) {
      std::vector<Index> kept;
      for (Index k = 0; k < qr.rank(); ++k) kept.push_back(support[std::size_t(qr.colsPermutation().indices()(k))]);
      std::sort(kept.begin(), kept.end());
      support = std::move(kept);
      sub = gather_columns(a, support);
      qr.compute(sub);
    }
    fit.coeffs = qr.solve(yy);
    fit.residual = yy - sub * fit.coeffs;
  } else {
    fit.coeffs.resize(0);
    fit.residual = yy;
  }
  fit.support = std::move(support);
  fit.residual_norm = double(fit.residual.norm());
  return fit;
}

}  // namespace detail

/// Subspace Pursuit with a prior sparsity M°. Each iteration expands the
/// support with the M° best correlates of the residual, keeps the M° largest
/// LS coefficients over the union and refits. Stops on the first of:
/// residual <= epsilon, unchanged support, residual growth (the previous
/// support is kept), or max_iter.
template <typename DerivedA, typename DerivedY>
RecoveryResult subspace_pursuit(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedY>& y,
                                const SubspacePursuitOptions& opt) {
  if (a.rows() != y.rows()) throw DimensionError("subspace_pursuit: y length does not match A rows");
  if (opt.m_prior < 1 || opt.m_prior > std::min(a.rows(), a.cols())) {
    throw DimensionError("subspace_pursuit: m_prior must lie in [1, min(N1, Nv)]");
  }
  if (opt.epsilon < 0 || opt.max_iter < 1) throw std::invalid_argument("subspace_pursuit: bad options");

  const Index m = opt.m_prior;
  auto current = detail::fit_support(a, y, select_top(a, y, m));
  RecoveryResult result;
  result.stop = StopReason::max_iterations;
  result.residual_history.push_back(current.residual_norm);

  for (;;) {
    if (current.residual_norm <= opt.epsilon) {
      result.stop = StopReason::residual_below_epsilon;
      break;
    }
    if (result.iterations >= opt.max_iter) break;
    ++result.iterations;

    std::vector<Index> expanded = current.support;
    for (Index k : select_top(a, current.residual, m)) expanded.push_back(k);
    std::sort(expanded.begin(), expanded.end());
    expanded.erase(std::unique(expanded.begin(), expanded.end()), expanded.end());

    const auto wide = detail::fit_support(a, y, std::move(expanded));
    RVector magnitude = wide.coeffs.cwiseAbs().template cast<double>();
    std::vector<Index> pick = top_indices(magnitude, std::min<Index>(m, magnitude.size()));
    std::vector<Index> renewed;
    renewed.reserve(pick.size());
    for (Index k : pick) renewed.push_back(wide.support[std::size_t(k)]);
    std::sort(renewed.begin(), renewed.end());

    auto next = detail::fit_support(a, y, std::move(renewed));
    if (next.residual_norm > current.residual_norm) {
      result.stop = StopReason::residual_increase;
      break;
    }
    const bool stable = next.support == current.support;
    current = std::move(next);
    result.residual_history.push_back(current.residual_norm);
    if (stable) {
      result.stop = StopReason::support_stable;
      break;
    }
  }

  result.sigma_hat = RVector::Zero(a.cols());
  for (std::size_t k = 0; k < current.support.size(); ++k) {
    result.sigma_hat(current.support[k]) = double(std::abs(current.coeffs(Index(k))));
  }
  result.support = std::move(current.support);
  result.final_residual_norm = current.residual_norm;
  return result;
}

}  // namespace isac
