#include "isac/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "isac/errors.hpp"
#include "isac/recovery.hpp"

namespace isac {

namespace {

void require_same_length(ImageRef a, ImageRef b, const char* what) {
  if (a.size() != b.size()) throw DimensionError(std::string(what) + ": length mismatch");
}

}  // namespace

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::residual_below_epsilon: return "residual_below_epsilon";
    case StopReason::support_stable: return "support_stable";
    case StopReason::residual_increase: return "residual_increase";
    case StopReason::max_iterations: return "max_iterations";
  }
  return "unknown";
}

double mse(ImageRef sigma_hat, ImageRef sigma) {
  require_same_length(sigma_hat, sigma, "mse");
  if (sigma.size() == 0) throw DimensionError("mse: empty image");
  return (sigma_hat - sigma).squaredNorm() / double(sigma.size());
}

double ssim(ImageRef sigma_hat, ImageRef sigma, double dynamic_range) {
  require_same_length(sigma_hat, sigma, "ssim");
  if (sigma.size() == 0) throw DimensionError("ssim: empty image");
  if (!(dynamic_range > 0)) throw std::invalid_argument("ssim: dynamic range must be positive");
  const double n = double(sigma.size());
  const double mx = sigma_hat.mean();
  const double my = sigma.mean();
  const double vx = (sigma_hat.array() - mx).square().sum() / n;
  const double vy = (sigma.array() - my).square().sum() / n;
  const double cxy = ((sigma_hat.array() - mx) * (sigma.array() - my)).sum() / n;
  const double c1 = std::pow(0.01 * dynamic_range, 2);
  const double c2 = std::pow(0.03 * dynamic_range, 2);
  return ((2 * mx * my + c1) * (2 * cxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
}

// Shortest augmenting path with potentials, O(n^2 m).
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost) {
  const int n = int(cost.rows());
  const int m = int(cost.cols());
  if (n > m) throw DimensionError("min_cost_assignment: more rows than columns");
  if (n == 0) return {};
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(std::size_t(n) + 1, 0.0), v(std::size_t(m) + 1, 0.0);
  std::vector<int> p(std::size_t(m) + 1, 0), way(std::size_t(m) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(std::size_t(m) + 1, inf);
    std::vector<char> used(std::size_t(m) + 1, 0);
    do {
      used[std::size_t(j0)] = 1;
      const int i0 = p[std::size_t(j0)];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[std::size_t(j)]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[std::size_t(i0)] - v[std::size_t(j)];
        if (cur < minv[std::size_t(j)]) {
          minv[std::size_t(j)] = cur;
          way[std::size_t(j)] = j0;
        }
        if (minv[std::size_t(j)] < delta) {
          delta = minv[std::size_t(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[std::size_t(j)]) {
          u[std::size_t(p[std::size_t(j)])] += delta;
          v[std::size_t(j)] -= delta;
        } else {
          minv[std::size_t(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[std::size_t(j0)] != 0);
    do {
      const int j1 = way[std::size_t(j0)];
      p[std::size_t(j0)] = p[std::size_t(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(std::size_t(n), -1);
  for (int j = 1; j <= m; ++j) {
    if (p[std::size_t(j)] != 0) assignment[std::size_t(p[std::size_t(j)] - 1)] = j - 1;
  }
  return assignment;
}

double ospa(const std::vector<Vec3>& truth, const std::vector<Vec3>& estimate, double c3) {
  if (c3 < 0) throw std::invalid_argument("ospa: c3 must be non-negative");
  const bool truth_smaller = truth.size() <= estimate.size();
  const auto& small = truth_smaller ? truth : estimate;
  const auto& large = truth_smaller ? estimate : truth;
  if (large.empty()) return 0.0;
  Eigen::MatrixXd cost(Index(small.size()), Index(large.size()));
  for (std::size_t i = 0; i < small.size(); ++i) {
    for (std::size_t j = 0; j < large.size(); ++j) cost(Index(i), Index(j)) = (small[i] - large[j]).norm();
  }
  const auto assignment = min_cost_assignment(cost);
  double total = 0.0;
  for (std::size_t i = 0; i < small.size(); ++i) total += cost(Index(i), assignment[i]);
  total += c3 * double(large.size() - small.size());
  return total / double(large.size());
}

std::vector<Detection> detect(ImageRef sigma_hat, const RoiGrid& grid, double tau_det) {
  if (sigma_hat.size() != grid.size()) throw DimensionError("detect: image does not match the grid");
  if (tau_det < 0) throw std::invalid_argument("detect: negative threshold");
  std::vector<Detection> out;
  for (Index n = 0; n < sigma_hat.size(); ++n) {
    if (sigma_hat(n) > tau_det) out.push_back({n, grid.voxel_center(n), sigma_hat(n)});
  }
  return out;
}

double DetectionCounts::dr() const {
  if (targets == 0) return detections == 0 ? 1.0 : 0.0;
  return double(hits) / double(targets);
}

double DetectionCounts::far() const { return double(false_alarms()) / double(std::max(detections, 1LL)); }

DetectionCounts count_detections(ImageRef sigma_hat, ImageRef sigma, double tau_det) {
  require_same_length(sigma_hat, sigma, "count_detections");
  if (tau_det < 0) throw std::invalid_argument("count_detections: negative threshold");
  DetectionCounts c;
  for (Index n = 0; n < sigma.size(); ++n) {
    const bool target = sigma(n) != 0.0;
    const bool detected = sigma_hat(n) > tau_det;
    c.targets += target;
    c.detections += detected;
    c.hits += target && detected;
  }
  return c;
}

DrFar dr_far(ImageRef sigma_hat, ImageRef sigma, double tau_det) {
  DrFar out;
  out.counts = count_detections(sigma_hat, sigma, tau_det);
  out.dr = out.counts.dr();
  out.far = out.counts.far();
  return out;
}

double ohem_loss(ImageRef pred, ImageRef label, const OhemParams& params) {
  require_same_length(pred, label, "ohem_loss");
  if (params.eta < 0 || params.alpha < 0) throw std::invalid_argument("ohem_loss: eta and alpha must be non-negative");
  double l_pos = 0.0;
  long long n_pos = 0;
  std::vector<double> negatives;
  for (Index n = 0; n < label.size(); ++n) {
    const double e = (pred(n) - label(n)) * (pred(n) - label(n));
    if (label(n) > 0) {
      l_pos += e;
      ++n_pos;
    } else {
      negatives.push_back(e);
    }
  }
  const double base = n_pos > 0 ? double(n_pos) : params.nominal_targets;
  // guard against eta * M landing a rounding error below an integer
  long long n_neg = (long long)std::floor(params.eta * base * (1.0 + 1e-12));
  n_neg = std::clamp(n_neg, 0LL, (long long)negatives.size());
  std::partial_sort(negatives.begin(), negatives.begin() + n_neg, negatives.end(), std::greater<>());
  double l_neg = 0.0;
  for (long long k = 0; k < n_neg; ++k) l_neg += negatives[std::size_t(k)];

  double loss = 0.0;
  if (params.variant == OhemVariant::ohem1) {
    const long long denom = n_pos + n_neg;
    loss = denom > 0 ? (l_pos + l_neg) / double(denom) : 0.0;
  } else {
    loss = (n_pos > 0 ? l_pos / double(n_pos) : 0.0) + (n_neg > 0 ? l_neg / double(n_neg) : 0.0);
  }
  return loss + params.alpha * pred.lpNorm<1>();
}

}  // namespace isac
