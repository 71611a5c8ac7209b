#pragma once

#include <vector>

#include "isac/scene.hpp"
#include "isac/types.hpp"

namespace isac {

using ImageRef = const Eigen::Ref<const RVector>&;

double mse(ImageRef sigma_hat, ImageRef sigma);

/// Global (single-window) SSIM with c1 = (0.01 L)^2, c2 = (0.03 L)^2.
/// Means, variances and covariance are taken over all voxels (1/N).
double ssim(ImageRef sigma_hat, ImageRef sigma, double dynamic_range = 1.0);

/// Minimum-cost assignment of the rows of `cost` (rows <= cols); returns the
/// column assigned to each row.
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost);

/// (1 / M_max) (min-cost matching of the smaller set into the larger + c3 |M - M_hat|).
double ospa(const std::vector<Vec3>& truth, const std::vector<Vec3>& estimate, double c3 = 1.0);

struct Detection {
  Index voxel = 0;
  Vec3 position;
  double value = 0.0;
};

/// Voxels whose value is strictly above tau_det.
std::vector<Detection> detect(ImageRef sigma_hat, const RoiGrid& grid, double tau_det);

struct DetectionCounts {
  long long targets = 0;
  long long detections = 0;
  long long hits = 0;
  long long false_alarms() const { return detections - hits; }

  DetectionCounts& operator+=(const DetectionCounts& o) {
    targets += o.targets;
    detections += o.detections;
    hits += o.hits;
    return *this;
  }
  /// hits / targets; 1 when there is nothing to find and nothing found.
  double dr() const;
  /// false alarms / max(detections, 1).
  double far() const;
};

DetectionCounts count_detections(ImageRef sigma_hat, ImageRef sigma, double tau_det);

struct DrFar {
  double dr = 0.0;
  double far = 0.0;
  DetectionCounts counts;
};

DrFar dr_far(ImageRef sigma_hat, ImageRef sigma, double tau_det);

struct MetricReport {
  double mse = 0.0;
  double ssim = 0.0;
  double ospa = 0.0;
  double dr = 0.0;
  double far = 0.0;
  DetectionCounts counts;
};

enum class OhemVariant { ohem1, ohem2 };

struct OhemParams {
  double eta = 1.0;
  double alpha = 0.0;
  OhemVariant variant = OhemVariant::ohem1;
  /// Mean target count used to size the negative set of label-free images.
  double nominal_targets = 6.0;
};

/// Hard-negative-mined squared error plus alpha |pred|_1.
double ohem_loss(ImageRef pred, ImageRef label, const OhemParams& params);

}  // namespace isac
