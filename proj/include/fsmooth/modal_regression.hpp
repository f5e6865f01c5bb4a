#pragma once

#include <vector>

#include "fsmooth/modes.hpp"
#include "fsmooth/types.hpp"

namespace fsmooth {

struct JointPartials {
  double value = 0.0;  // joint density estimate at (x, y)
  double dy = 0.0;
  double dyy = 0.0;
};

struct ConditionalModeSet {
  Point x;
  std::vector<double> modes_y;  // strictly increasing
  std::vector<double> dy_certificates;
  std::vector<double> dyy_certificates;  // all < 0
};

struct ModalCurve {
  std::vector<Point> x_grid;
  std::vector<ConditionalModeSet> mode_sets;
};

struct YRange {
  double lo = 0.0;
  double hi = 0.0;
};

// Joint density over (x, y) with a sinc factor per predictor axis plus one for
// the response, normalized by 1/(n pi^(d+1)) so the estimate integrates to 1.
JointPartials joint_density_partials(const LabeledSample& data, std::span<const double> x,
                                     double y, const EstimatorConfig& cfg);

// Default scan window [min Y - 3/R, max Y + 3/R]; anything further out is a
// side-lobe artifact.
YRange default_y_range(const LabeledSample& data, Radius R);

// Roots of d/dy falling from + to -, found by a pi/(4R)-spaced scan with
// safeguarded Newton refinement; keeps y with d2/dy2 < 0 and density above
// the ripple floor.
ConditionalModeSet conditional_modes(const LabeledSample& data, std::span<const double> x,
                                     const EstimatorConfig& cfg, const AscentConfig& search,
                                     YRange y_range);

ModalCurve modal_curve(const LabeledSample& data, const std::vector<Point>& x_grid,
                       const EstimatorConfig& cfg, const AscentConfig& search,
                       YRange y_range, int threads = 1);

}  // namespace fsmooth
