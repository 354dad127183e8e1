#pragma once

#include <string>
#include <vector>

#include "hyperseg/clustering.hpp"
#include "hyperseg/metrics.hpp"
#include "hyperseg/spectral.hpp"

namespace hyperseg {

inline constexpr const char* kVersion = "0.1.0";

/// One benchmark row: a (cloud, method) pair with its score and timing.
struct BenchRow {
  std::string input;
  std::string method;
  Eigen::Index n_points = 0;
  int k = 0;
  int selected_e = 0;
  double accuracy = -1.0;  // negative = no ground truth available
  double silhouette = 0.0;
  double median_seconds = 0.0;
};

std::string segmentation_json(const SegmentationResult& result);

/// {"g": [...], "sigma": [...], "components": [[row-major]]}. Pass the
/// coefficient vector separately so callers can pad it.
std::string spectrum_json(const SpectrumEstimate& spectrum,
                          const Eigen::VectorXd& sigma);

std::string curve_csv(const std::vector<CurvePoint>& curve);

/// Full benchmark report: one object per row plus per-method aggregates
/// and the configuration echo.
std::string benchmark_json(const std::vector<BenchRow>& rows,
                           const std::string& config_echo);

}  // namespace hyperseg
