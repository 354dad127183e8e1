#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hyperseg/cloud.hpp"

namespace hyperseg {

enum class CloudFormat { kXyz, kPlyAscii };

/// Loads a point cloud.
///
/// XYZ format: one point per line, three whitespace-separated decimal
/// numbers; everything after '#' on a line is a comment. PLY is restricted
/// to ascii 1.0 with a single vertex element carrying float/double
/// properties x, y, z. Parse errors name the offending line.
PointCloud load_cloud(const std::filesystem::path& path, CloudFormat format);

/// As above, with the format inferred from the extension (.xyz / .ply).
PointCloud load_cloud(const std::filesystem::path& path);

/// Writes the coordinates with 17 significant digits so a reload
/// round-trips exactly. Labels are not written; see save_labels.
void save_cloud(const std::filesystem::path& path, const PointCloud& cloud,
                CloudFormat format);

/// Label file: one integer per line, same order as the points.
std::vector<int> load_labels(const std::filesystem::path& path);
void save_labels(const std::filesystem::path& path, const std::vector<int>& labels);

}  // namespace hyperseg
