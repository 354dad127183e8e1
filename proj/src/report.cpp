#include "hyperseg/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <map>

namespace hyperseg {

namespace {

using Json = nlohmann::ordered_json;

Json vector_json(const Eigen::VectorXd& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

}  // namespace

std::string segmentation_json(const SegmentationResult& result) {
  Json doc;
  doc["assignments"] = result.assignments;
  doc["k"] = result.k;
  doc["E"] = result.selected_e;
  doc["inertia"] = result.inertia;
  return doc.dump(2) + "\n";
}

std::string spectrum_json(const SpectrumEstimate& spectrum, const Eigen::VectorXd& sigma) {
  Json doc;
  doc["g"] = vector_json(spectrum.gram_eigenvalues);
  doc["sigma"] = vector_json(sigma);
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < spectrum.components.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < spectrum.components.cols(); ++j) {
      row.push_back(spectrum.components(i, j));
    }
    rows.push_back(std::move(row));
  }
  doc["components"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
  std::string out = "pos,value\n";
  char buf[80];
  for (const CurvePoint& point : curve) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", point.pos, point.value);
    out += buf;
  }
  return out;
}

std::string benchmark_json(const std::vector<BenchRow>& rows, const std::string& config_echo) {
  Json doc;
  doc["version"] = kVersion;
  doc["config"] = Json::parse(config_echo);

  Json row_array = Json::array();
  std::map<std::string, std::vector<const BenchRow*>> by_method;
  for (const BenchRow& row : rows) {
    Json entry;
    entry["input"] = row.input;
    entry["method"] = row.method;
    entry["n_points"] = row.n_points;
    entry["k"] = row.k;
    entry["E"] = row.selected_e;
    if (row.accuracy >= 0.0) entry["accuracy"] = row.accuracy;
    entry["silhouette"] = row.silhouette;
    entry["median_seconds"] = row.median_seconds;
    row_array.push_back(std::move(entry));
    by_method[row.method].push_back(&row);
  }
  doc["rows"] = std::move(row_array);

  Json aggregates;
  for (const auto& [method, members] : by_method) {
    double silhouette_sum = 0.0;
    double seconds_sum = 0.0;
    double accuracy_sum = 0.0;
    int labeled = 0;
    for (const BenchRow* row : members) {
      silhouette_sum += row->silhouette;
      seconds_sum += row->median_seconds;
      if (row->accuracy >= 0.0) {
        accuracy_sum += row->accuracy;
        ++labeled;
      }
    }
    Json entry;
    entry["count"] = members.size();
    if (labeled > 0) entry["mean_accuracy"] = accuracy_sum / labeled;
    entry["mean_silhouette"] = silhouette_sum / static_cast<double>(members.size());
    entry["mean_median_seconds"] = seconds_sum / static_cast<double>(members.size());
    aggregates[method] = std::move(entry);
  }
  doc["aggregates"] = std::move(aggregates);
  return doc.dump(2) + "\n";
}

}  // namespace hyperseg
