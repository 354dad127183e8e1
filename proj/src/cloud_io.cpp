#include "hyperseg/cloud_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "hyperseg/errors.hpp"

namespace hyperseg {
namespace {

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

std::ifstream open_input(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw ArgumentError("input file not found: " + path.string());
  }
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path.string());
  return out;
}

void strip_comment(std::string& line) {
  auto pos = line.find('#');
  if (pos != std::string::npos) line.erase(pos);
}

bool blank(const std::string& line) {
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

double parse_number(const std::string& token, const std::filesystem::path& path,
                    std::size_t line_no) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ParseError(where(path, line_no) + ": bad number '" + token + "'");
  }
  if (used != token.size()) {
    throw ParseError(where(path, line_no) + ": bad number '" + token + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(where(path, line_no) + ": non-finite value '" + token + "'");
  }
  return value;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream stream(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (stream >> tok) tokens.push_back(tok);
  return tokens;
}

PointCloud load_xyz(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<Eigen::RowVector3d> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_comment(line);
    if (blank(line)) continue;
    auto tokens = tokens_of(line);
    if (tokens.size() != 3) {
      throw ParseError(where(path, line_no) + ": expected 3 coordinates, got " +
                       std::to_string(tokens.size()));
    }
    rows.emplace_back(parse_number(tokens[0], path, line_no),
                      parse_number(tokens[1], path, line_no),
                      parse_number(tokens[2], path, line_no));
  }
  if (rows.empty()) throw ParseError(path.string() + ": no points");

  PointCloud cloud;
  cloud.coords.resize(static_cast<Eigen::Index>(rows.size()), 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    cloud.coords.row(static_cast<Eigen::Index>(i)) = rows[i];
  }
  return cloud;
}

PointCloud load_ply(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_no = 0;

  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    return true;
  };

  if (!next_line() || tokens_of(line) != std::vector<std::string>{"ply"}) {
    throw ParseError(where(path, 1) + ": missing 'ply' magic");
  }

  long long vertex_count = -1;
  std::vector<std::string> property_order;  // names in declaration order
  bool header_done = false;
  while (next_line()) {
    auto tokens = tokens_of(line);
    if (tokens.empty() || tokens[0] == "comment") continue;
    if (tokens[0] == "format") {
      if (tokens.size() != 3 || tokens[1] != "ascii" || tokens[2] != "1.0") {
        throw ParseError(where(path, line_no) + ": only 'format ascii 1.0' is supported");
      }
    } else if (tokens[0] == "element") {
      if (tokens.size() != 3 || tokens[1] != "vertex" || vertex_count >= 0) {
        throw ParseError(where(path, line_no) + ": unsupported element declaration");
      }
      try {
        vertex_count = std::stoll(tokens[2]);
      } catch (const std::exception&) {
        throw ParseError(where(path, line_no) + ": bad vertex count '" + tokens[2] + "'");
      }
      if (vertex_count < 1) throw ParseError(path.string() + ": no points");
    } else if (tokens[0] == "property") {
      if (tokens.size() != 3 || (tokens[1] != "float" && tokens[1] != "double") ||
          (tokens[2] != "x" && tokens[2] != "y" && tokens[2] != "z")) {
        throw ParseError(where(path, line_no) + ": unsupported property declaration");
      }
      property_order.push_back(tokens[2]);
    } else if (tokens[0] == "end_header") {
      header_done = true;
      break;
    } else {
      throw ParseError(where(path, line_no) + ": unexpected header line '" + tokens[0] + "'");
    }
  }
  if (!header_done) throw ParseError(path.string() + ": missing end_header");
  if (vertex_count < 0) throw ParseError(path.string() + ": missing vertex element");
  if (property_order.size() != 3) {
    throw ParseError(path.string() + ": vertex element must declare exactly x, y, z");
  }

  Eigen::Index col_of[3];
  for (std::size_t p = 0; p < 3; ++p) {
    col_of[p] = property_order[p] == "x" ? 0 : property_order[p] == "y" ? 1 : 2;
  }
  if (col_of[0] == col_of[1] || col_of[0] == col_of[2] || col_of[1] == col_of[2]) {
    throw ParseError(path.string() + ": vertex element must declare exactly x, y, z");
  }

  PointCloud cloud;
  cloud.coords.resize(static_cast<Eigen::Index>(vertex_count), 3);
  for (long long v = 0; v < vertex_count; ++v) {
    do {
      if (!next_line()) {
        throw ParseError(path.string() + ": expected " + std::to_string(vertex_count) +
                         " vertices, got " + std::to_string(v));
      }
    } while (blank(line));
    auto tokens = tokens_of(line);
    if (tokens.size() != 3) {
      throw ParseError(where(path, line_no) + ": expected 3 coordinates, got " +
                       std::to_string(tokens.size()));
    }
    for (std::size_t p = 0; p < 3; ++p) {
      cloud.coords(static_cast<Eigen::Index>(v), col_of[p]) =
          parse_number(tokens[p], path, line_no);
    }
  }
  return cloud;
}

void format_row(char* buf, std::size_t cap, const Eigen::RowVector3d& row) {
  std::snprintf(buf, cap, "%.17g %.17g %.17g", row(0), row(1), row(2));
}

}  // namespace

PointCloud load_cloud(const std::filesystem::path& path, CloudFormat format) {
  return format == CloudFormat::kXyz ? load_xyz(path) : load_ply(path);
}

PointCloud load_cloud(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".xyz") return load_cloud(path, CloudFormat::kXyz);
  if (ext == ".ply") return load_cloud(path, CloudFormat::kPlyAscii);
  throw ArgumentError("cannot infer cloud format from extension '" + ext + "'");
}

void save_cloud(const std::filesystem::path& path, const PointCloud& cloud,
                CloudFormat format) {
  validate(cloud);
  auto out = open_output(path);
  char buf[128];
  if (format == CloudFormat::kPlyAscii) {
    out << "ply\nformat ascii 1.0\nelement vertex " << cloud.size()
        << "\nproperty double x\nproperty double y\nproperty double z\nend_header\n";
  }
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    format_row(buf, sizeof(buf), cloud.coords.row(i));
    out << buf << '\n';
  }
  if (!out) throw ArgumentError("write failed: " + path.string());
}

std::vector<int> load_labels(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<int> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    auto tokens = tokens_of(line);
    if (tokens.size() != 1) {
      throw ParseError(where(path, line_no) + ": expected one label per line");
    }
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(tokens[0], &used);
    } catch (const std::exception&) {
      throw ParseError(where(path, line_no) + ": bad label '" + tokens[0] + "'");
    }
    if (used != tokens[0].size()) {
      throw ParseError(where(path, line_no) + ": bad label '" + tokens[0] + "'");
    }
    labels.push_back(value);
  }
  if (labels.empty()) throw ParseError(path.string() + ": no labels");
  return labels;
}

void save_labels(const std::filesystem::path& path, const std::vector<int>& labels) {
  auto out = open_output(path);
  for (int v : labels) out << v << '\n';
  if (!out) throw ArgumentError("write failed: " + path.string());
}

}  // namespace hyperseg
