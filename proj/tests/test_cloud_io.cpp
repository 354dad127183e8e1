#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "hyperseg/cloud.hpp"
#include "hyperseg/cloud_io.hpp"
#include "hyperseg/errors.hpp"
#include "oracles.hpp"

using namespace hyperseg;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() /
             ("hyperseg_io_" + std::to_string(static_cast<long>(::getpid())));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path path = scratch_dir() / name;
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("xyz loader parses points, comments, and blank lines") {
  const auto path = write_file("basic.xyz", "0 0 0\n1 2 3\n");
  const PointCloud cloud = load_cloud(path, CloudFormat::kXyz);
  REQUIRE(cloud.size() == 2);
  CHECK(cloud.coords(0, 0) == 0.0);
  CHECK(cloud.coords(1, 0) == 1.0);
  CHECK(cloud.coords(1, 1) == 2.0);
  CHECK(cloud.coords(1, 2) == 3.0);

  const auto commented =
      write_file("comments.xyz", "# header\n0 0 0 # trailing\n\n  \n1 1 1\n");
  CHECK(load_cloud(commented, CloudFormat::kXyz).size() == 2);
}

TEST_CASE("xyz loader rejects malformed input with the line number") {
  const auto short_line = write_file("short.xyz", "0 0 0\n1 2\n");
  CHECK_THROWS_WITH_AS(load_cloud(short_line, CloudFormat::kXyz),
                       doctest::Contains(":2"), ParseError);

  const auto bad_token = write_file("token.xyz", "0 0 zero\n");
  CHECK_THROWS_AS(load_cloud(bad_token, CloudFormat::kXyz), ParseError);

  const auto non_finite = write_file("nan.xyz", "0 0 nan\n");
  CHECK_THROWS_AS(load_cloud(non_finite, CloudFormat::kXyz), ParseError);

  const auto empty = write_file("empty.xyz", "# nothing\n");
  CHECK_THROWS_WITH_AS(load_cloud(empty, CloudFormat::kXyz),
                       doctest::Contains("no points"), ParseError);

  CHECK_THROWS_AS(load_cloud(scratch_dir() / "missing.xyz", CloudFormat::kXyz),
                  ArgumentError);
}

TEST_CASE("ply loader handles the ascii header and property order") {
  const auto path = write_file("basic.ply",
                               "ply\nformat ascii 1.0\ncomment test\n"
                               "element vertex 2\n"
                               "property float x\nproperty float y\nproperty float z\n"
                               "end_header\n0 0 0\n1 2 3\n");
  const PointCloud cloud = load_cloud(path, CloudFormat::kPlyAscii);
  REQUIRE(cloud.size() == 2);
  CHECK(cloud.coords(1, 2) == 3.0);

  const auto reordered = write_file("zyx.ply",
                                    "ply\nformat ascii 1.0\nelement vertex 1\n"
                                    "property double z\nproperty double y\nproperty double x\n"
                                    "end_header\n3 2 1\n");
  const PointCloud swapped = load_cloud(reordered, CloudFormat::kPlyAscii);
  CHECK(swapped.coords(0, 0) == 1.0);
  CHECK(swapped.coords(0, 1) == 2.0);
  CHECK(swapped.coords(0, 2) == 3.0);
}

TEST_CASE("ply loader rejects unsupported declarations") {
  const auto faces = write_file("faces.ply",
                                "ply\nformat ascii 1.0\nelement vertex 1\n"
                                "property float x\nproperty float y\nproperty float z\n"
                                "element face 1\nend_header\n0 0 0\n3 0 0 0\n");
  CHECK_THROWS_AS(load_cloud(faces, CloudFormat::kPlyAscii), ParseError);

  const auto binary = write_file("binary.ply", "ply\nformat binary_little_endian 1.0\n");
  CHECK_THROWS_AS(load_cloud(binary, CloudFormat::kPlyAscii), ParseError);

  const auto missing_prop = write_file("twoprops.ply",
                                       "ply\nformat ascii 1.0\nelement vertex 1\n"
                                       "property float x\nproperty float y\n"
                                       "end_header\n0 0\n");
  CHECK_THROWS_AS(load_cloud(missing_prop, CloudFormat::kPlyAscii), ParseError);

  const auto truncated = write_file("truncated.ply",
                                    "ply\nformat ascii 1.0\nelement vertex 3\n"
                                    "property float x\nproperty float y\nproperty float z\n"
                                    "end_header\n0 0 0\n");
  CHECK_THROWS_AS(load_cloud(truncated, CloudFormat::kPlyAscii), ParseError);
}

TEST_CASE("save and load round-trip exactly in both formats") {
  const PointCloud cloud = oracles::random_cloud(37, 11, 123.456);
  for (auto format : {CloudFormat::kXyz, CloudFormat::kPlyAscii}) {
    const auto path = scratch_dir() /
                      (format == CloudFormat::kXyz ? "round.xyz" : "round.ply");
    save_cloud(path, cloud, format);
    const PointCloud reloaded = load_cloud(path);  // format inferred from extension
    REQUIRE(reloaded.size() == cloud.size());
    CHECK(reloaded.coords == cloud.coords);
  }
  CHECK_THROWS_AS(load_cloud(scratch_dir() / "round.txt"), ArgumentError);
}

TEST_CASE("label files load, save, and attach with validation") {
  const auto path = write_file("labels.txt", "0\n0\n1\n");
  CHECK(load_labels(path) == std::vector<int>{0, 0, 1});

  CHECK_THROWS_AS(load_labels(write_file("bad.txt", "0\ntwo\n")), ParseError);
  CHECK_THROWS_AS(load_labels(write_file("none.txt", "")), ParseError);

  PointCloud cloud = oracles::random_cloud(3, 1);
  attach_labels(cloud, {0, 0, 1});
  CHECK(cloud.labels.has_value());
  CHECK_THROWS_AS(attach_labels(cloud, {0, 1}), ArgumentError);
  CHECK_THROWS_AS(attach_labels(cloud, {0, -1, 2}), ArgumentError);

  const auto out = scratch_dir() / "saved.labels";
  save_labels(out, {2, 2, 0});
  CHECK(load_labels(out) == std::vector<int>{2, 2, 0});
}

TEST_CASE("downsample keeps coordinate-label pairing and is deterministic") {
  PointCloud cloud = oracles::random_cloud(50, 2);
  std::vector<int> labels(50);
  for (int i = 0; i < 50; ++i) labels[static_cast<std::size_t>(i)] = i % 7;
  attach_labels(cloud, labels);

  const PointCloud sub = downsample(cloud, 20, 99);
  REQUIRE(sub.size() == 20);
  REQUIRE(sub.labels.has_value());
  for (Eigen::Index i = 0; i < sub.size(); ++i) {
    bool found = false;
    for (Eigen::Index j = 0; j < cloud.size() && !found; ++j) {
      found = sub.coords.row(i) == cloud.coords.row(j) &&
              (*sub.labels)[static_cast<std::size_t>(i)] ==
                  (*cloud.labels)[static_cast<std::size_t>(j)];
    }
    CHECK(found);
  }

  const PointCloud again = downsample(cloud, 20, 99);
  CHECK(again.coords == sub.coords);
  CHECK(*again.labels == *sub.labels);
  CHECK(downsample(cloud, 20, 100).coords != sub.coords);

  const PointCloud all = downsample(cloud, 50, 5);
  CHECK(all.coords == cloud.coords);  // sampling everything keeps the order

  CHECK_THROWS_AS(downsample(cloud, 51, 0), ArgumentError);
  CHECK_THROWS_AS(downsample(cloud, 0, 0), ArgumentError);
}

TEST_CASE("add_noise hits the requested snr and preserves structure") {
  PointCloud cloud = oracles::random_cloud(10000, 3, 50.0);
  attach_labels(cloud, std::vector<int>(10000, 1));

  const PointCloud quiet = add_noise(cloud, 300.0, 4);
  CHECK((quiet.coords - cloud.coords).norm() <= 1e-10 * cloud.coords.norm());

  const PointCloud noisy = add_noise(cloud, 25.0, 4);
  REQUIRE(noisy.size() == cloud.size());
  CHECK(*noisy.labels == *cloud.labels);
  const double noise_power =
      (noisy.coords - cloud.coords).squaredNorm() / static_cast<double>(3 * cloud.size());
  const double measured_db = 10.0 * std::log10(signal_power(cloud) / noise_power);
  CHECK(measured_db == doctest::Approx(25.0).epsilon(0.02));  // within +-0.5 dB

  const PointCloud repeat = add_noise(cloud, 25.0, 4);
  CHECK(repeat.coords == noisy.coords);
}

TEST_CASE("signal_power is the centered mean squared entry") {
  PointCloud cloud;
  cloud.coords.resize(2, 3);
  cloud.coords << 0, 0, 0, 2, 2, 2;
  // centroid (1,1,1); every centered entry is +-1
  CHECK(signal_power(cloud) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("synth_blobs produces labeled recoverable clusters") {
  const PointCloud lone = synth_blobs(1, 5, 10.0, 1.0, 0);
  REQUIRE(lone.size() == 5);
  for (int v : *lone.labels) CHECK(v == 0);

  const PointCloud blobs = synth_blobs(2, 30, 100.0, 1.0, 7);
  REQUIRE(blobs.size() == 60);
  const Eigen::MatrixXd centers = oracles::class_means(blobs, 2);
  CHECK(oracles::nearest_center_labels(blobs.coords, centers) == *blobs.labels);

  const PointCloud again = synth_blobs(2, 30, 100.0, 1.0, 7);
  CHECK(again.coords == blobs.coords);

  const PointCloud many = synth_blobs(9, 2, 5.0, 0.1, 1);
  const Eigen::MatrixXd nine_centers = oracles::class_means(many, 9);
  for (int a = 0; a < 9; ++a) {
    for (int b = a + 1; b < 9; ++b) {
      CHECK((nine_centers.row(a) - nine_centers.row(b)).norm() >= 4.0);
    }
  }

  CHECK_THROWS_AS(synth_blobs(0, 5, 1.0, 1.0, 0), ArgumentError);
  CHECK_THROWS_AS(synth_blobs(2, 0, 1.0, 1.0, 0), ArgumentError);
  CHECK_THROWS_AS(synth_blobs(2, 5, 0.0, 1.0, 0), ArgumentError);
  CHECK_THROWS_AS(synth_blobs(2, 5, 1.0, 0.0, 0), ArgumentError);
}

TEST_CASE("validate rejects broken clouds") {
  PointCloud cloud;
  cloud.coords.resize(0, 3);
  CHECK_THROWS_AS(validate(cloud), ArgumentError);

  cloud = oracles::random_cloud(3, 0);
  cloud.coords(1, 1) = std::nan("");
  CHECK_THROWS_AS(validate(cloud), ArgumentError);
}
