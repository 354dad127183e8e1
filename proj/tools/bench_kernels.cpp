// Compares the OpenMP kernels against their serial reference twins on a
// synthetic cloud: wall-clock medians plus a bitwise equality check.
//
// Usage: bench_kernels [n_points] [repeats]

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "hyperseg/cloud.hpp"
#include "hyperseg/clustering.hpp"
#include "hyperseg/kernels.hpp"
#include "hyperseg/metrics.hpp"

namespace {

void report(const char* name, Eigen::Index n, double serial_s, double parallel_s,
            bool identical) {
  std::printf("%-20s n=%-6td serial %8.4fs  parallel %8.4fs  speedup %5.2fx  bitwise %s\n",
              name, n, serial_s, parallel_s, parallel_s > 0.0 ? serial_s / parallel_s : 0.0,
              identical ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  hyperseg::kernels::apply_thread_cap_from_env();
  const Eigen::Index n = argc > 1 ? std::atoll(argv[1]) : 2000;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;
  if (n < 4 || repeats < 1) {
    std::fprintf(stderr, "usage: bench_kernels [n_points >= 4] [repeats >= 1]\n");
    return 2;
  }

  const auto cloud = hyperseg::synth_blobs(4, static_cast<int>(n / 4), 30.0, 1.0, 42);
  std::printf("kernel benchmark: n=%td threads=%d repeats=%d\n", cloud.size(),
              hyperseg::kernels::effective_threads(), repeats);

  bool all_match = true;
  {
    Eigen::MatrixXd w_s, s_s, w_p, s_p;
    const double serial_s = hyperseg::median_time_seconds(
        [&] { hyperseg::kernels::gaussian_weights_serial(cloud.coords, 7.5, 225.0, w_s, s_s); },
        repeats);
    const double parallel_s = hyperseg::median_time_seconds(
        [&] { hyperseg::kernels::gaussian_weights(cloud.coords, 7.5, 225.0, w_p, s_p); },
        repeats);
    const bool ok = w_s == w_p && s_s == s_p;
    all_match = all_match && ok;
    report("gaussian_weights", cloud.size(), serial_s, parallel_s, ok);
  }
  {
    const auto seeds = hyperseg::kmeans(cloud.coords, 4, 7).centroids;
    std::vector<int> a_s, a_p;
    Eigen::VectorXd d_s, d_p;
    const double serial_s = hyperseg::median_time_seconds(
        [&] { hyperseg::kernels::assign_nearest_serial(cloud.coords, seeds, a_s, d_s); },
        repeats);
    const double parallel_s = hyperseg::median_time_seconds(
        [&] { hyperseg::kernels::assign_nearest(cloud.coords, seeds, a_p, d_p); }, repeats);
    const bool ok = a_s == a_p && d_s == d_p;
    all_match = all_match && ok;
    report("assign_nearest", cloud.size(), serial_s, parallel_s, ok);
  }
  {
    std::vector<Eigen::Index> counts(4, 0);
    for (int label : *cloud.labels) counts[static_cast<std::size_t>(label)] += 1;
    Eigen::VectorXd s_s, s_p;
    const double serial_s = hyperseg::median_time_seconds(
        [&] {
          hyperseg::kernels::silhouette_samples_serial(cloud.coords, *cloud.labels, counts,
                                                       s_s);
        },
        repeats);
    const double parallel_s = hyperseg::median_time_seconds(
        [&] { hyperseg::kernels::silhouette_samples(cloud.coords, *cloud.labels, counts, s_p); },
        repeats);
    const bool ok = s_s == s_p;
    all_match = all_match && ok;
    report("silhouette_samples", cloud.size(), serial_s, parallel_s, ok);
  }

  if (!all_match) {
    std::fprintf(stderr, "serial and parallel kernels disagree\n");
    return 1;
  }
  return 0;
}
