// Times the Monte Carlo kernels: serial reference vs the OpenMP variants,
// on the two-point product model that dominates the convergence runs.
// Usage: nlexp_bench [n] [reps]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nlexp/mc_kernels.hpp"

using namespace nlexp;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 2000;
  const std::size_t reps = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 20000;

  const SequenceModel model = SequenceModel::iid(
      AmbiguitySet({Distribution::two_point(-1.0, 1.0, 0.4),
                    Distribution::two_point(-1.0, 1.0, 0.6)}));
  mc::CoordView view(model, n);
  const std::vector<std::uint32_t> selection(n, 1);
  const EventWindow window{EventKind::kUpperExceed, -0.3, 0.3};
  const std::uint64_t seed = 0x5eed;

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("n=%d reps=%zu threads=%d\n", n, reps, threads);

  std::vector<double> sums(reps);
  auto t0 = std::chrono::steady_clock::now();
  mc::path_sums_serial(view, selection, seed, sums);
  const double t_sums_serial = seconds_since(t0);
  const std::uint64_t hits_serial = mc::count_hits(sums, n, window);

  t0 = std::chrono::steady_clock::now();
  mc::path_sums_parallel(view, selection, seed, sums);
  const double t_sums_parallel = seconds_since(t0);
  const std::uint64_t hits_parallel = mc::count_hits(sums, n, window);

  std::vector<std::uint64_t> counts(2);
  t0 = std::chrono::steady_clock::now();
  mc::swap_scan_serial(view, selection, 1, seed, sums, window, counts);
  const double t_scan_serial = seconds_since(t0);
  const auto counts_serial = counts;

  t0 = std::chrono::steady_clock::now();
  mc::swap_scan_parallel(view, selection, 1, seed, sums, window, counts);
  const double t_scan_parallel = seconds_since(t0);

  std::printf("path_sums   serial %8.4fs   parallel %8.4fs   speedup %.2fx\n",
              t_sums_serial, t_sums_parallel, t_sums_serial / t_sums_parallel);
  std::printf("swap_scan   serial %8.4fs   parallel %8.4fs   speedup %.2fx\n",
              t_scan_serial, t_scan_parallel, t_scan_serial / t_scan_parallel);
  if (hits_serial != hits_parallel || counts_serial != counts) {
    std::printf("MISMATCH between serial and parallel results\n");
    return 1;
  }
  std::printf("results identical (hits=%llu)\n",
              static_cast<unsigned long long>(hits_serial));
  return 0;
}
