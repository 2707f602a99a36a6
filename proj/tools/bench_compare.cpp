// Compares the OpenMP batch/enumeration kernels against their serial
// reference paths: same outputs, wall-clock side by side. --quick shrinks the
// workloads to a smoke test.

#include <chrono>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <string>

#include "rr/batch.hpp"
#include "rr/coloring.hpp"
#include "rr/graph.hpp"
#include "rr/hardcore.hpp"
#include "rr/oracle.hpp"
#include "rr/random_cluster.hpp"
#include "rr/spin.hpp"

using namespace rr;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

bool g_all_identical = true;

void report(const std::string& name, double serial_ms, double parallel_ms, bool identical) {
  g_all_identical = g_all_identical && identical;
  std::cout << std::left << std::setw(34) << name << std::right << std::fixed
            << std::setprecision(1) << std::setw(10) << serial_ms << std::setw(10) << parallel_ms
            << std::setw(9) << std::setprecision(2) << (serial_ms / parallel_ms) << "   "
            << (identical ? "identical" : "MISMATCH") << "\n";
}

template <typename M>
void bench_batch(const std::string& name, const M& model, std::uint64_t reps) {
  auto t0 = std::chrono::steady_clock::now();
  const auto serial = run_batch_serial(model, 2024, reps);
  const double serial_ms = ms_since(t0);
  t0 = std::chrono::steady_clock::now();
  const auto parallel = run_batch(model, 2024, reps, 0, default_threads());
  const double parallel_ms = ms_since(t0);
  report(name, serial_ms, parallel_ms, records_equal_deterministic(serial, parallel));
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  const std::uint64_t reps = quick ? 64 : 2048;
  const std::size_t n = quick ? 256 : 4096;

  std::cout << "threads available: " << default_threads() << "\n";
  std::cout << std::left << std::setw(34) << "kernel" << std::right << std::setw(10) << "serial"
            << std::setw(10) << "openmp" << std::setw(9) << "speedup"
            << "   outputs\n";

  {
    const Graph g = Graph::make_cycle(n);
    bench_batch("hardcore batch (cycle)", HardcoreSampler(g, {.lambda = 1.0 / 7.0}), reps);
  }
  {
    const Graph g = Graph::make_cycle(n);
    bench_batch("ising batch (cycle)", IsingSampler(g, {.beta = 0.1, .j = 1}), reps);
  }
  {
    const Graph g = Graph::make_grid2d(quick ? 6 : 16, quick ? 6 : 16);
    bench_batch("random cluster batch (grid)",
                RandomClusterSampler(g, {.p = 0.3, .q = 2.0}), reps);
  }
  {
    const Graph g = Graph::make_cycle(n);
    bench_batch("coloring batch (cycle)", ColoringSampler(g, {.k = 7}), reps);
  }
  {
    const Graph g = Graph::make_path(quick ? 16 : 22);
    auto t0 = std::chrono::steady_clock::now();
    const ExactDistribution serial = enumerate_hardcore(g, 0.8, false);
    const double serial_ms = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    const ExactDistribution parallel = enumerate_hardcore(g, 0.8, true);
    const double parallel_ms = ms_since(t0);
    report("hardcore enumeration (path)", serial_ms, parallel_ms,
           serial.probability == parallel.probability && serial.normalizer == parallel.normalizer);
  }
  {
    const Graph g = Graph::make_cycle(quick ? 12 : 20);
    auto t0 = std::chrono::steady_clock::now();
    const ExactDistribution serial = enumerate_spin(g, 0.2, 1, 2, false);
    const double serial_ms = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    const ExactDistribution parallel = enumerate_spin(g, 0.2, 1, 2, true);
    const double parallel_ms = ms_since(t0);
    report("spin enumeration (cycle)", serial_ms, parallel_ms,
           serial.probability == parallel.probability && serial.normalizer == parallel.normalizer);
  }

  if (!g_all_identical) {
    std::cout << "FAIL: a parallel kernel diverged from its serial reference\n";
    return 1;
  }
  std::cout << "all parallel kernels match their serial references\n";
  return 0;
}
