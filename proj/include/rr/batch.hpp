#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rr/engine.hpp"

namespace rr {

inline int default_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Run `count` independent replications. Replication i always uses
// replication_seed(base_seed, i) and lands in slot i, so the result is the
// same for any thread count; only wall_ns varies. threads <= 1 runs serially.
template <SamplerModel M>
std::vector<RunRecord> run_batch(const M& model, std::uint64_t base_seed, std::uint64_t count,
                                 std::uint64_t cap, int threads) {
  std::vector<RunRecord> records(count);
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < count; ++i)
      records[i] = run(model, replication_seed(base_seed, i), cap);
    return records;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i)
    records[static_cast<std::size_t>(i)] =
        run(model, replication_seed(base_seed, static_cast<std::uint64_t>(i)), cap);
  return records;
}

// Reference path for testing the parallel runner against.
template <SamplerModel M>
std::vector<RunRecord> run_batch_serial(const M& model, std::uint64_t base_seed,
                                        std::uint64_t count, std::uint64_t cap = 0) {
  return run_batch(model, base_seed, count, cap, 1);
}

// Canonical-key histogram of the completed samples.
inline std::map<std::string, std::uint64_t> count_samples(const std::vector<RunRecord>& records) {
  std::map<std::string, std::uint64_t> counts;
  for (const RunRecord& r : records)
    if (r.completed) ++counts[r.sample.dump()];
  return counts;
}

inline std::uint64_t count_interrupted(const std::vector<RunRecord>& records) {
  std::uint64_t k = 0;
  for (const RunRecord& r : records) k += r.completed ? 0 : 1;
  return k;
}

// Equality on everything a seed determines (wall_ns is timing, not content).
inline bool records_equal_deterministic(const std::vector<RunRecord>& a,
                                        const std::vector<RunRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].sample != b[i].sample || a[i].iterations != b[i].iterations ||
        a[i].seed != b[i].seed || a[i].completed != b[i].completed)
      return false;
  }
  return true;
}

}  // namespace rr
