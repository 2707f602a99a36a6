#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rr/oracle.hpp"

namespace rr {

struct GofReport {
  std::uint64_t samples = 0;
  double tv = 0.0;
  double chi_square = 0.0;
  std::uint64_t df = 0;
  double p_value = 1.0;
  bool pass = false;
  std::string note;  // impossible outcomes, degenerate cases

  nlohmann::json to_json() const;
};

// Survival function of the chi-square distribution (regularized upper
// incomplete gamma). df = 0 is the degenerate single-cell case.
double chi_square_sf(double x, double df);

// Compare empirical counts against an exact distribution. TV is the plug-in
// half-L1 distance over the support; any observed configuration outside the
// support fails outright. Pearson chi-square with df = support - 1. Passes
// when the p-value clears `significance` and TV is within `tolerance`.
GofReport goodness_of_fit(const ExactDistribution& exact,
                          const std::map<std::string, std::uint64_t>& counts, double tolerance,
                          double significance);

// Chi-square homogeneity of the statistic between runs with T at or below the
// median and runs above it. A degenerate statistic or split passes with a note.
// Requires at least 1000 records.
GofReport independence_test(const std::vector<std::pair<std::uint64_t, std::int64_t>>& records,
                            double significance);

// Expected value and standard deviation of the plug-in TV of a *perfect*
// sampler at sample size n (normal approximation). This is the statistical
// noise floor of the TV check, not a property of any sampler.
double tv_noise_mean(const ExactDistribution& exact, std::uint64_t n);
double tv_noise_sd(const ExactDistribution& exact, std::uint64_t n);

// Smallest sample count, at least min_samples, at which the TV noise floor
// sits below `fraction` of the tolerance. Large supports need more than the
// default floor for the tolerance to be meaningful at all.
std::uint64_t samples_for_tv(const ExactDistribution& exact, double tolerance,
                             double fraction = 0.6, std::uint64_t min_samples = 100000);

}  // namespace rr
