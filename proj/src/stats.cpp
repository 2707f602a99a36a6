#include "rr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace rr {

namespace {

// Regularized upper incomplete gamma Q(a, x): series for the lower part when
// x < a+1, Lentz continued fraction otherwise.
double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  const double log_prefactor = -x + a * std::log(x) - std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 1000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(log_prefactor);
  }
  double b = x + 1.0 - a;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(log_prefactor) * h;
}

}  // namespace

double chi_square_sf(double x, double df) {
  if (df <= 0.0) return x <= 0.0 ? 1.0 : 0.0;
  if (x <= 0.0) return 1.0;
  return std::clamp(gamma_q(df / 2.0, x / 2.0), 0.0, 1.0);
}

nlohmann::json GofReport::to_json() const {
  return {{"samples", samples}, {"tv", tv},           {"chi_square", chi_square},
          {"df", df},           {"p_value", p_value}, {"pass", pass},
          {"note", note}};
}

GofReport goodness_of_fit(const ExactDistribution& exact,
                          const std::map<std::string, std::uint64_t>& counts, double tolerance,
                          double significance) {
  GofReport rep;
  std::uint64_t total = 0;
  for (const auto& [key, c] : counts) total += c;
  if (total == 0) throw std::invalid_argument("goodness_of_fit: no observations");
  rep.samples = total;

  double outside_mass = 0.0;
  for (const auto& [key, c] : counts) {
    if (!exact.probability.contains(key)) {
      outside_mass += static_cast<double>(c) / static_cast<double>(total);
      if (rep.note.empty()) rep.note = "impossible configuration observed: " + key;
    }
  }

  double tv = outside_mass;
  double chi2 = 0.0;
  for (const auto& [key, p] : exact.probability) {
    const auto it = counts.find(key);
    const double observed = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    const double expected = p * static_cast<double>(total);
    tv += std::abs(observed / static_cast<double>(total) - p);
    chi2 += (observed - expected) * (observed - expected) / expected;
  }
  rep.tv = 0.5 * tv;
  rep.chi_square = chi2;
  rep.df = exact.probability.size() - 1;
  rep.p_value = chi_square_sf(chi2, static_cast<double>(rep.df));
  rep.pass = outside_mass == 0.0 && rep.p_value >= significance && rep.tv <= tolerance;
  return rep;
}

GofReport independence_test(const std::vector<std::pair<std::uint64_t, std::int64_t>>& records,
                            double significance) {
  if (records.size() < 1000)
    throw std::invalid_argument("independence_test: need at least 1000 records");
  GofReport rep;
  rep.samples = records.size();

  std::vector<std::uint64_t> times;
  times.reserve(records.size());
  for (const auto& [t, stat] : records) times.push_back(t);
  std::sort(times.begin(), times.end());
  const std::uint64_t median = times[(times.size() - 1) / 2];

  std::vector<std::int64_t> values;
  values.reserve(records.size());
  for (const auto& [t, stat] : records) values.push_back(stat);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  if (values.size() < 2) {
    rep.pass = true;
    rep.note = "degenerate statistic: single value, trivially independent";
    return rep;
  }

  std::vector<std::uint64_t> table[2];
  table[0].assign(values.size(), 0);
  table[1].assign(values.size(), 0);
  for (const auto& [t, stat] : records) {
    const std::size_t col =
        std::lower_bound(values.begin(), values.end(), stat) - values.begin();
    table[t <= median ? 0 : 1][col] += 1;
  }
  const std::uint64_t row0 = std::accumulate(table[0].begin(), table[0].end(), std::uint64_t{0});
  const std::uint64_t row1 = rep.samples - row0;
  if (row0 == 0 || row1 == 0) {
    rep.pass = true;
    rep.note = "degenerate split: all runs on one side of the median";
    return rep;
  }

  double chi2 = 0.0;
  for (std::size_t c = 0; c < values.size(); ++c) {
    const double col_total = static_cast<double>(table[0][c] + table[1][c]);
    for (int r = 0; r < 2; ++r) {
      const double expected =
          col_total * static_cast<double>(r == 0 ? row0 : row1) / static_cast<double>(rep.samples);
      const double diff = static_cast<double>(table[r][c]) - expected;
      chi2 += diff * diff / expected;
    }
  }
  rep.chi_square = chi2;
  rep.df = values.size() - 1;
  rep.p_value = chi_square_sf(chi2, static_cast<double>(rep.df));
  rep.pass = rep.p_value >= significance;
  return rep;
}

double tv_noise_mean(const ExactDistribution& exact, std::uint64_t n) {
  double s = 0.0;
  for (const auto& [key, p] : exact.probability) s += std::sqrt(p * (1.0 - p));
  return 0.5 * std::sqrt(2.0 / std::numbers::pi) * s / std::sqrt(static_cast<double>(n));
}

double tv_noise_sd(const ExactDistribution& exact, std::uint64_t n) {
  double v = 0.0;
  for (const auto& [key, p] : exact.probability) v += p * (1.0 - p);
  return 0.5 * std::sqrt((1.0 - 2.0 / std::numbers::pi) * v / static_cast<double>(n));
}

std::uint64_t samples_for_tv(const ExactDistribution& exact, double tolerance, double fraction,
                             std::uint64_t min_samples) {
  double s = 0.0;
  for (const auto& [key, p] : exact.probability) s += std::sqrt(p * (1.0 - p));
  const double target = fraction * tolerance;
  const double root_n = 0.5 * std::sqrt(2.0 / std::numbers::pi) * s / target;
  const auto needed = static_cast<std::uint64_t>(std::ceil(root_n * root_n));
  return std::max(needed, min_samples);
}

}  // namespace rr
