#include "catsim/bench.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace catsim {

void BenchAccumulator::add(double ms_per_step) {
  if (!(ms_per_step >= 0))
    throw std::invalid_argument("bench: sample must be a non-negative time");
  samples_.push_back(ms_per_step);
}

double BenchAccumulator::mean() const {
  if (samples_.empty()) throw std::logic_error("bench: no samples");
  return std::accumulate(samples_.begin(), samples_.end(), 0.0) /
         static_cast<double>(samples_.size());
}

double BenchAccumulator::stderr_pct() const {
  const auto k = static_cast<double>(samples_.size());
  if (samples_.size() < 2) return std::numeric_limits<double>::infinity();
  const double m = mean();
  if (m <= 0) return std::numeric_limits<double>::infinity();
  double ss = 0.0;
  for (const double s : samples_) ss += (s - m) * (s - m);
  const double stderr_mean = std::sqrt(ss / (k - 1.0) / k);
  return 100.0 * stderr_mean / m;
}

bool BenchAccumulator::converged(double pct, int min_samples) const {
  return count() >= min_samples && stderr_pct() <= pct;
}

std::string bench_csv_header() {
  return "engine,n,r,steps,realizations,ms_per_step,stderr_pct,cells_per_sec";
}

std::string bench_csv_row(const std::string& engine, int n, int r, int steps,
                          const BenchAccumulator& acc) {
  const double ms = acc.mean();
  const double cells_per_sec =
      static_cast<double>(n) * n * 1000.0 / ms;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s,%d,%d,%d,%d,%.6g,%.3g,%.6g",
                engine.c_str(), n, r, steps, acc.count(), ms,
                acc.stderr_pct(), cells_per_sec);
  return buf;
}

}  // namespace catsim
