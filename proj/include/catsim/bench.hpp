#pragma once

#include <string>
#include <vector>

namespace catsim {

// Collects per-step millisecond samples, one per benchmark realization, and
// reports when the standard error of the mean has tightened enough to stop.
class BenchAccumulator {
 public:
  void add(double ms_per_step);
  int count() const { return static_cast<int>(samples_.size()); }
  double mean() const;        // requires at least one sample
  double stderr_pct() const;  // +inf below two samples or on a zero mean
  bool converged(double pct, int min_samples = 3) const;

 private:
  std::vector<double> samples_;
};

// Column order is a published interface; downstream parsing pins it.
std::string bench_csv_header();
std::string bench_csv_row(const std::string& engine, int n, int r, int steps,
                          const BenchAccumulator& acc);

}  // namespace catsim
