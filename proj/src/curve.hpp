// Monotone piecewise-cubic interpolation of coverage-vs-threshold curves
// over log10(threshold), with adaptive node placement.  Marginal coverage
// integrals are expensive; the rate/ASE layer evaluates them at thousands of
// thresholds, so it queries these curves instead.
#pragma once

#include <functional>
#include <vector>

namespace iabnet {

class Curve {
 public:
  // Nodes: ascending log10(gamma) grid with values; derivatives are fitted
  // with the Fritsch-Carlson monotone scheme.
  Curve(std::vector<double> log_gamma, std::vector<double> value);
  Curve() = default;

  // Below the grid: the left plateau value (coverage saturates at the
  // association mass as gamma -> 0).  Above the grid: exactly 0 (curves are
  // extended rightward until the value is below the truncation floor).
  double eval(double gamma) const;

  double left_plateau() const { return y_.empty() ? 0.0 : y_.front(); }
  bool empty() const { return y_.empty(); }
  std::size_t size() const { return y_.size(); }

 private:
  std::vector<double> x_;  // log10(gamma)
  std::vector<double> y_;
  std::vector<double> d_;  // dy/dx at nodes
};

struct CurveBuildOptions {
  double abs_target = 5e-5;   // interpolation-error target between nodes
  double right_floor = 1e-13;  // extend right until the value drops below
  double plateau_rel = 1e-6;   // extend left until relative flattening
  int max_refine_passes = 4;
  double log_lo = -8.0;  // initial log10(gamma) window
  double log_hi = 2.0;
  double log_step = 1.0;
};

// Samples `f` (a coverage probability as a function of linear threshold),
// extends the window until both tails are resolved, then inserts midpoints
// wherever the interpolant misses fresh samples by more than abs_target.
Curve build_curve(const std::function<double(double)>& f,
                  const CurveBuildOptions& opt = {});

}  // namespace iabnet
