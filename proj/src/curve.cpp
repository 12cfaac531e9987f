#include "curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iabnet {

namespace {

// Fritsch-Carlson monotone cubic derivatives.
std::vector<double> pchip_derivatives(const std::vector<double>& x,
                                      const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n == 1) return d;
  if (n == 2) {
    d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return d;
  }
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    delta[i] = (y[i + 1] - y[i]) / h[i];
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] == 0.0 || delta[i] == 0.0 ||
        (delta[i - 1] > 0) != (delta[i] > 0)) {
      d[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  auto edge = [](double h0, double h1, double d0, double d1) {
    double v = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if ((v > 0) != (d0 > 0) || d0 == 0.0) {
      v = 0.0;
    } else if ((d0 > 0) != (d1 > 0) && std::fabs(v) > 3.0 * std::fabs(d0)) {
      v = 3.0 * d0;
    }
    return v;
  };
  d[0] = edge(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = edge(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

}  // namespace

Curve::Curve(std::vector<double> log_gamma, std::vector<double> value)
    : x_(std::move(log_gamma)), y_(std::move(value)) {
  if (x_.size() != y_.size() || x_.empty())
    throw std::invalid_argument("Curve: mismatched or empty node arrays");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1]))
      throw std::invalid_argument("Curve: grid must be strictly ascending");
  d_ = pchip_derivatives(x_, y_);
}

double Curve::eval(double gamma) const {
  if (y_.empty()) return 0.0;
  if (!(gamma > 0)) return y_.front();
  const double t = std::log10(gamma);
  if (t <= x_.front()) return y_.front();
  if (t >= x_.back()) return 0.0;
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  const double v = h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] +
                   h11 * h * d_[i + 1];
  return v > 0.0 ? v : 0.0;
}

Curve build_curve(const std::function<double(double)>& f,
                  const CurveBuildOptions& opt) {
  std::vector<double> xs, ys;
  auto sample = [&](double lx) { return f(std::pow(10.0, lx)); };

  for (double lx = opt.log_lo; lx <= opt.log_hi + 1e-12; lx += opt.log_step) {
    xs.push_back(lx);
    ys.push_back(sample(lx));
  }
  // Extend right until the curve is below the truncation floor.
  while (ys.back() > opt.right_floor && xs.back() < 40.0) {
    xs.push_back(xs.back() + opt.log_step);
    ys.push_back(sample(xs.back()));
  }
  // Extend left until the plateau flattens out (or the curve is dead flat 0).
  auto flattened = [&] {
    const double a = ys[0], b = ys[1];
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return scale == 0.0 || std::fabs(a - b) <= opt.plateau_rel * scale;
  };
  while (!flattened() && xs.front() > -280.0) {
    xs.insert(xs.begin(), xs.front() - opt.log_step);
    ys.insert(ys.begin(), sample(xs.front()));
  }

  // Midpoint refinement against fresh samples.
  for (int pass = 0; pass < opt.max_refine_passes; ++pass) {
    Curve current(xs, ys);
    std::vector<double> nx, ny;
    bool inserted = false;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      nx.push_back(xs[i]);
      ny.push_back(ys[i]);
      // Skip intervals where both ends sit under the floor.
      if (ys[i] <= opt.right_floor && ys[i + 1] <= opt.right_floor) continue;
      const double mid = 0.5 * (xs[i] + xs[i + 1]);
      const double truth = sample(mid);
      if (std::fabs(current.eval(std::pow(10.0, mid)) - truth) >
          opt.abs_target) {
        nx.push_back(mid);
        ny.push_back(truth);
        inserted = true;
      }
    }
    nx.push_back(xs.back());
    ny.push_back(ys.back());
    xs.swap(nx);
    ys.swap(ny);
    if (!inserted) break;
  }
  return Curve(xs, ys);
}

}  // namespace iabnet
