#pragma once

// Adaptive numerical integration: Gauss7/Kronrod15 panels with
// worst-first interval subdivision, plus a semi-infinite variant that
// splits the domain and folds the tail through u = U0/t. The fold keeps
// the mapped integrand bounded for any tail decaying faster than u^-2,
// which is as slow as the model's interference tails get.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace iabnet {

// Non-convergence of an iterative numeric routine. Carries the best
// value reached and the relative tolerance actually achieved.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double partial, double achieved)
      : std::runtime_error(what), partial_value(partial), achieved_tol(achieved) {}
  double partial_value;
  double achieved_tol;
};

struct QuadSpec {
  double rel_tol = 1e-6;
  double abs_tol = 0.0;    // absolute error floor; 0 means purely relative
  int max_evals = 500000;
  // Truncation policy for exp(-pi lambda r^2) tails: callers place the
  // head/tail split where the remaining void-probability mass drops below
  // this threshold.
  double tail_mass_threshold = 1e-10;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evals = 0;
};

namespace quad_detail {

// Kronrod-15 abscissae on [0,1] side (symmetric) and weights; the
// embedded Gauss-7 rule uses the odd-indexed abscissae.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value, error;
};

template <class F>
inline Panel eval_panel(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fc = f(c);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(resk);
  double fv[15];
  fv[7] = fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    fv[j] = f1;
    fv[14 - j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::fabs(fv[j] - mean) + std::fabs(fv[14 - j] - mean));
  resasc *= h;
  resabs *= h;
  double err = std::fabs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / eps50)
    err = std::max(err, eps50 * resabs);
  return Panel{a, b, resk * h, err};
}

}  // namespace quad_detail

// Adaptive integration of f over the finite interval [a, b].
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadSpec& spec = {}) {
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  if (a == b) return {0.0, 0.0, 0};
  using quad_detail::Panel;
  std::vector<Panel> panels;
  panels.push_back(quad_detail::eval_panel(f, a, b));
  int evals = 15;
  double total = panels[0].value;
  double err = panels[0].error;
  for (;;) {
    const double target = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total));
    if (err <= target || err == 0.0) break;
    if (evals + 30 > spec.max_evals) {
      const double rel = std::fabs(total) > 0 ? err / std::fabs(total) : err;
      throw NumericError("integrate: eval budget exhausted", total, rel);
    }
    size_t worst = 0;
    for (size_t i = 1; i < panels.size(); ++i)
      if (panels[i].error > panels[worst].error) worst = i;
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (mid <= p.a || mid >= p.b) {
      const double rel = std::fabs(total) > 0 ? err / std::fabs(total) : err;
      throw NumericError("integrate: interval underflow before convergence", total, rel);
    }
    panels[worst] = quad_detail::eval_panel(f, p.a, mid);
    panels.push_back(quad_detail::eval_panel(f, mid, p.b));
    evals += 30;
    total += panels[worst].value + panels.back().value - p.value;
    err += panels[worst].error + panels.back().error - p.error;
  }
  // Re-sum once at the end: the incremental updates accumulate rounding.
  total = 0.0;
  err = 0.0;
  for (const Panel& p : panels) {
    total += p.value;
    err += p.error;
  }
  return {total, err, evals};
}

// Adaptive integration of f over [a, inf). The head [a, split] is done
// directly; the tail is folded onto (0, 1] via u = split/t, du = -split/t^2 dt,
// so a u^-p tail (p > 2) becomes a bounded t^(p-2) integrand near t = 0.
template <class F>
QuadResult integrate_semi_infinite(F&& f, double a, const QuadSpec& spec = {},
                                   double split_hint = 0.0) {
  if (!(a >= 0)) throw std::invalid_argument("integrate_semi_infinite: requires a >= 0");
  double split = split_hint > a ? split_hint : std::max(1000.0, 2.0 * a + 1.0);
  QuadSpec half = spec;
  half.max_evals = spec.max_evals / 2;
  QuadResult head = integrate(f, a, split, half);
  auto tail_f = [&f, split](double t) { return f(split / t) * split / (t * t); };
  QuadResult tail = integrate(tail_f, 0.0, 1.0, half);
  return {head.value + tail.value, head.error_estimate + tail.error_estimate,
          head.evals + tail.evals};
}

}  // namespace iabnet
