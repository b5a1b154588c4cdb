// Independent reference computations for the test suites. Nothing here
// calls into the library's numerical paths.

#ifndef HEATCTL_TESTS_ORACLES_HPP
#define HEATCTL_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

/// Ideal-diode reservoir integrated by brute force: v <- max(rect(t), v - k dt)
/// from an uncharged capacitor over `cycles` mains cycles, then the
/// steady-state (max, min) over the final cycle.
inline std::pair<double, double> rail_extremes(double vs_rms, double f, double vd, double i_load, double c,
                                               double step = 1e-7, int cycles = 10) {
  const double a = vs_rms * std::numbers::sqrt2;
  const double k = i_load / c;
  const double t_end = cycles / f;
  const double settle = (cycles - 1) / f;
  double v = 0.0, hi = -1e300, lo = 1e300;
  for (double t = 0.0; t < t_end; t += step) {
    const double rect = std::max(0.0, std::abs(a * std::sin(2.0 * std::numbers::pi * f * t)) - 2.0 * vd);
    v = std::max(rect, v - k * step);
    if (t >= settle) {
      hi = std::max(hi, v);
      lo = std::min(lo, v);
    }
  }
  return {hi, lo};
}

/// Same integration, returning v at time t (starting from v = 0 at t = 0).
inline double rail_at(double t_query, double vs_rms, double f, double vd, double i_load, double c,
                      double step = 1e-7) {
  const double a = vs_rms * std::numbers::sqrt2;
  const double k = i_load / c;
  double v = 0.0;
  for (double t = 0.0; t <= t_query + 0.5 * step; t += step) {
    const double rect = std::max(0.0, std::abs(a * std::sin(2.0 * std::numbers::pi * f * t)) - 2.0 * vd);
    v = std::max(rect, v - k * step);
  }
  return v;
}

struct Point {
  double t;
  double temp;
};

/// Linear interpolation with constant extension.
inline double interp(const std::vector<Point>& p, double t) {
  if (t <= p.front().t) return p.front().temp;
  if (t >= p.back().t) return p.back().temp;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (t <= p[i].t) {
      const double u = (t - p[i - 1].t) / (p[i].t - p[i - 1].t);
      return p[i - 1].temp + u * (p[i].temp - p[i - 1].temp);
    }
  }
  return p.back().temp;
}

/// Exceedance spans of temp >= level on [0, t_end] located by bisection on
/// each bracket between consecutive vertices.
inline std::vector<std::pair<double, double>> exceedance(const std::vector<Point>& p, double level, double t_end) {
  std::vector<double> knots{0.0};
  for (const auto& q : p)
    if (q.t > 0.0 && q.t < t_end) knots.push_back(q.t);
  knots.push_back(t_end);

  auto above = [&](double t) { return interp(p, t) >= level; };
  auto crossing = [&](double a, double b) {
    const bool sa = above(a);
    for (int i = 0; i < 200 && b - a > 1e-13; ++i) {
      const double m = 0.5 * (a + b);
      (above(m) == sa ? a : b) = m;
    }
    return 0.5 * (a + b);
  };

  std::vector<std::pair<double, double>> out;
  bool in = above(0.0);
  double start = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i], b = knots[i + 1];
    if (above(b) != in) {
      const double c = crossing(a, b);
      if (in) {
        if (c > start) out.emplace_back(start, c);
      } else {
        start = c;
      }
      in = !in;
    }
  }
  if (in && t_end > start) out.emplace_back(start, t_end);
  return out;
}

/// Rising-edge instants of a free-running astable started from an empty
/// capacitor: the first high phase charges 0 -> 2Vs/3.
inline std::vector<double> astable_rising_edges(double r1, double r2, double c, double t_end) {
  const double tc = (r1 + r2) * c, td = r2 * c;
  const double period = (tc + td) * std::numbers::ln2;
  std::vector<double> edges;
  for (double t = tc * std::log(3.0) + td * std::numbers::ln2; t <= t_end; t += period) edges.push_back(t);
  return edges;
}

}  // namespace oracle

#endif  // HEATCTL_TESTS_ORACLES_HPP
