#include "pradar/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pradar::numerics {

double QuadratureRule::total_length() const {
  double len = 0.0;
  for (const auto& [lo, hi] : segments) len += hi - lo;
  return len;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  std::vector<double> x(n), w(n);
  // Newton iteration on the Legendre polynomial from the standard cosine
  // initial guess; roots come in symmetric pairs.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    double weight = 2.0 / ((1.0 - z * z) * pp * pp);
    w[i] = weight;
    w[n - 1 - i] = weight;
  }
  return {x, w};
}

QuadratureRule make_quadrature(const PriorModel& prior, int nodes_per_segment) {
  validate_prior(prior);
  if (nodes_per_segment < 2)
    throw std::invalid_argument(
        "make_quadrature: nodes_per_segment must be >= 2");

  struct Interval {
    double lo, hi;
    int count;  // component intervals merged into this one
  };
  std::vector<Interval> intervals;
  intervals.reserve(prior.components.size());
  for (const auto& c : prior.components) {
    const double sigma = std::sqrt(c.variance);
    intervals.push_back({c.mean - 8.0 * sigma, c.mean + 8.0 * sigma, 1});
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

  std::vector<Interval> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
      merged.back().count += 1;
    } else {
      merged.push_back(iv);
    }
  }

  const auto [gx, gw] = gauss_legendre(nodes_per_segment);
  QuadratureRule rule;
  for (const auto& seg : merged) {
    rule.segments.emplace_back(seg.lo, seg.hi);
    const double panel_width = (seg.hi - seg.lo) / seg.count;
    for (int p = 0; p < seg.count; ++p) {
      const double a = seg.lo + p * panel_width;
      const double mid = a + 0.5 * panel_width;
      const double scale = 0.5 * panel_width;
      for (int i = 0; i < nodes_per_segment; ++i) {
        rule.nodes.push_back(mid + scale * gx[i]);
        rule.weights.push_back(scale * gw[i]);
      }
    }
  }
  return rule;
}

ComplexMatrix integrate_matrix(const QuadratureRule& rule,
                               const std::function<ComplexMatrix(double)>& f) {
  if (rule.nodes.empty())
    throw std::invalid_argument("integrate_matrix: empty rule");
  ComplexMatrix acc = rule.weights[0] * f(rule.nodes[0]);
  for (std::size_t i = 1; i < rule.nodes.size(); ++i) {
    ComplexMatrix fi = f(rule.nodes[i]);
    if (fi.rows() != acc.rows() || fi.cols() != acc.cols())
      throw std::runtime_error(
          "integrate_matrix: integrand shape changed across nodes");
    acc += rule.weights[i] * fi;
  }
  return acc;
}

double integrate_scalar(const QuadratureRule& rule,
                        const std::function<double(double)>& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(rule.nodes[i]);
  return acc;
}

}  // namespace pradar::numerics
