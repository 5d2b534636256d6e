#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "pradar/types.hpp"

namespace pradar::numerics {

/// Composite quadrature rule over a union of disjoint intervals.
struct QuadratureRule {
  std::vector<double> nodes;    // radians, strictly inside the domain
  std::vector<double> weights;  // strictly positive
  std::vector<std::pair<double, double>> segments;  // merged, sorted, disjoint

  double total_length() const;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// Builds a composite Gauss-Legendre rule covering the union of
/// [mean_k - 8*sigma_k, mean_k + 8*sigma_k] over all mixture components.
/// Overlapping intervals are merged; a merged segment that absorbed c
/// component intervals is split into c equal panels of nodes_per_segment
/// points each. Rejects nodes_per_segment < 2.
QuadratureRule make_quadrature(const PriorModel& prior, int nodes_per_segment);

/// Weighted sum of f over the rule's nodes. The integrand must return the
/// same shape at every node.
ComplexMatrix integrate_matrix(const QuadratureRule& rule,
                               const std::function<ComplexMatrix(double)>& f);

double integrate_scalar(const QuadratureRule& rule,
                        const std::function<double(double)>& f);

}  // namespace pradar::numerics
