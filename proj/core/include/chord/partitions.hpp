#pragma once

// Families of equal-measure connected subsets that cover a graph exactly n
// times away from finitely many points.

#include <vector>

#include "chord/metric_graph.hpp"

namespace chord {

struct PartitionCertificate {
  std::vector<ConnSubset> subsets;
  Rational r;
  unsigned n = 1;
};

/// Every subset connected with measure r, and on every open interval between
/// consecutive segment endpoints each point lies in exactly n subsets.
[[nodiscard]] bool verify_partition(const MetricGraph& g, const PartitionCertificate& cert);

/// r = 1/k, n = 2: each path of the double cover cut into arcs of length 1/k.
/// Requires minimum degree >= 2 and k >= 1.
[[nodiscard]] PartitionCertificate construct_partition_1k(const MetricGraph& g, unsigned k);

/// r = |E|/k, n = 1: the Euler circuit cut into k equal arcs.
[[nodiscard]] PartitionCertificate construct_partition_euler(const MetricGraph& g, unsigned k);

}  // namespace chord
