#include "chord/partitions.hpp"

#include <algorithm>

#include "chord/double_cover.hpp"
#include "chord/graph_chords.hpp"

namespace chord {

bool verify_partition(const MetricGraph& g, const PartitionCertificate& cert) {
  if (cert.n == 0) return false;
  for (const auto& s : cert.subsets) {
    if (measure(s) != cert.r || !is_connected(g, s)) return false;
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    std::vector<Rational> cuts = {0, 1};
    for (const auto& s : cert.subsets) {
      for (const auto& iv : s.set().trace(e)) {
        cuts.push_back(iv.lo);
        cuts.push_back(iv.hi);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const Rational mid = (cuts[i] + cuts[i + 1]) / 2;
      unsigned count = 0;
      for (const auto& s : cert.subsets) {
        const auto& trace = s.set().trace(e);
        count += static_cast<unsigned>(std::any_of(trace.begin(), trace.end(), [&](const Interval& iv) {
          return iv.lo <= mid && mid <= iv.hi;
        }));
      }
      if (count != cert.n) return false;
    }
  }
  return true;
}

PartitionCertificate construct_partition_1k(const MetricGraph& g, unsigned k) {
  if (k == 0) throw PreconditionError("k must be positive");
  const DoubleCover cover = compute_double_cover(g);
  PartitionCertificate cert{{}, frac(1, k), 2};
  for (const auto& path : cover.paths) {
    for (std::size_t j = 0; j < path.length() * k; ++j) {
      const Rational x = frac(static_cast<long>(j), k);
      cert.subsets.push_back(ConnSubset::make(g, walk_window(g, path, x, cert.r)));
    }
  }
  return cert;
}

PartitionCertificate construct_partition_euler(const MetricGraph& g, unsigned k) {
  if (k == 0) throw PreconditionError("k must be positive");
  const ClosedPath circuit = euler_circuit(g);
  PartitionCertificate cert{{}, frac(static_cast<long>(g.edge_count()), k), 1};
  for (unsigned j = 0; j < k; ++j) {
    cert.subsets.push_back(ConnSubset::make(g, walk_window(g, circuit, cert.r * j, cert.r)));
  }
  return cert;
}

}  // namespace chord
