#pragma once

// JSON wire formats. Every rational travels as a "p/q" string.

#include <json.hpp>

#include "chord/double_cover.hpp"
#include "chord/game_engine.hpp"
#include "chord/graph_chords.hpp"
#include "chord/interval_chords.hpp"
#include "chord/partitions.hpp"
#include "chord/subset_space.hpp"

namespace chord::io {

using Json = nlohmann::json;

/// Malformed or inconsistent JSON input.
class FormatError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

[[nodiscard]] Json rational_json(const Rational& q);
[[nodiscard]] Rational rational_from(const Json& j);

/// {"vertices": [...], "edges": [{"id": "a", "ends": ["u", "v"]}]}
[[nodiscard]] Json graph_json(const MetricGraph& g);
[[nodiscard]] MetricGraph graph_from(const Json& j);

/// {"a": [["0", "1/2"], ...]}; edges with no segments are left out.
[[nodiscard]] Json subset_json(const MetricGraph& g, const Subset& s);
[[nodiscard]] Subset subset_from(const MetricGraph& g, const Json& j);

/// [{"from": "0", "to": "1/2", "value": "2"}, ...]
[[nodiscard]] Json step1d_json(const Step1D& f);
[[nodiscard]] Step1D step1d_from(const Json& j);

/// {"a": [pieces...]}; a missing edge is constant 0.
[[nodiscard]] Json step_function_json(const MetricGraph& g, const StepFunction& f);
[[nodiscard]] StepFunction step_function_from(const MetricGraph& g, const Json& j);

[[nodiscard]] Json point_json(const MetricGraph& g, const GraphPoint& p);
[[nodiscard]] GraphPoint point_from(const MetricGraph& g, const Json& j);

/// [{"edge": "a", "dir": "+"}, ...]
[[nodiscard]] Json path_json(const MetricGraph& g, const ClosedPath& p);
[[nodiscard]] ClosedPath path_from(const MetricGraph& g, const Json& j);

/// {"kind": "pair", "grow": {"edge", "t", "dir"}, "shrink": {...}, "dt": "1/4"}
[[nodiscard]] Json move_json(const MetricGraph& g, const TipMove& m);
[[nodiscard]] TipMove move_from(const MetricGraph& g, const Json& j);
[[nodiscard]] Json schedule_json(const MetricGraph& g, const MoveSchedule& s);

[[nodiscard]] Json solution_json(const MetricGraph& g, const ChordSolution& s);

/// {"r": "1/2", "n": 2, "subsets": [subset, ...]}
[[nodiscard]] Json certificate_json(const MetricGraph& g, const PartitionCertificate& c);
[[nodiscard]] PartitionCertificate certificate_from(const MetricGraph& g, const Json& j);

/// {"board": {"kind": "circle"} | {"kind": "euler", "graph": ..., "dots": [point...]},
///  "N": 2, "m": 1, "n": 1}
[[nodiscard]] Json config_json(const GameConfig& c);
[[nodiscard]] GameConfig config_from(const Json& j);

[[nodiscard]] Json state_json(const GameConfig& c, const GameState& s);

[[nodiscard]] Json evidence_json(const EvidenceReport& r);

}  // namespace chord::io
