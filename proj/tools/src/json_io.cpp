#include "chord/json_io.hpp"

namespace chord::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text(const Json& j) {
  if (!j.is_string()) throw FormatError("expected a string, got " + j.dump());
  return j.get<std::string>();
}

unsigned small_count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0 || j.get<long long>() > 1'000'000) {
    throw FormatError(std::string("bad ") + what);
  }
  return j.get<unsigned>();
}

int dir_from(const Json& j) {
  const std::string d = text(j);
  if (d == "+") return 1;
  if (d == "-") return -1;
  throw FormatError("dir must be \"+\" or \"-\"");
}

Json tip_json(const MetricGraph& g, const Tip& tip) {
  return {{"edge", g.edge(tip.at.edge).id},
          {"t", rational_json(tip.at.t)},
          {"dir", tip.dir > 0 ? "+" : "-"}};
}

Tip tip_from(const MetricGraph& g, const Json& j) {
  return {{g.edge_index(text(field(j, "edge"))), rational_from(field(j, "t"))}, dir_from(field(j, "dir"))};
}

const char* status_name(DotStatus s) {
  switch (s) {
    case DotStatus::player1: return "p1";
    case DotStatus::player2: return "p2";
    default: return "uncrossed";
  }
}

int player_number(Player p) { return p == Player::one ? 1 : 2; }

}  // namespace

Json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return parse_rational(text(j));
}

Json graph_json(const MetricGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"id", e.id}, {"ends", {g.vertex_name(e.tail), g.vertex_name(e.head)}}});
  }
  return {{"vertices", g.vertex_names()}, {"edges", edges}};
}

MetricGraph graph_from(const Json& j) {
  std::vector<std::string> vertices;
  for (const auto& v : field(j, "vertices")) vertices.push_back(text(v));
  std::vector<EdgeSpec> edges;
  for (const auto& e : field(j, "edges")) {
    const Json& ends = field(e, "ends");
    if (!ends.is_array() || ends.size() != 2) throw FormatError("an edge has exactly two ends");
    edges.push_back({text(field(e, "id")), text(ends[0]), text(ends[1])});
  }
  return MetricGraph(std::move(vertices), std::move(edges));
}

Json subset_json(const MetricGraph& g, const Subset& s) {
  Json out = Json::object();
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (s.trace(e).empty()) continue;
    Json list = Json::array();
    for (const auto& iv : s.trace(e)) list.push_back({rational_json(iv.lo), rational_json(iv.hi)});
    out[g.edge(e).id] = list;
  }
  return out;
}

Subset subset_from(const MetricGraph& g, const Json& j) {
  if (!j.is_object()) throw FormatError("subset must be an object keyed by edge id");
  std::vector<EdgeSegment> segs;
  for (const auto& [id, list] : j.items()) {
    const EdgeIndex e = g.edge_index(id);
    for (const auto& pair : list) {
      if (!pair.is_array() || pair.size() != 2) throw FormatError("segment must be [lo, hi]");
      segs.push_back({e, rational_from(pair[0]), rational_from(pair[1])});
    }
  }
  return Subset::from_segments(g, segs);
}

Json step1d_json(const Step1D& f) {
  Json out = Json::array();
  for (const auto& p : f.pieces()) {
    out.push_back({{"from", rational_json(p.from)}, {"to", rational_json(p.to)}, {"value", rational_json(p.value)}});
  }
  return out;
}

Step1D step1d_from(const Json& j) {
  if (!j.is_array() || j.empty()) throw FormatError("step function must be a nonempty list of pieces");
  std::vector<StepPiece> pieces;
  for (const auto& p : j) {
    pieces.push_back({rational_from(field(p, "from")), rational_from(field(p, "to")), rational_from(field(p, "value"))});
  }
  return Step1D(pieces);
}

Json step_function_json(const MetricGraph& g, const StepFunction& f) {
  Json out = Json::object();
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) out[g.edge(e).id] = step1d_json(f.on(e));
  return out;
}

StepFunction step_function_from(const MetricGraph& g, const Json& j) {
  if (!j.is_object()) throw FormatError("step function must be an object keyed by edge id");
  std::vector<Step1D> per_edge(g.edge_count(), Step1D(1, 0));
  for (const auto& [id, pieces] : j.items()) per_edge[g.edge_index(id)] = step1d_from(pieces);
  return StepFunction(g, std::move(per_edge));
}

Json point_json(const MetricGraph& g, const GraphPoint& p) {
  return {{"edge", g.edge(p.edge).id}, {"t", rational_json(p.t)}};
}

GraphPoint point_from(const MetricGraph& g, const Json& j) {
  return {g.edge_index(text(field(j, "edge"))), rational_from(field(j, "t"))};
}

Json path_json(const MetricGraph& g, const ClosedPath& p) {
  Json out = Json::array();
  for (const auto& t : p.steps) out.push_back({{"edge", g.edge(t.edge).id}, {"dir", t.forward ? "+" : "-"}});
  return out;
}

ClosedPath path_from(const MetricGraph& g, const Json& j) {
  if (!j.is_array()) throw FormatError("path must be a list of steps");
  ClosedPath p;
  for (const auto& s : j) p.steps.push_back({g.edge_index(text(field(s, "edge"))), dir_from(field(s, "dir")) > 0});
  return p;
}

Json move_json(const MetricGraph& g, const TipMove& m) {
  static constexpr const char* kinds[] = {"grow", "shrink", "pair"};
  Json out = {{"kind", kinds[static_cast<int>(m.kind())]}, {"dt", rational_json(m.dt)}};
  if (m.grow) out["grow"] = tip_json(g, *m.grow);
  if (m.shrink) out["shrink"] = tip_json(g, *m.shrink);
  return out;
}

TipMove move_from(const MetricGraph& g, const Json& j) {
  TipMove m;
  m.dt = rational_from(field(j, "dt"));
  if (j.contains("grow")) m.grow = tip_from(g, j.at("grow"));
  if (j.contains("shrink")) m.shrink = tip_from(g, j.at("shrink"));
  if (!m.grow && !m.shrink) throw FormatError("move without tips");
  return m;
}

Json schedule_json(const MetricGraph& g, const MoveSchedule& s) {
  Json moves = Json::array();
  for (const auto& m : s.moves) moves.push_back(move_json(g, m));
  return {{"start", subset_json(g, s.start)}, {"moves", moves}};
}

Json solution_json(const MetricGraph& g, const ChordSolution& s) {
  Json cover = Json::array();
  for (const auto& p : s.cover) cover.push_back(path_json(g, p));
  return {{"subset", subset_json(g, s.set)},
          {"measure", rational_json(s.measure)},
          {"integral", rational_json(s.integral)},
          {"cover", cover},
          {"schedule_time", rational_json(s.schedule_time)}};
}

Json certificate_json(const MetricGraph& g, const PartitionCertificate& c) {
  Json subsets = Json::array();
  for (const auto& s : c.subsets) subsets.push_back(subset_json(g, s));
  return {{"r", rational_json(c.r)}, {"n", c.n}, {"subsets", subsets}};
}

PartitionCertificate certificate_from(const MetricGraph& g, const Json& j) {
  PartitionCertificate c;
  c.r = rational_from(field(j, "r"));
  c.n = small_count(field(j, "n"), "n");
  for (const auto& s : field(j, "subsets")) {
    Subset set = subset_from(g, s);
    if (!is_connected(g, set)) throw FormatError("certificate subset is not connected");
    c.subsets.push_back(ConnSubset::make(g, std::move(set)));
  }
  return c;
}

Json config_json(const GameConfig& c) {
  Json board;
  if (const auto* euler = std::get_if<EulerBoard>(&c.board)) {
    Json dots = Json::array();
    for (const auto& d : euler->dots) dots.push_back(point_json(euler->graph, d));
    board = {{"kind", "euler"}, {"graph", graph_json(euler->graph)}, {"dots", dots}};
  } else {
    board = {{"kind", "circle"}, {"dots", std::get<CircleBoard>(c.board).dots}};
  }
  return {{"board", board}, {"N", c.N}, {"m", c.m}, {"n", c.n}};
}

GameConfig config_from(const Json& j) {
  GameConfig c;
  c.N = small_count(field(j, "N"), "N");
  c.m = small_count(field(j, "m"), "m");
  c.n = small_count(field(j, "n"), "n");
  const Json& board = field(j, "board");
  const std::string kind = text(field(board, "kind"));
  if (kind == "circle") {
    c.board = CircleBoard{board.contains("dots") ? small_count(board.at("dots"), "dots") : c.dot_count()};
  } else if (kind == "euler") {
    MetricGraph g = graph_from(field(board, "graph"));
    std::vector<GraphPoint> dots;
    for (const auto& d : field(board, "dots")) dots.push_back(point_from(g, d));
    c.board = EulerBoard{std::move(g), std::move(dots)};
  } else {
    throw FormatError("board kind must be circle or euler");
  }
  c.validate();
  return c;
}

Json state_json(const GameConfig& c, const GameState& s) {
  Json status = Json::array();
  for (DotStatus d : s.status) status.push_back(status_name(d));
  Json out = {{"version", s.version()},
              {"status", status},
              {"turn", player_number(s.turn)},
              {"counts", {s.count(Player::one), s.count(Player::two)}},
              {"terminal", s.terminal()},
              {"history", s.history},
              {"witness", nullptr},
              {"winner", nullptr}};
  if (s.witness) {
    Json w = {{"dots", s.witness->dots}, {"loser", player_number(s.witness->loser)}};
    if (s.witness->arc_start) w["arc_start"] = *s.witness->arc_start;
    if (s.witness->region) w["region"] = subset_json(std::get<EulerBoard>(c.board).graph, *s.witness->region);
    out["witness"] = w;
    out["winner"] = player_number(other(s.witness->loser));
  }
  return out;
}

Json evidence_json(const EvidenceReport& r) {
  static constexpr const char* methods[] = {"euler_solver", "double_cover_solver", "grid_search"};
  return {{"method", methods[static_cast<int>(r.method)]},
          {"trials", r.trials},
          {"successes", r.successes},
          {"failures", r.failures},
          {"inconclusive", r.inconclusive},
          {"failing_seeds", r.failing_seeds}};
}

}  // namespace chord::io
