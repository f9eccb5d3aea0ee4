#include "chord/cli.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "chord/game_service.hpp"
#include "chord/json_io.hpp"

namespace chord {

namespace {

io::Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read " + path);
  try {
    return io::Json::parse(in);
  } catch (const io::Json::exception& e) {
    throw io::FormatError(path + ": " + e.what());
  }
}

struct Options {
  std::string graph;
  std::string f;
  std::string g;
  std::string cert;
  std::string r;
  std::string necklace;
  std::string host = "127.0.0.1";
  std::string log_dir;
  unsigned k = 0;
  int port = 8080;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  bool euler = false;
};

io::Json solve(const Options& o, bool euler) {
  const MetricGraph g = io::graph_from(read_json(o.graph));
  const StepFunction f = io::step_function_from(g, read_json(o.f));
  const Rational r = parse_rational(o.r);
  return io::solution_json(g, euler ? euler_chord_solve(g, f, r) : graph_chord_solve(g, f, r));
}

io::Json double_cover(const Options& o) {
  const MetricGraph g = io::graph_from(read_json(o.graph));
  io::Json out = io::Json::array();
  for (const auto& p : compute_double_cover(g).paths) out.push_back(io::path_json(g, p));
  return out;
}

io::Json partition_verify(const Options& o) {
  const MetricGraph g = io::graph_from(read_json(o.graph));
  const PartitionCertificate cert = io::certificate_from(g, read_json(o.cert));
  return {{"valid", verify_partition(g, cert)}};
}

io::Json interval(const Options& o) {
  const Step1D f = io::step1d_from(read_json(o.f));
  const Step1D g = o.g.empty() ? Step1D(1, 1) : io::step1d_from(read_json(o.g));
  auto as_json = [](const ChordInterval& j, const Rational& achieved) {
    return io::Json{{"interval", {io::rational_json(j.lo), io::rational_json(j.hi)}},
                    {"achieved", io::rational_json(achieved)}};
  };
  if (o.k > 0) {
    if (o.g.empty()) return as_json(find_fixed_window(f, o.k), frac(1, o.k));
    return as_json(find_common_chord_k(f, g, o.k), frac(1, o.k));
  }
  if (o.r.empty()) throw PreconditionError("interval needs --r or --k");
  const CommonChord c = find_common_chord(f, g, parse_rational(o.r));
  return as_json(c.interval, c.achieved);
}

io::Json necklace(const Options& o) {
  const auto pearls = parse_necklace(o.necklace);
  const NecklaceSplit s = necklace_split(pearls);
  return {{"window", {s.first, s.last}}, {"cuts", s.cuts}};
}

io::Json evidence(const Options& o) {
  const MetricGraph g = io::graph_from(read_json(o.graph));
  return io::evidence_json(chord_membership_evidence(g, parse_rational(o.r), o.trials, o.seed));
}

}  // namespace

void configure_logging() {
  auto logger = spdlog::get("chord");
  if (!logger) logger = spdlog::stderr_color_mt("chord");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("CHORD_LOG")) spdlog::set_level(spdlog::level::from_str(level));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact chord solvers on metric graphs", "chord"};
  app.require_subcommand(1);
  Options o;

  auto* solve_cmd = app.add_subcommand("solve", "zero-integral connected subset of measure r");
  solve_cmd->add_option("--graph", o.graph)->required();
  solve_cmd->add_option("--f", o.f)->required();
  solve_cmd->add_option("--r", o.r)->required();
  solve_cmd->add_flag("--euler", o.euler, "use the Euler-circuit solver");

  auto* euler_cmd = app.add_subcommand("euler-solve", "Euler-circuit solver, any r in [0,|E|]");
  euler_cmd->add_option("--graph", o.graph)->required();
  euler_cmd->add_option("--f", o.f)->required();
  euler_cmd->add_option("--r", o.r)->required();

  auto* cover_cmd = app.add_subcommand("double-cover", "semi-simple double cover");
  cover_cmd->add_option("--graph", o.graph)->required();

  auto* verify_cmd = app.add_subcommand("partition-verify", "check a partition certificate");
  verify_cmd->add_option("--graph", o.graph)->required();
  verify_cmd->add_option("--cert", o.cert)->required();

  auto* interval_cmd = app.add_subcommand("interval", "common chord of two densities on [0,1]");
  interval_cmd->add_option("--f", o.f)->required();
  interval_cmd->add_option("--g", o.g, "second density (default: constant 1)");
  interval_cmd->add_option("--r", o.r);
  interval_cmd->add_option("--k", o.k, "look for a chord of length exactly 1/k");

  auto* necklace_cmd = app.add_subcommand("necklace", "balanced two-cut necklace split");
  necklace_cmd->add_option("pearls", o.necklace, "string of B and W")->required();

  auto* serve_cmd = app.add_subcommand("game-serve", "HTTP game service");
  serve_cmd->add_option("--port", o.port);
  serve_cmd->add_option("--host", o.host);
  serve_cmd->add_option("--log-dir", o.log_dir, "append-only replay logs");

  auto* evidence_cmd = app.add_subcommand("evidence", "sample random zero-mean functions at r");
  evidence_cmd->add_option("--graph", o.graph)->required();
  evidence_cmd->add_option("--r", o.r)->required();
  evidence_cmd->add_option("--trials", o.trials)->check(CLI::PositiveNumber);
  evidence_cmd->add_option("--seed", o.seed);

  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return exit_usage;
  }

  try {
    io::Json result;
    if (*solve_cmd) {
      result = solve(o, o.euler);
    } else if (*euler_cmd) {
      result = solve(o, true);
    } else if (*cover_cmd) {
      result = double_cover(o);
    } else if (*verify_cmd) {
      result = partition_verify(o);
    } else if (*interval_cmd) {
      result = interval(o);
    } else if (*necklace_cmd) {
      result = necklace(o);
    } else if (*evidence_cmd) {
      result = evidence(o);
    } else if (*serve_cmd) {
      GameService service(o.log_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(o.log_dir));
      serve_http(service, o.host, o.port);
      return exit_ok;
    }
    out << result.dump() << "\n";
    return exit_ok;
  } catch (const PreconditionError& e) {
    err << io::Json{{"error", e.what()}, {"kind", "precondition"}}.dump() << "\n";
    return exit_precondition;
  } catch (const io::Json::exception& e) {
    err << io::Json{{"error", e.what()}, {"kind", "precondition"}}.dump() << "\n";
    return exit_precondition;
  } catch (const InternalError& e) {
    err << io::Json{{"error", e.what()}, {"kind", "internal"}}.dump() << "\n";
    return exit_internal;
  } catch (const std::exception& e) {
    err << io::Json{{"error", e.what()}, {"kind", "internal"}}.dump() << "\n";
    return exit_internal;
  }
}

}  // namespace chord
