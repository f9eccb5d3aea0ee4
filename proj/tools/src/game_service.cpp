#include "chord/game_service.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <fstream>

namespace chord {

namespace {

HttpReply error(int status, const std::string& message) { return {status, {{"error", message}}}; }

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    const std::size_t j = path.find('/', i);
    const std::size_t end = j == std::string_view::npos ? path.size() : j;
    if (end > i) parts.emplace_back(path.substr(i, end - i));
    i = end;
  }
  return parts;
}

io::Json with_id(const std::string& id, io::Json state) {
  state["id"] = id;
  return state;
}

}  // namespace

std::shared_ptr<const GameState> GameService::Game::current() const {
  std::lock_guard lock(snapshot_guard);
  return snapshot;
}

GameService::GameService(std::optional<std::filesystem::path> log_dir) : log_dir_(std::move(log_dir)) {
  if (log_dir_) {
    std::filesystem::create_directories(*log_dir_);
    replay();
  }
}

std::size_t GameService::game_count() const {
  std::shared_lock lock(games_guard_);
  return games_.size();
}

HttpReply GameService::handle(std::string_view method, std::string_view path, std::string_view body) {
  const auto parts = split_path(path);
  if (parts.empty() || parts[0] != "games" || parts.size() > 3) return error(404, "no such route");
  if (parts.size() == 1) {
    if (method != "POST") return error(405, "use POST /games");
    return create(body);
  }
  if (parts.size() == 2) {
    if (method != "GET") return error(405, "use GET /games/{id}");
    return show(parts[1]);
  }
  if (parts[2] == "moves") {
    if (method != "POST") return error(405, "use POST /games/{id}/moves");
    return move(parts[1], body);
  }
  if (parts[2] == "legal") {
    if (method != "GET") return error(405, "use GET /games/{id}/legal");
    return legal(parts[1]);
  }
  return error(404, "no such route");
}

std::shared_ptr<GameService::Game> GameService::find(const std::string& id) const {
  std::shared_lock lock(games_guard_);
  auto it = games_.find(id);
  return it == games_.end() ? nullptr : it->second;
}

HttpReply GameService::create(std::string_view body) {
  auto game = std::make_shared<Game>();
  try {
    game->config = io::config_from(io::Json::parse(body));
  } catch (const io::Json::exception& e) {
    return error(400, e.what());
  } catch (const PreconditionError& e) {
    return error(400, e.what());
  }
  game->snapshot = std::make_shared<const GameState>(new_game(game->config));
  std::string id;
  {
    std::unique_lock lock(games_guard_);
    id = "g" + std::to_string(next_id_++);
    games_[id] = game;
  }
  append_log(id, {{"config", io::config_json(game->config)}});
  spdlog::info("created game {}", id);
  return {201, {{"id", id}, {"state", with_id(id, io::state_json(game->config, *game->current()))}}};
}

HttpReply GameService::show(const std::string& id) const {
  auto game = find(id);
  if (!game) return error(404, "unknown game " + id);
  return {200, with_id(id, io::state_json(game->config, *game->current()))};
}

HttpReply GameService::legal(const std::string& id) const {
  auto game = find(id);
  if (!game) return error(404, "unknown game " + id);
  const auto state = game->current();
  io::Json moves = io::Json::array();
  if (!state->terminal()) moves = legal_moves(game->config, *state);
  return {200, {{"id", id}, {"version", state->version()}, {"moves", moves}}};
}

HttpReply GameService::move(const std::string& id, std::string_view body) {
  auto game = find(id);
  if (!game) return error(404, "unknown game " + id);
  std::vector<std::size_t> dots;
  std::optional<int> player;
  std::optional<std::size_t> version;
  try {
    const io::Json j = io::Json::parse(body);
    const io::Json& list = j.is_object() ? j.at("dots") : j;
    dots = list.get<std::vector<std::size_t>>();
    if (j.is_object() && j.contains("player")) player = j.at("player").get<int>();
    if (j.is_object() && j.contains("version")) version = j.at("version").get<std::size_t>();
  } catch (const io::Json::exception& e) {
    return error(400, e.what());
  }
  std::lock_guard write(game->write);
  const auto state = game->current();
  if (version && *version != state->version()) return error(409, "stale version");
  if (player && *player != (state->turn == Player::one ? 1 : 2)) return error(409, "not this player's turn");
  GameState next;
  try {
    next = apply_move(game->config, *state, dots);
  } catch (const IllegalMove& e) {
    return error(409, e.what());
  }
  auto fresh = std::make_shared<const GameState>(std::move(next));
  append_log(id, {{"move", fresh->history.back()}});
  {
    std::lock_guard lock(game->snapshot_guard);
    game->snapshot = fresh;
  }
  spdlog::debug("game {} version {}", id, fresh->version());
  return {200, with_id(id, io::state_json(game->config, *fresh))};
}

void GameService::append_log(const std::string& id, const io::Json& line) const {
  if (!log_dir_) return;
  std::ofstream out(*log_dir_ / (id + ".jsonl"), std::ios::app);
  out << line.dump() << '\n';
}

void GameService::replay() {
  for (const auto& entry : std::filesystem::directory_iterator(*log_dir_)) {
    if (entry.path().extension() != ".jsonl") continue;
    const std::string id = entry.path().stem().string();
    std::ifstream in(entry.path());
    auto game = std::make_shared<Game>();
    std::string line;
    GameState state;
    bool configured = false;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const io::Json j = io::Json::parse(line);
      if (j.contains("config")) {
        game->config = io::config_from(j.at("config"));
        state = new_game(game->config);
        configured = true;
      } else if (configured) {
        state = apply_move(game->config, state, j.at("move").get<std::vector<std::size_t>>());
      }
    }
    if (!configured) continue;
    game->snapshot = std::make_shared<const GameState>(std::move(state));
    games_[id] = game;
    if (id.size() > 1 && id[0] == 'g') {
      next_id_ = std::max(next_id_, std::stoul(id.substr(1)) + 1);
    }
    spdlog::info("replayed game {} at version {}", id, game->snapshot->version());
  }
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(GameService& service) : impl_(std::make_unique<Impl>()) {
  auto bind = [&service](const httplib::Request& req, httplib::Response& res) {
    const HttpReply reply = service.handle(req.method, req.path, req.body);
    res.status = reply.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(reply.body.dump(), "application/json");
  };
  impl_->server.Get(R"(/games.*)", bind);
  impl_->server.Post(R"(/games.*)", bind);
  impl_->server.Options(R"(/games.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void serve_http(GameService& service, const std::string& host, int port) {
  HttpServer server(service);
  const int bound = server.bind(host, port);
  spdlog::info("game service listening on {}:{}", host, bound);
  server.listen();
}

}  // namespace chord
