#pragma once

// In-memory game sessions behind a small JSON-over-HTTP interface.
//
//   POST /games               GameConfig JSON        -> 201 {"id", "state"}
//   GET  /games/{id}                                 -> state
//   POST /games/{id}/moves    [dots] or {"dots", "player"?, "version"?} -> state
//   GET  /games/{id}/legal                           -> {"version", "moves"}
//
// 404 unknown game, 409 illegal or out-of-turn move, 400 malformed body.

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "chord/json_io.hpp"

namespace chord {

struct HttpReply {
  int status = 200;
  io::Json body;
};

class GameService {
 public:
  /// With a log directory every game appends its config and accepted moves
  /// to <dir>/<id>.jsonl, and existing logs are replayed on construction.
  explicit GameService(std::optional<std::filesystem::path> log_dir = std::nullopt);

  [[nodiscard]] HttpReply handle(std::string_view method, std::string_view path, std::string_view body);

  [[nodiscard]] std::size_t game_count() const;

 private:
  struct Game {
    GameConfig config;
    std::mutex write;                 // serialises move application
    mutable std::mutex snapshot_guard;  // held only to copy the pointer
    std::shared_ptr<const GameState> snapshot;

    [[nodiscard]] std::shared_ptr<const GameState> current() const;
  };

  HttpReply create(std::string_view body);
  HttpReply show(const std::string& id) const;
  HttpReply legal(const std::string& id) const;
  HttpReply move(const std::string& id, std::string_view body);

  [[nodiscard]] std::shared_ptr<Game> find(const std::string& id) const;
  void append_log(const std::string& id, const io::Json& line) const;
  void replay();

  std::optional<std::filesystem::path> log_dir_;
  mutable std::shared_mutex games_guard_;
  std::map<std::string, std::shared_ptr<Game>> games_;
  std::size_t next_id_ = 1;
};

/// HTTP binding of a GameService, with permissive CORS for a browser UI.
class HttpServer {
 public:
  explicit HttpServer(GameService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds host:port; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called from another thread.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Serves `service` over HTTP until the process is stopped.
void serve_http(GameService& service, const std::string& host, int port);

}  // namespace chord
