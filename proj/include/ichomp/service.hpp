#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "ichomp/catalog.hpp"
#include "ichomp/game.hpp"
#include "ichomp/serialize.hpp"

namespace ichomp {

struct ServiceResponse {
  int status = 200;
  nlohmann::json body;
};

inline int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownRing: return 404;
    case ErrorCode::GameOver: return 409;
    default: return 400;
  }
}

inline ServiceResponse error_response(int status, const std::string& code, const std::string& message) {
  return {status, {{"code", code}, {"message", message}}};
}

inline ServiceResponse error_response(const Error& e) { return error_response(http_status(e.code()), to_string(e.code()), e.what()); }

/// In-memory game store behind the JSON API. Transport-agnostic: every
/// handler takes and returns JSON. Each game has its own lock; solvers are
/// shared per (ring, field) and solved eagerly, so later lookups only read
/// the memo table.
class GameService {
 public:
  explicit GameService(Catalog catalog, std::optional<std::filesystem::path> snapshot_dir = std::nullopt)
      : catalog_(std::move(catalog)), snapshot_dir_(std::move(snapshot_dir)) {}

  const Catalog& catalog() const noexcept { return catalog_; }

  ServiceResponse list_catalog(std::optional<std::uint32_t> p = std::nullopt) const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : catalog_.all_entries()) {
      if (!p || e.applies_to(*p)) out.push_back(to_json(e));
    }
    return {200, out};
  }

  /// body: {ring_id, field, engine_side: "A" | "B" | "none"}
  ServiceResponse create_game(const nlohmann::json& body) {
    try {
      if (!body.is_object() || !body.contains("ring_id")) {
        return error_response(400, "invalid_argument", "ring_id is required");
      }
      const auto ring = body.at("ring_id").get<std::string>();
      const auto p = body.contains("field") ? body.at("field").get<std::uint32_t>() : 2u;
      std::optional<Player> engine;
      const auto side = body.value("engine_side", std::string("none"));
      if (side == "A") {
        engine = Player::A;
      } else if (side == "B") {
        engine = Player::B;
      } else if (side != "none" && !side.empty()) {
        return error_response(400, "invalid_argument", "engine_side must be A, B or none");
      }
      auto solver = solver_for(ring, PrimeField(p));
      auto game = std::make_shared<Game>();
      game->field = p;
      game->session = std::make_unique<PlaySession>(solver, engine, ring);
      std::string id;
      {
        std::lock_guard lock(store_mutex_);
        id = "g" + std::to_string(++next_id_);
        games_.emplace(id, game);
      }
      std::lock_guard lock(game->mutex);
      nlohmann::json reply;
      reply["game_id"] = id;
      reply["engine_move"] = nullptr;
      if (game->session->engine_to_move()) reply["engine_move"] = engine_reply(*game->session);
      snapshot(id, *game);
      reply["state"] = state_json(id, *game);
      return {201, reply};
    } catch (const Error& e) {
      return error_response(e);
    } catch (const nlohmann::json::exception& e) {
      return error_response(400, "invalid_argument", e.what());
    }
  }

  ServiceResponse get_game(const std::string& id) {
    auto game = find(id);
    if (!game) return unknown_game(id);
    std::lock_guard lock(game->mutex);
    return {200, state_json(id, *game)};
  }

  /// body: {poly}. Plays the human move, then the engine's answer if it is
  /// the engine's turn.
  ServiceResponse post_move(const std::string& id, const nlohmann::json& body) {
    auto game = find(id);
    if (!game) return unknown_game(id);
    std::lock_guard lock(game->mutex);
    auto& s = *game->session;
    try {
      if (!body.is_object() || !body.contains("poly") || !body.at("poly").is_string()) {
        return error_response(400, "invalid_argument", "poly (string) is required");
      }
      if (s.over()) return error_response(409, "game_over", "game is over");
      if (s.engine_to_move()) return error_response(409, "not_your_turn", "the engine is to move");
      const auto& rec = s.apply_move(body.at("poly").get<std::string>());
      nlohmann::json reply;
      reply["move"] = {{"player", to_string(rec.player)}, {"move", rec.move},
                       {"immediate_loss", s.over()}};
      reply["engine_move"] = nullptr;
      if (s.engine_to_move()) reply["engine_move"] = engine_reply(s);
      snapshot(id, *game);
      reply["state"] = state_json(id, *game);
      return {200, reply};
    } catch (const Error& e) {
      return error_response(e);
    }
  }

  /// Legality preview used for the unit-move warning; changes nothing.
  ServiceResponse check_move(const std::string& id, const nlohmann::json& body) {
    auto game = find(id);
    if (!game) return unknown_game(id);
    std::lock_guard lock(game->mutex);
    if (!body.is_object() || !body.contains("poly") || !body.at("poly").is_string()) {
      return error_response(400, "invalid_argument", "poly (string) is required");
    }
    const auto c = game->session->check(body.at("poly").get<std::string>());
    return {200, {{"legal", c.legal}, {"immediate_loss", c.immediate_loss}, {"message", c.message}}};
  }

  ServiceResponse hint(const std::string& id) {
    auto game = find(id);
    if (!game) return unknown_game(id);
    std::lock_guard lock(game->mutex);
    auto& s = *game->session;
    if (s.over()) return error_response(409, "game_over", "game is over");
    const auto h = s.hint();
    if (!h) return {200, {{"winning", false}, {"hint", "position lost"}}};
    return {200, {{"winning", true}, {"hint", s.algebra().render(*h)}}};
  }

  ServiceResponse transcript(const std::string& id) {
    auto game = find(id);
    if (!game) return unknown_game(id);
    std::lock_guard lock(game->mutex);
    return {200, transcript_json(*game->session)};
  }

  nlohmann::json state_of(const std::string& id) { return get_game(id).body; }

 private:
  struct Game {
    std::mutex mutex;
    std::uint32_t field = 0;
    std::unique_ptr<PlaySession> session;
  };

  std::shared_ptr<Game> find(const std::string& id) {
    std::lock_guard lock(store_mutex_);
    auto it = games_.find(id);
    return it == games_.end() ? nullptr : it->second;
  }

  static ServiceResponse unknown_game(const std::string& id) {
    return error_response(404, "unknown_game", "no game with id " + id);
  }

  std::shared_ptr<Solver> solver_for(const std::string& ring, PrimeField F) {
    const auto key = ring + "|" + std::to_string(F.modulus());
    std::lock_guard lock(solver_mutex_);
    if (auto it = solvers_.find(key); it != solvers_.end()) return it->second;
    auto resolved = resolve_ring(catalog_, ring, F);
    auto solver = std::make_shared<Solver>(std::move(resolved.algebra));
    solver->win(IdealSubspace::zero(solver->algebra()));
    solvers_.emplace(key, solver);
    return solver;
  }

  static nlohmann::json engine_reply(PlaySession& s) {
    const auto m = s.best_move();
    s.apply_element(m.element, m.text);
    return {{"player", to_string(s.history().back().player)}, {"move", m.text}, {"winning", m.winning},
            {"resign", m.resign}};
  }

  static nlohmann::json state_json(const std::string& id, const Game& g) {
    const auto& s = *g.session;
    const auto& A = s.algebra();
    nlohmann::json j;
    j["game_id"] = id;
    j["ring_id"] = s.ring_id();
    j["field"] = g.field;
    j["presentation"] = A.description();
    j["engine_side"] = s.engine_side() ? nlohmann::json(to_string(*s.engine_side())) : nlohmann::json("none");
    const auto I = s.current_ideal();
    j["ideal_basis"] = render_basis(A, I);
    j["quotient_rank"] = A.rank() - I.dim();
    if (s.over()) {
      j["d_vector_of_quotient"] = nlohmann::json::array();
      j["status"] = "over";
      j["winner"] = to_string(*s.winner());
      j["turn"] = nullptr;
    } else {
      const auto Q = quotient_by(A, I).algebra;
      const auto m = local_radical(Q);
      j["d_vector_of_quotient"] = m ? nlohmann::json(d_vector(Q, *m)) : nlohmann::json(nullptr);
      j["status"] = "in_progress";
      j["winner"] = nullptr;
      j["turn"] = to_string(s.turn());
    }
    j["history"] = transcript_json(s);
    return j;
  }

  void snapshot(const std::string& id, const Game& g) const {
    if (!snapshot_dir_) return;
    std::filesystem::create_directories(*snapshot_dir_);
    std::ofstream out(*snapshot_dir_ / (id + ".json"));
    out << transcript_json(*g.session).dump(1) << "\n";
  }

  Catalog catalog_;
  std::optional<std::filesystem::path> snapshot_dir_;
  std::mutex store_mutex_;
  std::map<std::string, std::shared_ptr<Game>> games_;
  std::uint64_t next_id_ = 0;
  std::mutex solver_mutex_;
  std::map<std::string, std::shared_ptr<Solver>> solvers_;
};

}  // namespace ichomp
