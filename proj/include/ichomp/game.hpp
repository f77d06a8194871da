#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ichomp/algebra.hpp"
#include "ichomp/catalog.hpp"
#include "ichomp/error.hpp"

namespace ichomp {

/// Label of a solved position for the player about to move. `depth` counts
/// the moves left under optimal play, the final losing move included: the
/// winner hurries, the loser delays.
struct StateInfo {
  bool win = false;
  std::uint32_t depth = 0;
};

/// One distinct result of moving from I. `element` generates it over I (not
/// canonical; see least_generator).
struct Successor {
  IdealSubspace ideal;
  AlgElement element;
};

struct Successors {
  std::vector<Successor> proper;
  /// Some move makes the ideal the whole algebra. Always true from a proper
  /// ideal (play 1), kept explicit so the full ring is never a stored state.
  bool full_reachable = false;
  std::size_t count() const { return proper.size() + (full_reachable ? 1 : 0); }
};

/// Enumerates moves from I, one per point of P(S/I) where S is the maximal
/// ideal when A is local (moves outside it are units) and A otherwise.
/// Scaling a move or adding an element of I does not change the result, so
/// this covers every legal move.
inline Successors legal_successors(const FiniteAlgebra& A, const IdealSubspace& I,
                                   const std::optional<IdealSubspace>& radical_if_local) {
  Successors out;
  out.full_reachable = true;
  std::vector<Vec> domain;
  if (radical_if_local) {
    domain = radical_if_local->basis();
  } else {
    for (std::size_t i = 0; i < A.rank(); ++i) domain.push_back(A.basis_element(i));
  }
  // complement of I inside span(domain): reduce mod I and re-echelon
  std::vector<Vec> reduced;
  for (auto& v : domain) reduced.push_back(I.span().reduce(A.mod(), v));
  const auto comp = Subspace::span(A.mod(), A.rank(), reduced).basis();
  std::unordered_set<std::string> seen;
  for_each_projective(A.p(), comp.size(), [&](const Vec& c) {
    AlgElement a = A.zero();
    for (std::size_t i = 0; i < comp.size(); ++i) A.mod().axpy(a, c[i], comp[i]);
    auto J = ideal_add(A, I, a);
    if (J.is_full()) return true;
    if (seen.insert(J.key()).second) out.proper.push_back({std::move(J), std::move(a)});
    return true;
  });
  return out;
}

inline Successors legal_successors(const FiniteAlgebra& A, const IdealSubspace& I) {
  return legal_successors(A, I, local_radical(A));
}

/// Lexicographically least a (coordinate 0 most significant) with
/// I + (a) = J. Elements of J in RREF coordinates enumerate in the same
/// lexicographic order as their coordinate vectors, so the first hit wins.
inline AlgElement least_generator(const FiniteAlgebra& A, const IdealSubspace& I, const IdealSubspace& J) {
  const auto rows = J.basis();
  AlgElement best;
  for_each_vector(A.p(), rows.size(), [&](const Vec& c) {
    AlgElement a = A.zero();
    for (std::size_t i = 0; i < rows.size(); ++i) A.mod().axpy(a, c[i], rows[i]);
    if (ideal_add(A, I, a) == J) {
      best = std::move(a);
      return false;
    }
    return true;
  });
  return best;
}

/// Memoized retrograde solver over the ideal lattice. Every reachable
/// proper ideal gets a label; the full ring is the losing sentinel.
class Solver {
 public:
  explicit Solver(FiniteAlgebra A)
      : A_(std::make_shared<const FiniteAlgebra>(std::move(A))), radical_(local_radical(*A_)) {}
  explicit Solver(std::shared_ptr<const FiniteAlgebra> A) : A_(std::move(A)), radical_(local_radical(*A_)) {}

  const FiniteAlgebra& algebra() const noexcept { return *A_; }
  std::shared_ptr<const FiniteAlgebra> algebra_ptr() const noexcept { return A_; }
  const std::optional<IdealSubspace>& local_maximal_ideal() const noexcept { return radical_; }

  Successors successors(const IdealSubspace& I) const { return legal_successors(*A_, I, radical_); }

  StateInfo info(const IdealSubspace& I) {
    if (I.is_full()) throw Error(ErrorCode::GameOver, "the full ring is not a position");
    if (auto it = memo_.find(I.key()); it != memo_.end()) return it->second;
    const auto succ = successors(I);
    transitions_ += succ.count();
    StateInfo s;
    if (succ.proper.empty()) {
      s = {false, 1};
    } else {
      std::uint32_t best_win = std::numeric_limits<std::uint32_t>::max();
      std::uint32_t longest = 0;
      for (const auto& J : succ.proper) {
        const auto child = info(J.ideal);
        if (!child.win) best_win = std::min(best_win, child.depth);
        longest = std::max(longest, child.depth);
      }
      s = best_win != std::numeric_limits<std::uint32_t>::max() ? StateInfo{true, 1 + best_win}
                                                                : StateInfo{false, 1 + longest};
    }
    memo_.emplace(I.key(), s);
    return s;
  }
  bool win(const IdealSubspace& I) { return info(I).win; }

  /// Distinct successors J of I with win(J) = false, each with its least
  /// generating move.
  std::vector<Successor> winning_moves(const IdealSubspace& I) {
    std::vector<Successor> out;
    for (auto& J : successors(I).proper) {
      if (!info(J.ideal).win) out.push_back({J.ideal, least_generator(*A_, I, J.ideal)});
    }
    std::sort(out.begin(), out.end(), [](const Successor& a, const Successor& b) { return a.element < b.element; });
    return out;
  }

  std::size_t state_count() const noexcept { return memo_.size(); }
  std::uint64_t transition_count() const noexcept { return transitions_; }
  const std::unordered_map<std::string, StateInfo>& table() const noexcept { return memo_; }

 private:
  std::shared_ptr<const FiniteAlgebra> A_;
  std::optional<IdealSubspace> radical_;
  std::unordered_map<std::string, StateInfo> memo_;
  std::uint64_t transitions_ = 0;
};

struct SolveReport {
  std::string ring_id;
  std::uint32_t field = 0;
  Player winner = Player::B;
  std::vector<AlgElement> winning_first_moves;
  std::vector<std::string> winning_first_move_strings;
  std::size_t states = 0;
  std::uint64_t transitions = 0;
  double ms = 0;
};

inline SolveReport solve(Solver& solver, std::string ring_id = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& A = solver.algebra();
  const auto root = IdealSubspace::zero(A);
  SolveReport r;
  r.ring_id = std::move(ring_id);
  r.field = A.p();
  r.winner = solver.win(root) ? Player::A : Player::B;
  for (auto& m : solver.winning_moves(root)) {
    r.winning_first_move_strings.push_back(A.render(m.element));
    r.winning_first_moves.push_back(std::move(m.element));
  }
  r.states = solver.state_count();
  r.transitions = solver.transition_count();
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline SolveReport solve(const FiniteAlgebra& A, std::string ring_id = {}) {
  Solver s(A);
  return solve(s, std::move(ring_id));
}

/// True iff playing a from I reaches a position lost for the opponent.
inline bool is_winning_move(Solver& solver, const IdealSubspace& I, const AlgElement& a) {
  const auto J = ideal_add(solver.algebra(), I, a);
  if (J == I || J.is_full()) return false;
  return !solver.win(J);
}

namespace detail {

/// The quotient game: a position is an algebra Q = A/K, a move picks a
/// nonzero q in Q and passes Q/(q) on; whoever produces the zero ring loses.
/// Q's structure constants are recomputed at every step; positions are
/// memoized by K expressed in A's coordinates.
class QuotientSolver {
 public:
  explicit QuotientSolver(const FiniteAlgebra& A) : A_(A) {}

  bool win(const FiniteAlgebra& Q, const std::vector<std::size_t>& cols, const IdealSubspace& K) {
    if (auto it = memo_.find(K.key()); it != memo_.end()) return it->second;
    bool w = false;
    std::unordered_set<std::string> seen;
    for_each_projective(Q.p(), Q.rank(), [&](const Vec& q) {
      const auto principal = principal_ideal(Q, q);
      if (principal.is_full()) {
        ++transitions_;
        return true;  // reaches the zero ring
      }
      std::vector<Vec> lifted;
      for (const auto& v : principal.basis()) {
        Vec up(A_.rank(), 0);
        for (std::size_t i = 0; i < cols.size(); ++i) up[cols[i]] = v[i];
        lifted.push_back(std::move(up));
      }
      IdealSubspace K2(K.span().with(A_.mod(), lifted));
      if (!seen.insert(K2.key()).second) return true;
      ++transitions_;
      const auto next = quotient_by(Q, principal);
      std::vector<std::size_t> cols2;
      for (auto k : next.kept) cols2.push_back(cols[k]);
      if (!win(next.algebra, cols2, K2)) w = true;
      return true;
    });
    memo_.emplace(K.key(), w);
    return w;
  }

  std::size_t states() const noexcept { return memo_.size(); }
  std::uint64_t transitions() const noexcept { return transitions_; }

 private:
  const FiniteAlgebra& A_;
  std::unordered_map<std::string, bool> memo_;
  std::uint64_t transitions_ = 0;
};

}  // namespace detail

/// Same game solved in quotient form; winners must agree with solve().
/// Winning first moves are the least nonzero q (up to the same dedup as
/// solve) whose quotient is lost for the next player.
inline SolveReport solve_quotient_form(const FiniteAlgebra& A, std::string ring_id = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::QuotientSolver qs(A);
  std::vector<std::size_t> cols(A.rank());
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  const auto zero = IdealSubspace::zero(A);
  SolveReport r;
  r.ring_id = std::move(ring_id);
  r.field = A.p();
  r.winner = qs.win(A, cols, zero) ? Player::A : Player::B;
  std::unordered_set<std::string> seen;
  for_each_vector(A.p(), A.rank(), [&](const Vec& a) {
    if (std::all_of(a.begin(), a.end(), [](auto x) { return x == 0; })) return true;
    const auto principal = principal_ideal(A, a);
    if (principal.is_full() || !seen.insert(principal.key()).second) return true;
    const auto next = quotient_by(A, principal);
    if (!qs.win(next.algebra, next.kept, principal)) {
      r.winning_first_moves.push_back(a);
      r.winning_first_move_strings.push_back(A.render(a));
    }
    return true;
  });
  r.states = qs.states();
  r.transitions = qs.transitions();
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// The game on K[x,y]/(x^a, y^b) where only monomials may be played.
inline Player solve_monomial_restricted(unsigned a, unsigned b, PrimeField field) {
  if (a == 0 || b == 0) throw Error(ErrorCode::InvalidArgument, "board dimensions must be positive");
  const auto pres = make_presentation(field, {"x", "y"},
                                      {"x^" + std::to_string(a), "y^" + std::to_string(b)});
  const auto A = from_presentation(pres);
  std::vector<AlgElement> moves;
  for (std::size_t i = 0; i < A.rank(); ++i) moves.push_back(A.basis_element(i));
  std::unordered_map<std::string, bool> memo;
  std::function<bool(const IdealSubspace&)> win = [&](const IdealSubspace& I) {
    if (auto it = memo.find(I.key()); it != memo.end()) return it->second;
    bool w = false;
    for (const auto& m : moves) {
      if (I.contains(A, m)) continue;
      const auto J = ideal_add(A, I, m);
      if (J.is_full()) continue;
      if (!win(J)) {
        w = true;
        break;
      }
    }
    memo.emplace(I.key(), w);
    return w;
  };
  return win(IdealSubspace::zero(A)) ? Player::A : Player::B;
}

struct ConsistencyReport {
  std::size_t states_checked = 0;
  std::size_t violations = 0;
  /// Positions whose only move is into the full ring, all labeled lost.
  std::size_t terminal_states = 0;
  std::string first_violation;
};

/// Re-derives every label in the solver's table from its successors'
/// labels: win iff some successor is lost, and terminal positions lost.
inline ConsistencyReport check_consistency(Solver& solver) {
  ConsistencyReport rep;
  std::vector<std::string> keys;
  for (const auto& [k, v] : solver.table()) keys.push_back(k);
  const auto& A = solver.algebra();
  for (const auto& key : keys) {
    const std::size_t n = A.rank();
    std::vector<std::uint8_t> flat(key.begin(), key.end() - 1);
    IdealSubspace I(Subspace::from_flat(A.mod(), n, std::move(flat)));
    const bool label = solver.table().at(key).win;
    const auto succ = solver.successors(I);
    bool has_losing = false;
    for (const auto& J : succ.proper) {
      auto it = solver.table().find(J.ideal.key());
      if (it == solver.table().end()) {
        ++rep.violations;
        if (rep.first_violation.empty()) rep.first_violation = "unlabeled successor";
        continue;
      }
      if (!it->second.win) has_losing = true;
    }
    if (succ.proper.empty()) {
      ++rep.terminal_states;
      if (label) {
        ++rep.violations;
        if (rep.first_violation.empty()) rep.first_violation = "terminal position labeled won";
      }
    }
    if (label != has_losing) {
      ++rep.violations;
      if (rep.first_violation.empty()) rep.first_violation = "label disagrees with successors";
    }
    ++rep.states_checked;
  }
  return rep;
}

struct MoveRecord {
  Player player;
  std::string move;
  AlgElement element;
  IdealSubspace result;
};

struct MoveCheck {
  bool legal = false;
  bool immediate_loss = false;
  std::string message;
};

struct EngineMove {
  AlgElement element;
  std::string text;
  /// The position was won for the engine and this move keeps it so.
  bool winning = false;
  /// Every legal move makes the ideal the whole ring.
  bool resign = false;
};

enum class SessionStatus { InProgress, Over };

/// An interactive game: A moves first, optionally one side is the engine.
class PlaySession {
 public:
  PlaySession(std::shared_ptr<Solver> solver, std::optional<Player> engine_side, std::string ring_id = {})
      : solver_(std::move(solver)),
        engine_(engine_side),
        ring_id_(std::move(ring_id)),
        ideal_(IdealSubspace::zero(solver_->algebra())) {}

  const FiniteAlgebra& algebra() const { return solver_->algebra(); }
  Solver& solver() { return *solver_; }
  const std::string& ring_id() const noexcept { return ring_id_; }
  const IdealSubspace& ideal() const noexcept { return ideal_; }
  Player turn() const noexcept { return turn_; }
  std::optional<Player> engine_side() const noexcept { return engine_; }
  bool over() const noexcept { return loser_.has_value(); }
  std::optional<Player> loser() const noexcept { return loser_; }
  std::optional<Player> winner() const {
    if (!loser_) return std::nullopt;
    return other(*loser_);
  }
  const std::vector<MoveRecord>& history() const noexcept { return history_; }
  bool engine_to_move() const noexcept { return !over() && engine_ && *engine_ == turn_; }

  /// The ideal as it stands after `moves` (full ring once the game is over).
  IdealSubspace current_ideal() const { return over() ? IdealSubspace::full(algebra()) : ideal_; }

  MoveCheck check(std::string_view text) const {
    MoveCheck c;
    if (over()) {
      c.message = "game is over";
      return c;
    }
    AlgElement a;
    try {
      a = algebra().parse_element(text);
    } catch (const Error& e) {
      c.message = e.what();
      return c;
    }
    return check(a);
  }

  MoveCheck check(const AlgElement& a) const {
    MoveCheck c;
    if (over()) {
      c.message = "game is over";
    } else if (ideal_.contains(algebra(), a)) {
      c.message = "already in ideal";
    } else {
      c.legal = true;
      c.immediate_loss = ideal_add(algebra(), ideal_, a).is_full();
      c.message = c.immediate_loss ? (is_unit(algebra(), a) ? "unit: immediate loss" : "immediate loss: ideal becomes the whole ring")
                                   : "ok";
    }
    return c;
  }

  /// Plays a move for whoever is to move. Throws IllegalMove for elements of
  /// the current ideal and GameOver after the end.
  const MoveRecord& apply_move(std::string_view text) {
    if (over()) throw Error(ErrorCode::GameOver, "game is over");
    return apply_element(algebra().parse_element(text), std::string(text));
  }

  const MoveRecord& apply_element(const AlgElement& a, std::string text = {}) {
    if (over()) throw Error(ErrorCode::GameOver, "game is over");
    if (a.size() != algebra().rank()) throw Error(ErrorCode::InvalidArgument, "element has wrong length");
    if (ideal_.contains(algebra(), a)) {
      throw Error(ErrorCode::IllegalMove, "already in ideal: " + algebra().render(a));
    }
    auto J = ideal_add(algebra(), ideal_, a);
    if (text.empty()) text = algebra().render(a);
    history_.push_back({turn_, std::move(text), a, J});
    if (J.is_full()) {
      loser_ = turn_;
    } else {
      ideal_ = std::move(J);
    }
    turn_ = other(turn_);
    return history_.back();
  }

  /// A winning move when one exists (shortest win), otherwise the move that
  /// keeps the game going longest; resign when only the full ring is left.
  EngineMove best_move() {
    if (over()) throw Error(ErrorCode::GameOver, "game is over");
    const auto& A = algebra();
    const auto succ = solver_->successors(ideal_);
    EngineMove m;
    if (succ.proper.empty()) {
      m.element = A.unit();
      m.resign = true;
    } else {
      const Successor* pick = nullptr;
      StateInfo pick_info;
      for (const auto& J : succ.proper) {
        const auto s = solver_->info(J.ideal);
        const bool better = pick == nullptr ||
                            (!s.win && pick_info.win) ||
                            (!s.win && !pick_info.win && s.depth < pick_info.depth) ||
                            (s.win && pick_info.win && s.depth > pick_info.depth);
        if (better) {
          pick = &J;
          pick_info = s;
        }
      }
      m.winning = !pick_info.win;
      m.element = least_generator(A, ideal_, pick->ideal);
    }
    m.text = A.render(m.element);
    return m;
  }

  /// The solver's move for the side to move, if the position is won.
  std::optional<AlgElement> hint() {
    if (over()) return std::nullopt;
    auto m = best_move();
    if (!m.winning) return std::nullopt;
    return m.element;
  }

  const MoveRecord& play_engine() {
    auto m = best_move();
    return apply_element(m.element, m.text);
  }

 private:
  std::shared_ptr<Solver> solver_;
  std::optional<Player> engine_;
  std::string ring_id_;
  IdealSubspace ideal_;
  Player turn_ = Player::A;
  std::optional<Player> loser_;
  std::vector<MoveRecord> history_;
};

}  // namespace ichomp
