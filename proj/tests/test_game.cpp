#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

#include "ichomp/catalog.hpp"
#include "ichomp/game.hpp"

using namespace ichomp;

namespace {

const Catalog& catalog() {
  static const Catalog c = Catalog::load();
  return c;
}

FiniteAlgebra entry(const char* id, std::uint32_t p) { return catalog().at(id).algebra(PrimeField(p)); }

/// Successor ideals by brute force: every element of A, closed under
/// multiplication by every basis element, deduplicated.
std::set<std::string> successor_oracle(const FiniteAlgebra& A, const IdealSubspace& I, bool& full) {
  std::set<std::string> out;
  full = false;
  for_each_vector(A.p(), A.rank(), [&](const Vec& a) {
    if (I.contains(A, a)) return true;
    std::vector<Vec> gens = I.basis();
    gens.push_back(a);
    auto S = Subspace::span(A.mod(), A.rank(), gens);
    while (true) {
      auto more = S.basis();
      for (const auto& v : S.basis()) {
        for (std::size_t i = 0; i < A.rank(); ++i) more.push_back(A.mul(v, A.basis_element(i)));
      }
      auto T = Subspace::span(A.mod(), A.rank(), more);
      if (T.dim() == S.dim()) break;
      S = std::move(T);
    }
    if (S.is_full()) {
      full = true;
    } else {
      out.insert(S.key());
    }
    return true;
  });
  return out;
}

/// Misère Chomp on an a-by-b board stored as non-increasing column heights.
/// Eating cell (i, j) cuts every column c >= i down to at most j. The player
/// who eats (0, 0) loses.
bool chomp_column_win(std::vector<unsigned> h, std::map<std::vector<unsigned>, bool>& memo) {
  if (auto it = memo.find(h); it != memo.end()) return it->second;
  bool win = false;
  for (std::size_t i = 0; i < h.size() && !win; ++i) {
    for (unsigned j = 0; j < h[i] && !win; ++j) {
      if (i == 0 && j == 0) continue;
      auto g = h;
      for (std::size_t c = i; c < g.size(); ++c) g[c] = std::min(g[c], j);
      if (!chomp_column_win(g, memo)) win = true;
    }
  }
  memo[h] = win;
  return win;
}

Player chomp_oracle(unsigned a, unsigned b) {
  std::map<std::vector<unsigned>, bool> memo;
  return chomp_column_win(std::vector<unsigned>(a, b), memo) ? Player::A : Player::B;
}

}  // namespace

TEST(Successors, R4MatchesBruteForce) {
  const auto A = entry("R_4", 2);
  const auto root = IdealSubspace::zero(A);
  const auto s = legal_successors(A, root);
  EXPECT_EQ(s.proper.size(), 3u);
  EXPECT_TRUE(s.full_reachable);
  bool full = false;
  const auto oracle = successor_oracle(A, root, full);
  EXPECT_TRUE(full);
  std::set<std::string> got;
  for (const auto& J : s.proper) {
    got.insert(J.ideal.key());
    EXPECT_EQ(J.ideal.dim(), 1u);
    EXPECT_TRUE(radical(A).contains(A, J.ideal));
  }
  EXPECT_EQ(got, oracle);
}

TEST(Successors, MatchBruteForceEverywhere) {
  for (const char* id : {"R_6", "R_12", "R_13"}) {
    for (std::uint32_t p : {2u, 3u}) {
      const auto A = entry(id, p);
      Solver solver(A);
      solver.win(IdealSubspace::zero(A));
      std::size_t checked = 0;
      for (const auto& [key, info] : solver.table()) {
        std::vector<std::uint8_t> flat(key.begin(), key.end() - 1);
        IdealSubspace I(Subspace::from_flat(A.mod(), A.rank(), std::move(flat)));
        bool full = false;
        const auto oracle = successor_oracle(A, I, full);
        std::set<std::string> got;
        for (const auto& J : solver.successors(I).proper) got.insert(J.ideal.key());
        EXPECT_EQ(got, oracle) << id << " F_" << p;
        if (++checked == 40) break;
      }
    }
  }
}

TEST(Successors, FieldAndMaximalIdeal) {
  const auto K = entry("R_1", 2);
  const auto s = legal_successors(K, IdealSubspace::zero(K));
  EXPECT_TRUE(s.proper.empty());
  EXPECT_TRUE(s.full_reachable);
  for (const char* id : {"R_4", "R_12", "R_21"}) {
    const auto A = entry(id, 3);
    EXPECT_TRUE(legal_successors(A, radical(A)).proper.empty()) << id;
  }
}

TEST(Solve, Examples) {
  const auto k = solve(entry("R_1", 2));
  EXPECT_EQ(k.winner, Player::B);
  EXPECT_TRUE(k.winning_first_moves.empty());

  const auto A = entry("R_2", 2);
  const auto r2 = solve(A);
  EXPECT_EQ(r2.winner, Player::A);
  ASSERT_EQ(r2.winning_first_move_strings.size(), 1u);
  EXPECT_EQ(r2.winning_first_move_strings[0], "x");

  EXPECT_EQ(solve(entry("R_4", 2)).winner, Player::B);
  EXPECT_EQ(solve(entry("R_13", 2)).winner, Player::B);
}

TEST(Solve, QuotientFormExamples) {
  EXPECT_EQ(solve_quotient_form(entry("R_4", 2)).winner, solve(entry("R_4", 2)).winner);
  EXPECT_EQ(solve_quotient_form(entry("R_8", 2)).winner, Player::A);
  EXPECT_EQ(solve_quotient_form(entry("R_1", 3)).winner, Player::B);
  for (const char* id : {"R_6", "R_7", "R_12", "R_13", "R_14"}) {
    const auto A = entry(id, 3);
    const auto a = solve(A);
    const auto b = solve_quotient_form(A);
    EXPECT_EQ(a.winner, b.winner) << id;
    EXPECT_EQ(a.winning_first_moves.size(), b.winning_first_moves.size()) << id;
  }
}

TEST(Solve, MisereTerminalPositionsAreLost) {
  for (const char* id : {"R_12", "R_21", "R_26"}) {
    const auto A = entry(id, 2);
    Solver s(A);
    s.win(IdealSubspace::zero(A));
    EXPECT_FALSE(s.win(radical(A))) << id;
    EXPECT_EQ(s.info(radical(A)).depth, 1u);
    const auto rep = check_consistency(s);
    EXPECT_EQ(rep.violations, 0u) << rep.first_violation;
    EXPECT_GT(rep.terminal_states, 0u);
  }
}

TEST(Solve, FullRingIsNotAPosition) {
  const auto A = entry("R_2", 3);
  Solver s(A);
  try {
    (void)s.info(IdealSubspace::full(A));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GameOver);
  }
}

TEST(Solve, WinningMovesAreScaleInvariant) {
  for (std::uint32_t p : {3u, 5u}) {
    const auto A = entry("R_6", p);
    Solver s(A);
    const auto root = IdealSubspace::zero(A);
    for (const auto& m : s.winning_moves(root)) {
      for (std::uint32_t c = 1; c < p; ++c) {
        EXPECT_TRUE(is_winning_move(s, root, A.scale(m.element, c)));
        EXPECT_EQ(ideal_add(A, root, A.scale(m.element, c)), m.ideal);
      }
    }
  }
}

TEST(Solve, LeastGeneratorGenerates) {
  const auto A = entry("R_21", 3);
  const auto root = IdealSubspace::zero(A);
  for (const auto& J : legal_successors(A, root).proper) {
    const auto g = least_generator(A, root, J.ideal);
    EXPECT_EQ(ideal_add(A, root, g), J.ideal);
    EXPECT_LE(g, J.element);
  }
}

TEST(MonomialChomp, MatchesColumnHeightOracle) {
  EXPECT_EQ(solve_monomial_restricted(1, 1, PrimeField(2)), Player::B);
  EXPECT_EQ(solve_monomial_restricted(2, 2, PrimeField(2)), Player::A);
  EXPECT_EQ(solve_monomial_restricted(3, 4, PrimeField(2)), Player::A);
  for (unsigned a = 1; a <= 4; ++a) {
    for (unsigned b = 1; b <= 4; ++b) {
      const auto expected = chomp_oracle(a, b);
      EXPECT_EQ(solve_monomial_restricted(a, b, PrimeField(3)), expected) << a << "x" << b;
      EXPECT_EQ(expected, (a == 1 && b == 1) ? Player::B : Player::A);
    }
  }
  EXPECT_THROW(solve_monomial_restricted(0, 2, PrimeField(2)), Error);
}

TEST(Play, EngineRepliesInR12) {
  auto solver = std::make_shared<Solver>(entry("R_12", 2));
  PlaySession s(solver, Player::B, "R_12");
  s.apply_move("x^2");
  ASSERT_TRUE(s.engine_to_move());
  const auto m = s.best_move();
  EXPECT_TRUE(m.winning);
  EXPECT_EQ(m.text, "y^2");
  s.apply_element(m.element, m.text);
  EXPECT_FALSE(solver->win(s.ideal()));
}

TEST(Play, R4EngineCanOnlyDelay) {
  auto solver = std::make_shared<Solver>(entry("R_4", 2));
  PlaySession s(solver, Player::A, "R_4");
  const auto m = s.best_move();
  EXPECT_FALSE(m.winning);
  EXPECT_FALSE(m.resign);
  EXPECT_FALSE(s.hint().has_value());
  EXPECT_FALSE(is_unit(s.algebra(), m.element));
}

TEST(Play, R4HumanLosesAfterEngineReply) {
  auto solver = std::make_shared<Solver>(entry("R_4", 2));
  PlaySession s(solver, Player::B, "R_4");
  s.apply_move("x");
  s.play_engine();
  EXPECT_EQ(s.ideal(), radical(s.algebra()));
  EXPECT_TRUE(legal_successors(s.algebra(), s.ideal()).proper.empty());
}

TEST(Play, R2EngineOpensWithX) {
  auto solver = std::make_shared<Solver>(entry("R_2", 2));
  PlaySession s(solver, Player::A, "R_2");
  const auto& rec = s.play_engine();
  EXPECT_EQ(rec.move, "x");
  EXPECT_EQ(rec.player, Player::A);
  const auto c = s.check("x+1");
  EXPECT_TRUE(c.legal);
  EXPECT_TRUE(c.immediate_loss);
}

TEST(Play, UnitLosesAndRepeatsAreIllegal) {
  auto solver = std::make_shared<Solver>(entry("R_4", 2));
  PlaySession s(solver, std::nullopt, "R_4");
  EXPECT_EQ(s.check("1").message, "unit: immediate loss");
  s.apply_move("x");
  EXPECT_EQ(s.check("x").message, "already in ideal");
  EXPECT_FALSE(s.check("x").legal);
  try {
    s.apply_move("x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IllegalMove);
  }
  EXPECT_EQ(s.turn(), Player::B);
  s.apply_move("1");
  EXPECT_TRUE(s.over());
  EXPECT_EQ(s.loser(), Player::B);
  EXPECT_EQ(s.winner(), Player::A);
  EXPECT_TRUE(s.current_ideal().is_full());
  EXPECT_THROW(s.apply_move("y"), Error);
}

TEST(Play, R17LinearMoveGivesALine) {
  auto solver = std::make_shared<Solver>(entry("R_17", 2));
  PlaySession s(solver, std::nullopt, "R_17");
  const auto& rec = s.apply_move("x+y");
  EXPECT_EQ(rec.result.dim(), 1u);
  EXPECT_FALSE(s.over());
}

TEST(Play, FieldForcesResignation) {
  auto solver = std::make_shared<Solver>(entry("R_1", 5));
  PlaySession s(solver, Player::A, "R_1");
  const auto m = s.best_move();
  EXPECT_TRUE(m.resign);
  s.apply_element(m.element, m.text);
  EXPECT_EQ(s.winner(), Player::B);
}

TEST(Play, ParseErrorsAreReported) {
  auto solver = std::make_shared<Solver>(entry("R_4", 3));
  PlaySession s(solver, std::nullopt);
  const auto c = s.check("x +* y");
  EXPECT_FALSE(c.legal);
  EXPECT_NE(c.message.find("position"), std::string::npos);
  EXPECT_THROW(s.apply_move("q"), Error);
}
