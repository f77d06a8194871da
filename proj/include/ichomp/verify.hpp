#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ichomp/algebra.hpp"
#include "ichomp/catalog.hpp"
#include "ichomp/game.hpp"
#include "ichomp/henson.hpp"
#include "ichomp/iso.hpp"

namespace ichomp {

enum class VerifyStatus { Pass, Fail, Undecided };

inline const char* to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::Pass: return "pass";
    case VerifyStatus::Fail: return "fail";
    case VerifyStatus::Undecided: return "undecided";
  }
  return "?";
}

struct VerificationOutcome {
  std::string id;
  VerifyStatus status = VerifyStatus::Fail;
  std::string details;
};

inline VerificationOutcome outcome(std::string id, bool ok, std::string details) {
  return {std::move(id), ok ? VerifyStatus::Pass : VerifyStatus::Fail, std::move(details)};
}

inline std::string field_tag(std::uint32_t p) { return "F_" + std::to_string(p); }

inline std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

/// Solvers shared across suites so each (ring, field) is solved once.
class SolverCache {
 public:
  std::shared_ptr<Solver> get(const CatalogEntry& e, PrimeField F) {
    const auto key = e.id + "/" + std::to_string(F.modulus());
    auto& slot = cache_[key];
    if (!slot) slot = std::make_shared<Solver>(e.algebra(F));
    return slot;
  }

 private:
  std::unordered_map<std::string, std::shared_ptr<Solver>> cache_;
};

/// Solver winner against the Win column for every applicable entry.
inline std::vector<VerificationOutcome> verify_table1(const Catalog& cat, std::uint32_t p, SolverCache& cache) {
  std::vector<VerificationOutcome> out;
  const PrimeField F(p);
  for (const auto& e : cat.entries_for(p)) {
    auto solver = cache.get(e, F);
    const auto r = solve(*solver, e.id);
    std::ostringstream d;
    d << "winner " << to_string(r.winner) << ", expected " << to_string(e.expected_winner) << ", states " << r.states;
    out.push_back(outcome("table1/" + e.id + "/" + field_tag(p), r.winner == e.expected_winner, d.str()));
  }
  return out;
}

/// Computed rank, d-vector, locality and the algebra axioms.
inline std::vector<VerificationOutcome> verify_metadata(const Catalog& cat, std::uint32_t p) {
  std::vector<VerificationOutcome> out;
  const PrimeField F(p);
  for (const auto& e : cat.entries_for(p)) {
    const auto A = e.algebra(F);
    std::string why;
    bool ok = true;
    if (auto bad = A.check_axioms()) {
      ok = false;
      why = *bad;
    } else if (!is_local(A)) {
      ok = false;
      why = "not local";
    } else {
      const auto d = d_vector(A);
      ok = A.rank() == e.n && d == e.d;
      why = "rank " + std::to_string(A.rank()) + " d " + join_sizes(d) + ", expected rank " + std::to_string(e.n) +
            " d " + join_sizes(e.d);
    }
    out.push_back(outcome("metadata/" + e.id + "/" + field_tag(p), ok, why));
  }
  return out;
}

/// Each reduction row: the quotient is isomorphic to the target and the move
/// is a winning first move.
inline std::vector<VerificationOutcome> verify_table2(const Catalog& cat, std::uint32_t p, SolverCache& cache,
                                                      const IsoOptions& iso = {}) {
  std::vector<VerificationOutcome> out;
  const PrimeField F(p);
  for (const auto& row : cat.reductions_for(p)) {
    const auto id = "table2/" + row.source + "/" + field_tag(p);
    const auto* target = cat.find(row.target);
    if (target == nullptr || !target->applies_to(p)) {
      out.push_back(outcome(id, false, "target " + row.target + " missing for this characteristic"));
      continue;
    }
    auto solver = cache.get(cat.at(row.source), F);
    const auto& A = solver->algebra();
    const auto a = A.parse_element(row.move);
    const auto J = principal_ideal(A, a);
    if (J.is_zero() || J.is_full()) {
      out.push_back(outcome(id, false, "move " + row.move + " is zero or a unit"));
      continue;
    }
    const auto Q = quotient_by(A, J).algebra;
    const auto T = target->algebra(F);
    const auto iso_result = is_isomorphic(Q, T, iso);
    const bool iso_ok = iso_result.outcome == IsoOutcome::Yes && iso_result.witness &&
                        check_witness(Q, T, *iso_result.witness);
    const bool winning = is_winning_move(*solver, IdealSubspace::zero(A), a);
    std::ostringstream d;
    d << row.source << " / (" << row.move << ") ~ " << row.target << ": " << to_string(iso_result.outcome) << " ["
      << iso_result.stage << "]; move " << (winning ? "is" : "is NOT") << " winning";
    VerificationOutcome o = outcome(id, iso_ok && winning, d.str());
    if (iso_result.outcome == IsoOutcome::Undecided && winning) o.status = VerifyStatus::Undecided;
    out.push_back(std::move(o));
  }
  return out;
}

/// The explicit maps between K[y,z]/(y,z)^2 and K[x,y,z]/((x,y,z)^2 + (x+y)).
inline std::vector<VerificationOutcome> verify_iso_lemma(std::uint32_t p) {
  std::vector<VerificationOutcome> out;
  const PrimeField F(p);
  const auto small = parse_presentation("K[y,z]/(y,z)^2", F);
  const auto big = parse_presentation("K[x,y,z]/(x,y,z)^2 + (x+y)", F);
  std::string why;
  const bool explicit_ok = verify_explicit_iso(small, big, {"y", "z"}, {"-y", "y", "z"}, &why);
  out.push_back(outcome("iso/explicit-maps/" + field_tag(p), explicit_ok, explicit_ok ? "phi, psi mutually inverse" : why));

  // x -> y kills x + y only when 2 = 0
  std::string why2;
  const bool wrong = verify_explicit_iso(small, big, {"y", "z"}, {"y", "y", "z"}, &why2);
  const bool expect_wrong = p == 2;
  out.push_back(outcome("iso/wrong-psi/" + field_tag(p), wrong == expect_wrong,
                        std::string("x->y substitution ") + (wrong ? "accepted" : "rejected: " + why2)));

  const auto r = is_isomorphic(from_presentation(small), from_presentation(big));
  out.push_back(outcome("iso/search/" + field_tag(p), r.outcome == IsoOutcome::Yes,
                        std::string(to_string(r.outcome)) + " [" + r.stage + "] " + r.detail));
  return out;
}

/// Reflexivity, symmetry, and pairwise non-isomorphism of distinct entries
/// of equal rank; the deciding stage is part of each outcome.
inline std::vector<VerificationOutcome> verify_classes(const Catalog& cat, std::uint32_t p, const IsoOptions& iso = {}) {
  std::vector<VerificationOutcome> out;
  const PrimeField F(p);
  const auto entries = cat.entries_for(p);
  std::vector<FiniteAlgebra> algs;
  for (const auto& e : entries) algs.push_back(e.algebra(F));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto r = is_isomorphic(algs[i], algs[i], iso);
    const bool ok = r.outcome == IsoOutcome::Yes && r.witness && check_witness(algs[i], algs[i], *r.witness);
    out.push_back(outcome("classes/" + entries[i].id + "~" + entries[i].id + "/" + field_tag(p), ok,
                          std::string(to_string(r.outcome)) + " [" + r.stage + "]"));
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      if (algs[i].rank() != algs[j].rank()) continue;
      const auto r = is_isomorphic(algs[i], algs[j], iso);
      const auto back = is_isomorphic(algs[j], algs[i], iso);
      VerificationOutcome o = outcome("classes/" + entries[i].id + "!~" + entries[j].id + "/" + field_tag(p),
                                      r.outcome == IsoOutcome::No && back.outcome == IsoOutcome::No,
                                      std::string(to_string(r.outcome)) + " [" + r.stage + "] " + r.detail);
      if (r.outcome == IsoOutcome::Undecided || back.outcome == IsoOutcome::Undecided) o.status = VerifyStatus::Undecided;
      if (r.outcome != back.outcome) {
        o.status = VerifyStatus::Fail;
        o.details += "; asymmetric: reverse gave " + std::string(to_string(back.outcome));
      }
      out.push_back(std::move(o));
    }
  }
  return out;
}

/// Ideal form and quotient form agree on winner and on the set of winning
/// first ideals, for entries of rank <= max_rank.
inline std::vector<VerificationOutcome> verify_equivalence(const Catalog& cat, std::uint32_t p, SolverCache& cache,
                                                           std::size_t max_rank = 4) {
  std::vector<VerificationOutcome> out;
  const PrimeField F(p);
  for (const auto& e : cat.entries_for(p)) {
    if (e.n > max_rank) continue;
    auto solver = cache.get(e, F);
    const auto& A = solver->algebra();
    const auto ideal_form = solve(*solver, e.id);
    const auto quotient_form = solve_quotient_form(A, e.id);
    std::set<std::string> a;
    std::set<std::string> b;
    for (const auto& m : ideal_form.winning_first_moves) a.insert(principal_ideal(A, m).key());
    for (const auto& m : quotient_form.winning_first_moves) b.insert(principal_ideal(A, m).key());
    const bool ok = ideal_form.winner == quotient_form.winner && a == b;
    out.push_back(outcome("equivalence/" + e.id + "/" + field_tag(p), ok,
                          std::string("ideal form ") + to_string(ideal_form.winner) + ", quotient form " +
                              to_string(quotient_form.winner) + ", winning first ideals " +
                              std::to_string(a.size()) + " vs " + std::to_string(b.size())));
  }
  return out;
}

/// The opening move built from the factors: (a_W, 1) or (1, b_W) when a
/// factor is a first-player win with winning move a_W, else (0, 1).
inline AlgElement product_opening(const FiniteAlgebra& A, const SolveReport& ra, const FiniteAlgebra& B,
                                  const SolveReport& rb) {
  if (ra.winner == Player::A) return pair_element(ra.winning_first_moves.front(), B.unit());
  if (rb.winner == Player::A) return pair_element(A.unit(), rb.winning_first_moves.front());
  return pair_element(A.zero(), B.unit());
}

/// Products of two entries with total rank <= max_rank: first player wins,
/// and the constructed opening is a winning move.
inline std::vector<VerificationOutcome> verify_products(const Catalog& cat, std::uint32_t p, SolverCache& cache,
                                                        std::size_t max_rank = 6) {
  std::vector<VerificationOutcome> out;
  const PrimeField F(p);
  const auto entries = cat.entries_for(p);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i; j < entries.size(); ++j) {
      if (entries[i].n + entries[j].n > max_rank) continue;
      auto si = cache.get(entries[i], F);
      auto sj = cache.get(entries[j], F);
      const auto ri = solve(*si);
      const auto rj = solve(*sj);
      const auto P = direct_product(si->algebra(), sj->algebra());
      Solver sp(P);
      const auto rp = solve(sp);
      const auto move = product_opening(si->algebra(), ri, sj->algebra(), rj);
      const bool constructed = is_winning_move(sp, IdealSubspace::zero(P), move);
      out.push_back(outcome("products/" + entries[i].id + "x" + entries[j].id + "/" + field_tag(p),
                            rp.winner == Player::A && constructed && !is_local(P),
                            std::string("winner ") + to_string(rp.winner) + ", constructed opening " +
                                P.render(move) + (constructed ? " wins" : " does NOT win")));
    }
  }
  return out;
}

/// Classical Chomp on an a-by-b board: cell (i,j) stands for x^i y^j,
/// taking a cell removes every cell weakly above and to the right, and
/// taking (0,0) loses.
inline Player classical_chomp_winner(unsigned a, unsigned b) {
  const unsigned cells = a * b;
  std::unordered_map<std::uint32_t, bool> memo;
  std::function<bool(std::uint32_t)> win = [&](std::uint32_t board) {
    if (board == 1u) return false;
    if (auto it = memo.find(board); it != memo.end()) return it->second;
    bool w = false;
    for (unsigned c = 1; c < cells && !w; ++c) {
      if (!(board >> c & 1u)) continue;
      const unsigned ci = c / b;
      const unsigned cj = c % b;
      std::uint32_t next = board;
      for (unsigned i = ci; i < a; ++i) {
        for (unsigned j = cj; j < b; ++j) next &= ~(1u << (i * b + j));
      }
      if (!win(next)) w = true;
    }
    memo.emplace(board, w);
    return w;
  };
  return win((cells == 32 ? 0u : (1u << cells)) - 1u) ? Player::A : Player::B;
}

inline std::vector<VerificationOutcome> verify_chomp(std::uint32_t p, unsigned max_side = 4) {
  std::vector<VerificationOutcome> out;
  const PrimeField F(p);
  for (unsigned a = 1; a <= max_side; ++a) {
    for (unsigned b = 1; b <= max_side; ++b) {
      const auto algebraic = solve_monomial_restricted(a, b, F);
      const auto classical = classical_chomp_winner(a, b);
      const bool expected_a = !(a == 1 && b == 1);
      out.push_back(outcome("chomp/" + std::to_string(a) + "x" + std::to_string(b) + "/" + field_tag(p),
                            algebraic == classical && (algebraic == Player::A) == expected_a,
                            std::string("monomial game ") + to_string(algebraic) + ", classical " +
                                to_string(classical)));
    }
  }
  return out;
}

/// f = (y-b)^s u(y) + x (y-b)^t v(y) with u, v nonvanishing at b.
inline Polynomial planted_common_root(const PolyRingPtr& ring, std::mt19937& rng) {
  const auto p = ring->p();
  std::uniform_int_distribution<std::uint32_t> coeff(0, p - 1);
  std::uniform_int_distribution<unsigned> mult(1, 3);
  std::uniform_int_distribution<unsigned> deg(0, 2);
  const auto X = Polynomial::variable(ring, 0);
  const auto Y = Polynomial::variable(ring, 1);
  const std::uint32_t b = coeff(rng);
  auto unit_at_b = [&] {
    while (true) {
      Polynomial u = Polynomial::constant(ring, 0);
      const auto d = deg(rng);
      for (unsigned i = 0; i <= d; ++i) u = u + Y.pow(i).scaled(coeff(rng));
      const auto at_b = u.substitute({X, Polynomial::constant(ring, b)});
      if (!at_b.is_zero()) return u;
    }
  };
  const auto yb = Y - Polynomial::constant(ring, b);
  return yb.pow(mult(rng)) * unit_at_b() + X * yb.pow(mult(rng)) * unit_at_b();
}

inline std::vector<VerificationOutcome> verify_henson(const std::vector<std::uint32_t>& primes) {
  std::vector<VerificationOutcome> out;
  std::vector<std::uint32_t> fields = primes;
  if (std::find(fields.begin(), fields.end(), 5u) == fields.end()) fields.push_back(5);
  for (auto p : fields) {
    if (p < 3) continue;
    out.push_back(outcome("henson/example-game/" + field_tag(p), verify_example_game(p), "x^2, x(y-1)+(y-2), y-2"));
    const bool mutated = verify_example_game(p, "y-1");
    out.push_back(outcome("henson/mutated-response/" + field_tag(p), !mutated,
                          mutated ? "response y-1 accepted" : "response y-1 rejected"));
  }

  const auto ring5 = PolyRing::make(PrimeField(5), {"x", "y"});
  std::mt19937 rng(20240601);
  std::size_t good = 0;
  std::string first_bad;
  constexpr std::size_t kSamples = 100;
  for (std::size_t i = 0; i < kSamples; ++i) {
    const auto f = planted_common_root(ring5, rng);
    const auto r = respond_common_root(f);
    bool ok = false;
    if (r) {
      const auto X = Polynomial::variable(ring5, 0);
      const PolyIdeal result(ring5, {X * X, f, r->move});
      const auto w = is_special(result);
      const PolyIdeal witness_ideal(ring5, {X * X, detail::y_minus_b_pow(ring5, r->witness.b, r->witness.k),
                                            X * detail::y_minus_b_pow(ring5, r->witness.b, r->witness.k - 1)});
      ok = w.has_value() && ideal_equal(result, witness_ideal) && !PolyIdeal(ring5, {X * X, f}).contains(r->move);
    }
    if (ok) {
      ++good;
    } else if (first_bad.empty()) {
      first_bad = f.to_string();
    }
  }
  out.push_back(outcome("henson/common-root-random/F_5", good == kSamples,
                        std::to_string(good) + "/" + std::to_string(kSamples) + " responses special" +
                            (first_bad.empty() ? "" : "; first failure f = " + first_bad)));

  for (const auto& ex : henson_condition_examples()) {
    out.push_back(outcome("henson/condition/" + ex.ring, ex.checked,
                          "witness " + ex.witness + ", " + std::to_string(ex.samples) + " sampled ideals principal"));
  }
  return out;
}

/// Every label in every solved table re-derives from its successors'.
inline std::vector<VerificationOutcome> verify_consistency(const Catalog& cat, std::uint32_t p, SolverCache& cache) {
  std::vector<VerificationOutcome> out;
  const PrimeField F(p);
  for (const auto& e : cat.entries_for(p)) {
    auto solver = cache.get(e, F);
    solve(*solver, e.id);
    const auto rep = check_consistency(*solver);
    out.push_back(outcome("consistency/" + e.id + "/" + field_tag(p), rep.violations == 0,
                          std::to_string(rep.states_checked) + " states, " + std::to_string(rep.terminal_states) +
                              " terminal, " + std::to_string(rep.violations) + " violations" +
                              (rep.first_violation.empty() ? "" : " (" + rep.first_violation + ")")));
  }
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"table1",      "metadata", "table2", "iso",  "classes",
                                              "equivalence", "products", "henson", "chomp", "consistency"};
  return names;
}

inline std::vector<VerificationOutcome> run_suite(const std::string& suite, const Catalog& cat,
                                                  const std::vector<std::uint32_t>& primes) {
  SolverCache cache;
  std::vector<VerificationOutcome> out;
  auto append = [&](std::vector<VerificationOutcome> v) { out.insert(out.end(), v.begin(), v.end()); };
  if (suite == "all") {
    for (const auto& s : suite_names()) append(run_suite(s, cat, primes));
    return out;
  }
  if (suite == "henson") return verify_henson(primes);
  bool known = false;
  for (const auto& s : suite_names()) known = known || s == suite;
  if (!known) throw Error(ErrorCode::InvalidArgument, "unknown suite " + suite);
  for (auto p : primes) {
    if (!PrimeField::is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (suite == "table1") append(verify_table1(cat, p, cache));
    if (suite == "metadata") append(verify_metadata(cat, p));
    if (suite == "table2") append(verify_table2(cat, p, cache));
    if (suite == "iso") append(verify_iso_lemma(p));
    if (suite == "classes") append(verify_classes(cat, p));
    if (suite == "equivalence") append(verify_equivalence(cat, p, cache));
    if (suite == "products") append(verify_products(cat, p, cache));
    if (suite == "chomp") append(verify_chomp(p));
    if (suite == "consistency") append(verify_consistency(cat, p, cache));
  }
  return out;
}

}  // namespace ichomp
