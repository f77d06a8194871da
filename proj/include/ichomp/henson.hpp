#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ichomp/error.hpp"
#include "ichomp/groebner.hpp"
#include "ichomp/poly.hpp"

namespace ichomp {

/// Names the ideal m_b^k = ((y-b)^k, x(y-b)^(k-1)) of K[x,y]/(x^2).
struct SpecialIdealWitness {
  std::uint32_t b = 0;
  unsigned k = 0;

  friend bool operator==(const SpecialIdealWitness&, const SpecialIdealWitness&) = default;
};

namespace detail {

struct XY {
  std::size_t x;
  std::size_t y;
};

inline XY xy_indices(const PolyRing& ring) {
  if (ring.nvars() != 2) throw Error(ErrorCode::InvalidArgument, "expected a ring in two variables x, y");
  const auto x = ring.index_of("x").value_or(0);
  return {x, 1 - x};
}

/// (y-b)^k as a polynomial.
inline Polynomial y_minus_b_pow(const PolyRingPtr& ring, std::uint32_t b, unsigned k) {
  const auto [x, y] = xy_indices(*ring);
  (void)x;
  return (Polynomial::variable(ring, y) - Polynomial::constant(ring, b)).pow(k);
}

/// Univariate coefficients, lowest degree first, no trailing zeros.
using Univariate = std::vector<std::uint32_t>;

inline void trim(Univariate& u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
}

inline std::uint32_t eval(const PrimeField& F, const Univariate& u, std::uint32_t b) {
  std::uint32_t acc = 0;
  for (std::size_t i = u.size(); i-- > 0;) acc = F.add(F.mul(acc, b), u[i]);
  return acc;
}

/// Order of vanishing of u at b; nothing for the zero polynomial.
inline std::optional<unsigned> multiplicity(const PrimeField& F, Univariate u, std::uint32_t b) {
  trim(u);
  if (u.empty()) return std::nullopt;
  unsigned m = 0;
  while (u.size() > 1 && eval(F, u, b) == 0) {
    // synthetic division by (y - b)
    Univariate q(u.size() - 1, 0);
    std::uint32_t carry = 0;
    for (std::size_t i = u.size(); i-- > 1;) {
      carry = F.add(u[i], F.mul(carry, b));
      q[i - 1] = carry;
    }
    u = std::move(q);
    ++m;
  }
  return m;
}

}  // namespace detail

/// Is I (containing x^2) equal to some m_b^k? k is tried over
/// 1 .. max(largest generator degree, (rank + 1) / 2): m_b^k has colength
/// 2k - 1 over K[x,y]/(x^2), so the rank pins down the only possible k.
inline std::optional<SpecialIdealWitness> is_special(const PolyIdeal& I) {
  const auto& ring = I.ring();
  const auto [x, y] = detail::xy_indices(*ring);
  (void)y;
  const auto X = Polynomial::variable(ring, x);
  if (!I.contains(X * X)) throw Error(ErrorCode::InvalidArgument, "ideal does not contain x^2");
  if (I.is_unit_ideal() || !I.is_zero_dimensional()) return std::nullopt;
  unsigned bound = 1;
  for (const auto& g : I.generators()) bound = std::max(bound, g.total_degree());
  const auto rank = I.rank();
  if (rank % 2 == 0) return std::nullopt;
  bound = std::max<unsigned>(bound, static_cast<unsigned>((rank + 1) / 2));
  const auto p = ring->p();
  for (unsigned k = 1; k <= bound; ++k) {
    if (2 * k - 1 != rank) continue;
    for (std::uint32_t b = 0; b < p; ++b) {
      PolyIdeal candidate(ring, {X * X, detail::y_minus_b_pow(ring, b, k), X * detail::y_minus_b_pow(ring, b, k - 1)});
      if (ideal_equal(I, candidate)) return SpecialIdealWitness{b, k};
    }
  }
  return std::nullopt;
}

/// f = p(y) + x q(y) modulo x^2, as two univariate coefficient lists.
inline std::pair<detail::Univariate, detail::Univariate> split_mod_x2(const Polynomial& f) {
  const auto [x, y] = detail::xy_indices(*f.ring());
  detail::Univariate p;
  detail::Univariate q;
  for (const auto& t : f.terms()) {
    const auto ex = t.mono.exps[x];
    if (ex >= 2) continue;
    auto& u = ex == 0 ? p : q;
    const auto ey = t.mono.exps[y];
    if (u.size() <= ey) u.resize(ey + 1, 0);
    u[ey] = t.coeff;
  }
  detail::trim(p);
  detail::trim(q);
  return {p, q};
}

struct CommonRootResponse {
  Polynomial move;
  SpecialIdealWitness witness;
};

/// Answers f = p(y) + x q(y) in K[x,y]/(x^2) when p and q share a root b by
/// a move that makes the ideal m_b^k. The pure formula with k = min(s, t)
/// (s, t the orders of p, q at b) only works for s <= t; in general
/// k = min(s, t + 1), found among (y-b)^k + c x (y-b)^(k-1) and
/// x (y-b)^(k-1). A zero p or q vanishes to infinite order at every b.
/// Nothing when no common root exists or no candidate is legal.
inline std::optional<CommonRootResponse> respond_common_root(const Polynomial& f) {
  const auto& ring = f.ring();
  const auto& F = ring->field();
  const auto [x, y] = detail::xy_indices(*ring);
  (void)y;
  const auto X = Polynomial::variable(ring, x);
  const auto [p, q] = split_mod_x2(f);
  if (p.empty() && q.empty()) throw Error(ErrorCode::InvalidArgument, "move is zero modulo x^2");
  const PolyIdeal current(ring, {X * X, f});

  for (std::uint32_t b = 0; b < F.modulus(); ++b) {
    const auto s = detail::multiplicity(F, p, b);
    const auto t = detail::multiplicity(F, q, b);
    if ((s && *s == 0) || (t && *t == 0)) continue;
    constexpr unsigned kInf = 1u << 20;
    const unsigned sv = s.value_or(kInf);
    const unsigned tv = t.value_or(kInf);

    std::vector<std::pair<Polynomial, unsigned>> candidates;
    const unsigned r = std::min(sv, tv);
    if (r < kInf) {
      candidates.emplace_back(
          detail::y_minus_b_pow(ring, b, r) + X * detail::y_minus_b_pow(ring, b, r - 1), r);
    }
    const unsigned k = std::min(sv, tv + 1);
    for (std::uint32_t c = 0; c < F.modulus(); ++c) {
      candidates.emplace_back(
          detail::y_minus_b_pow(ring, b, k) + (X * detail::y_minus_b_pow(ring, b, k - 1)).scaled(c), k);
    }
    candidates.emplace_back(X * detail::y_minus_b_pow(ring, b, k - 1), k);

    for (const auto& [g, kk] : candidates) {
      if (current.contains(g)) continue;
      const auto w = is_special(current.plus({g}));
      if (w && w->b == b && w->k == kk) return CommonRootResponse{g, *w};
    }
  }
  return std::nullopt;
}

/// Replays: A plays x^2, B plays x(y-1) + (y-2), A answers (default y-2).
/// True iff every move is legal and the final ideal is (x, y-2), a maximal
/// ideal. Needs p >= 3 so that the roots 1 and 2 differ.
inline bool verify_example_game(std::uint32_t p, const std::string& response = "y-2") {
  if (p < 3) return false;
  const auto ring = PolyRing::make(PrimeField(p), {"x", "y"});
  const std::vector<Polynomial> moves{parse_polynomial("x^2", ring), parse_polynomial("x*(y-1) + (y-2)", ring),
                                      parse_polynomial(response, ring)};
  std::vector<Polynomial> gens;
  for (const auto& m : moves) {
    if (!gens.empty() && PolyIdeal(ring, gens).contains(m)) return false;
    gens.push_back(m);
  }
  const PolyIdeal final_ideal(ring, gens);
  if (final_ideal.is_unit_ideal()) return false;
  const PolyIdeal target(ring, {parse_polynomial("x", ring), parse_polynomial("y-2", ring)});
  if (!ideal_equal(final_ideal, target)) return false;
  const auto w = is_special(final_ideal);
  return w && w->k == 1 && w->b == 2 % p;
}

struct HensonExample {
  std::string ring;
  std::string witness;
  std::uint32_t p = 0;
  /// (x, g1, g2) collapsed to (x, h) for every sampled pair, and (x, y) is
  /// proper and nonzero modulo x.
  bool checked = false;
  std::size_t samples = 0;
};

/// Rings known to satisfy the condition with a witness element, spot
/// checked: random two-generator ideals of F_p[x,y]/(x) = F_p[y] come out
/// principal, and the quotient is not a field.
inline std::vector<HensonExample> henson_condition_examples(const std::vector<std::uint32_t>& primes = {2, 3, 5},
                                                            std::size_t samples = 40) {
  std::vector<HensonExample> out;
  std::mt19937 rng(12345);
  for (auto p : primes) {
    const auto ring = PolyRing::make(PrimeField(p), {"x", "y"});
    const auto X = Polynomial::variable(ring, 0);
    const auto Y = Polynomial::variable(ring, 1);
    HensonExample ex{"F_" + std::to_string(p) + "[x,y]", "x", p, true, samples};
    std::uniform_int_distribution<std::uint32_t> coeff(0, p - 1);
    std::uniform_int_distribution<unsigned> deg(0, 4);
    auto random_univariate = [&] {
      Polynomial g = Polynomial::constant(ring, 0);
      const auto d = deg(rng);
      for (unsigned i = 0; i <= d; ++i) g = g + Y.pow(i).scaled(coeff(rng));
      return g;
    };
    for (std::size_t i = 0; i < samples; ++i) {
      const PolyIdeal I(ring, {X, random_univariate(), random_univariate()});
      // reduced basis of a principal ideal of F_p[y], lifted: x plus at most one y-polynomial
      std::size_t non_x = 0;
      for (const auto& g : I.groebner_basis()) {
        if (!(g == X)) ++non_x;
      }
      if (non_x > 1) ex.checked = false;
    }
    const PolyIdeal max_ideal(ring, {X, Y});
    if (max_ideal.is_unit_ideal() || max_ideal.contains(Polynomial::constant(ring, 1)) || PolyIdeal(ring, {X}).contains(Y)) {
      ex.checked = false;
    }
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace ichomp
