#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ichomp/groebner.hpp"
#include "ichomp/linalg.hpp"
#include "ichomp/poly.hpp"
#include "ichomp/presentation.hpp"

using namespace ichomp;

namespace {

Monomial mono(std::initializer_list<std::uint16_t> e) {
  Monomial m(e.size());
  std::copy(e.begin(), e.end(), m.exps.begin());
  return m;
}

Polynomial poly(const PolyRingPtr& R, std::initializer_list<std::pair<std::uint32_t, Monomial>> terms) {
  std::vector<Term> t;
  for (const auto& [c, m] : terms) t.push_back({m, c});
  return Polynomial(R, std::move(t));
}

Polynomial random_poly(const PolyRingPtr& R, std::mt19937& rng, unsigned max_deg, std::size_t terms) {
  std::uniform_int_distribution<std::uint32_t> coeff(0, R->p() - 1);
  std::uniform_int_distribution<std::uint16_t> ex(0, static_cast<std::uint16_t>(max_deg));
  Polynomial f = Polynomial::constant(R, 0);
  for (std::size_t i = 0; i < terms; ++i) {
    Monomial m(R->nvars());
    for (auto& e : m.exps) e = ex(rng);
    f = f + Polynomial::monomial(R, m, coeff(rng));
  }
  return f;
}

/// Colength of the ideal by plain linear algebra: S spans every multiple
/// m*g of degree <= D + slack, and the answer is dim (P_<=D + S) - dim S,
/// the size of the degree-<=D monomials modulo S.
std::size_t colength_oracle(const PolyRingPtr& R, const std::vector<Polynomial>& gens, unsigned D,
                            unsigned slack = 4) {
  const auto top = D + slack;
  std::vector<Monomial> monos;
  const auto n = R->nvars();
  Monomial m(n);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == n) {
      monos.push_back(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      m.exps[i] = static_cast<std::uint16_t>(e);
      rec(i + 1, left - e);
    }
    m.exps[i] = 0;
  };
  rec(0, top);
  auto index = [&](const Monomial& x) {
    return static_cast<std::size_t>(std::find(monos.begin(), monos.end(), x) - monos.begin());
  };
  const Mod mod(R->field());
  std::vector<Vec> rows;
  for (const auto& g : gens) {
    for (const auto& mult : monos) {
      const auto h = g * Polynomial::monomial(R, mult);
      if (h.total_degree() > top) continue;
      Vec v(monos.size(), 0);
      for (const auto& t : h.terms()) v[index(t.mono)] = static_cast<std::uint8_t>(t.coeff);
      rows.push_back(std::move(v));
    }
  }
  const auto span_dim = rank_of(mod, monos.size(), rows);
  for (const auto& x : monos) {
    if (x.degree() > D) continue;
    Vec v(monos.size(), 0);
    v[index(x)] = 1;
    rows.push_back(std::move(v));
  }
  return rank_of(mod, monos.size(), rows) - span_dim;
}

}  // namespace

TEST(Parser, ExpandsProducts) {
  const auto R = PolyRing::make(PrimeField(5), {"x", "y"});
  const auto f = parse_polynomial("x*(y-1) + (y-2)", R);
  const auto expected = poly(R, {{1, mono({1, 1})}, {4, mono({1, 0})}, {1, mono({0, 1})}, {3, mono({0, 0})}});
  EXPECT_EQ(f, expected);
}

TEST(Parser, ZeroAndSquares) {
  const auto R2 = PolyRing::make(PrimeField(2), {"x", "y"});
  EXPECT_TRUE(parse_polynomial("0", R2).is_zero());
  EXPECT_EQ(parse_polynomial("x^2+y^2", R2), poly(R2, {{1, mono({2, 0})}, {1, mono({0, 2})}}));
  EXPECT_TRUE(parse_polynomial("x + x", R2).is_zero());
  EXPECT_EQ(parse_polynomial("(x+y)^2", R2), parse_polynomial("x^2+y^2", R2));
}

TEST(Parser, ImplicitAndExplicitMultiplication) {
  const auto R = PolyRing::make(PrimeField(3), {"x", "y", "z"});
  EXPECT_EQ(parse_polynomial("2xy", R), parse_polynomial("2*x*y", R));
  EXPECT_EQ(parse_polynomial("-y", R), poly(R, {{2, mono({0, 1, 0})}}));
  EXPECT_EQ(parse_polynomial("4", R), Polynomial::constant(R, 1));
}

TEST(Parser, ErrorsCarryPosition) {
  const auto R = PolyRing::make(PrimeField(3), {"x", "y"});
  try {
    parse_polynomial("x + * y", R);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
    EXPECT_EQ(e.position(), 4u);
  }
  try {
    parse_polynomial("x^", R);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  try {
    parse_polynomial("(x+y", R);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  try {
    parse_polynomial("x + w", R);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownVariable);
  }
  EXPECT_THROW(parse_polynomial("", R), ParseError);
}

TEST(Parser, ToStringRoundTrips) {
  std::mt19937 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const auto R = PolyRing::make(PrimeField(p), {"x", "y", "z"});
    for (int i = 0; i < 50; ++i) {
      const auto f = random_poly(R, rng, 3, 5);
      EXPECT_EQ(parse_polynomial(f.to_string(), R), f) << f.to_string();
    }
  }
}

TEST(Polynomial, ArithmeticAndSubstitution) {
  const auto R = PolyRing::make(PrimeField(3), {"x", "y"});
  const auto x = Polynomial::variable(R, 0);
  const auto y = Polynomial::variable(R, 1);
  EXPECT_EQ((x + y).pow(3), x.pow(3) + y.pow(3));  // Frobenius in characteristic 3
  EXPECT_EQ((x * y).total_degree(), 2u);
  const auto f = x * x + y;
  EXPECT_EQ(f.substitute({y, x}), y * y + x);
  try {
    (void)(x + Polynomial::variable(PolyRing::make(PrimeField(5), {"x", "y"}), 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RingMismatch);
  }
}

TEST(NormalForm, LexRewrite) {
  const auto R = PolyRing::make(PrimeField(3), {"x", "y"}, MonomialOrder::natural(OrderKind::lex, 2));
  const PolyIdeal G(R, {parse_polynomial("x^2 - y", R)});
  EXPECT_EQ(normal_form(parse_polynomial("x^2", R), G), parse_polynomial("y", R));
  EXPECT_TRUE(normal_form(parse_polynomial("x^3 - x*y", R), G).is_zero());
}

TEST(NormalForm, ModuloR12) {
  const auto R = PolyRing::make(PrimeField(2), {"x", "y"});
  const PolyIdeal G(R, {parse_polynomial("x*y", R), parse_polynomial("x^3", R), parse_polynomial("y^3", R)});
  EXPECT_EQ(normal_form(parse_polynomial("x*(x+y)", R), G), parse_polynomial("x^2", R));
}

TEST(NormalForm, IdempotentAndLinear) {
  std::mt19937 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const auto R = PolyRing::make(PrimeField(p), {"x", "y"});
    const PolyIdeal G(R, {parse_polynomial("x^2 - y^3", R), parse_polynomial("x*y^2", R), parse_polynomial("y^5", R)});
    for (int i = 0; i < 30; ++i) {
      const auto f = random_poly(R, rng, 6, 6);
      const auto g = random_poly(R, rng, 6, 6);
      const auto c = std::uniform_int_distribution<std::uint32_t>(0, p - 1)(rng);
      const auto nf = G.normal_form(f);
      EXPECT_EQ(G.normal_form(nf), nf);
      EXPECT_EQ(G.normal_form(f + g), nf + G.normal_form(g));
      EXPECT_EQ(G.normal_form(f.scaled(c)), nf.scaled(c));
      EXPECT_TRUE(G.contains(f - nf));
    }
  }
}

TEST(Groebner, Examples) {
  const auto R2 = PolyRing::make(PrimeField(2), {"x", "y"});
  const PolyIdeal mono_ideal(R2, {parse_polynomial("x^2", R2), parse_polynomial("x*y", R2), parse_polynomial("y^2", R2)});
  EXPECT_EQ(mono_ideal.groebner_basis().size(), 3u);
  for (const auto& g : mono_ideal.groebner_basis()) EXPECT_EQ(g.terms().size(), 1u);

  const auto R5 = PolyRing::make(PrimeField(5), {"x", "y"});
  const PolyIdeal lin(R5, {parse_polynomial("x+y", R5), parse_polynomial("x-y", R5)});
  ASSERT_EQ(lin.groebner_basis().size(), 2u);
  EXPECT_TRUE(ideal_equal(lin, PolyIdeal(R5, {Polynomial::variable(R5, 0), Polynomial::variable(R5, 1)})));
  for (const auto& g : lin.groebner_basis()) EXPECT_EQ(g.terms().size(), 1u);

  const std::vector<Polynomial> r22{parse_polynomial("x*y", R2), parse_polynomial("x^3+y^3", R2)};
  const PolyIdeal I22(R2, r22);
  EXPECT_EQ(I22.quotient_basis().size(), 6u);
  EXPECT_EQ(colength_oracle(R2, r22, 8), 6u);
}

TEST(Groebner, ColengthMatchesLinearAlgebraOracle) {
  for (std::uint32_t p : {2u, 3u}) {
    const auto R = PolyRing::make(PrimeField(p), {"x", "y"});
    const std::vector<std::vector<std::string>> cases{
        {"x^2", "x*y^2", "y^3"}, {"x*y", "x^3", "y^3"}, {"x^2 + y^3", "x*y"}, {"x^2 - y^2", "x*y"}, {"y^2 - x^3", "x*y"}};
    for (const auto& c : cases) {
      std::vector<Polynomial> gens;
      for (const auto& s : c) gens.push_back(parse_polynomial(s, R));
      EXPECT_EQ(PolyIdeal(R, gens).rank(), colength_oracle(R, gens, 8)) << c.front();
    }
  }
}

TEST(Groebner, ReducedBasisIsPermutationInvariant) {
  std::mt19937 rng(3);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const auto R = PolyRing::make(PrimeField(p), {"x", "y", "z"});
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Polynomial> gens{parse_polynomial("x^3", R), parse_polynomial("y^3", R), parse_polynomial("z^3", R)};
      for (int i = 0; i < 3; ++i) gens.push_back(random_poly(R, rng, 2, 3));
      const auto base = PolyIdeal(R, gens).groebner_basis();
      std::shuffle(gens.begin(), gens.end(), rng);
      EXPECT_EQ(PolyIdeal(R, gens).groebner_basis(), base);
      for (auto& g : gens) g = g.scaled(p - 1);
      EXPECT_EQ(PolyIdeal(R, gens).groebner_basis(), base);
    }
  }
}

TEST(IdealEqual, Examples) {
  const auto R5 = PolyRing::make(PrimeField(5), {"x", "y"});
  auto P = [&](const char* s) { return parse_polynomial(s, R5); };
  EXPECT_TRUE(ideal_equal(PolyIdeal(R5, {P("x"), P("y-2")}), PolyIdeal(R5, {P("x*(y-1)+(y-2)"), P("y-2"), P("x^2")})));
  EXPECT_FALSE(ideal_equal(PolyIdeal(R5, {P("x")}), PolyIdeal(R5, {P("x^2")})));
  const auto sq = parse_presentation("K[x,y]/(x,y)^2", PrimeField(5));
  EXPECT_TRUE(ideal_equal(*sq.ideal, PolyIdeal(sq.ring, {parse_polynomial("x^2", sq.ring), parse_polynomial("x*y", sq.ring),
                                                        parse_polynomial("y^2", sq.ring)})));
}

TEST(QuotientBasis, Examples) {
  const auto R4 = parse_presentation("K[x,y]/(x,y)^2", PrimeField(2));
  const auto qb = R4.ideal->quotient_basis();
  ASSERT_EQ(qb.size(), 3u);
  EXPECT_EQ(R4.ideal->rank(), 3u);
  EXPECT_EQ(parse_presentation("K[x,y]/(x^2, x*y^2, y^3)", PrimeField(2)).ideal->rank(), 5u);
  const auto one = parse_presentation("K[x]/(x)", PrimeField(3));
  ASSERT_EQ(one.ideal->quotient_basis().size(), 1u);
  EXPECT_TRUE(one.ideal->quotient_basis().front().is_one());
}

TEST(QuotientBasis, PositiveDimensionalIsRejected) {
  const auto R = PolyRing::make(PrimeField(2), {"x", "y"});
  const PolyIdeal I(R, {parse_polynomial("x^2", R)});
  EXPECT_FALSE(I.is_zero_dimensional());
  try {
    (void)I.quotient_basis();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfiniteRank);
  }
}

TEST(Presentation, Grammar) {
  const PrimeField F(3);
  EXPECT_EQ(parse_presentation("K[x,y,z]/(x,y,z)^2 + (x+y)", F).ideal->rank(), 3u);
  EXPECT_EQ(parse_presentation("K[x]/(x^4)", F).ideal->rank(), 4u);
  EXPECT_EQ(parse_presentation("K[]", F).ideal->rank(), 1u);
  EXPECT_THROW(parse_presentation("K[x]/(x^2", F), ParseError);
  EXPECT_THROW(parse_presentation("Q[x]", F), ParseError);
}
