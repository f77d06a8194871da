#include <gtest/gtest.h>

#include <deque>
#include <set>

#include "ichomp/algebra.hpp"
#include "ichomp/catalog.hpp"
#include "ichomp/iso.hpp"
#include "ichomp/presentation.hpp"

using namespace ichomp;

namespace {

FiniteAlgebra alg(const char* pres, std::uint32_t p) { return from_presentation(parse_presentation(pres, PrimeField(p))); }

const Catalog& catalog() {
  static const Catalog c = Catalog::load();
  return c;
}

/// Ideal generated by `gens`: keep multiplying by basis elements until the
/// span stops growing.
Subspace closure_oracle(const FiniteAlgebra& A, std::vector<AlgElement> gens) {
  auto S = Subspace::span(A.mod(), A.rank(), gens);
  while (true) {
    std::vector<Vec> more = S.basis();
    for (const auto& v : S.basis()) {
      for (std::size_t i = 0; i < A.rank(); ++i) more.push_back(A.mul(v, A.basis_element(i)));
    }
    auto T = Subspace::span(A.mod(), A.rank(), more);
    if (T.dim() == S.dim()) return T;
    S = std::move(T);
  }
}

/// Every ideal of A, by breadth-first closure from 0 under adding elements.
std::vector<IdealSubspace> all_ideals(const FiniteAlgebra& A) {
  std::vector<IdealSubspace> out;
  std::set<std::string> seen;
  std::deque<IdealSubspace> todo{IdealSubspace::zero(A)};
  seen.insert(todo.front().key());
  while (!todo.empty()) {
    auto I = todo.front();
    todo.pop_front();
    for_each_vector(A.p(), A.rank(), [&](const Vec& a) {
      auto J = ideal_add(A, I, a);
      if (seen.insert(J.key()).second) todo.push_back(J);
      return true;
    });
    out.push_back(std::move(I));
  }
  return out;
}

}  // namespace

TEST(FromPresentation, R4) {
  const auto A = alg("K[x,y]/(x,y)^2", 2);
  ASSERT_EQ(A.rank(), 3u);
  const auto x = A.parse_element("x");
  const auto y = A.parse_element("y");
  EXPECT_EQ(A.mul(x, x), A.zero());
  EXPECT_EQ(A.mul(x, y), A.zero());
  EXPECT_EQ(A.mul(y, y), A.zero());
  EXPECT_EQ(A.parse_element("1"), A.unit());
}

TEST(FromPresentation, R2AndR12) {
  const auto R2 = alg("K[x]/(x^2)", 3);
  EXPECT_EQ(R2.rank(), 2u);
  const auto x = R2.parse_element("x");
  EXPECT_EQ(R2.mul(x, x), R2.zero());

  const auto R12 = alg("K[x,y]/(x*y, x^3, y^3)", 3);
  EXPECT_EQ(R12.rank(), 5u);
  const auto X = R12.parse_element("x");
  const auto X2 = R12.mul(X, X);
  EXPECT_NE(X2, R12.zero());
  EXPECT_EQ(X2, R12.parse_element("x^2"));
  EXPECT_EQ(R12.mul(X2, X), R12.zero());
}

TEST(FromPresentation, CatalogAxiomsHold) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (const auto& e : catalog().entries_for(p)) {
      const auto A = e.algebra(PrimeField(p));
      EXPECT_FALSE(A.check_axioms().has_value()) << e.id << " over F_" << p;
      EXPECT_EQ(A.rank(), e.n) << e.id;
    }
  }
}

TEST(Units, Examples) {
  const auto R2 = alg("K[x]/(x^2)", 2);
  EXPECT_TRUE(is_unit(R2, R2.unit()));
  EXPECT_FALSE(is_unit(R2, R2.parse_element("x")));
  EXPECT_TRUE(is_unit(R2, R2.parse_element("1+x")));
  EXPECT_EQ(R2.mul(R2.parse_element("1+x"), R2.parse_element("1+x")), R2.unit());
}

TEST(Local, TableOneAlgebrasAreLocal) {
  for (const auto& e : catalog().entries_for(2)) EXPECT_TRUE(is_local(e.algebra(PrimeField(2)))) << e.id;
}

TEST(Local, ProductOfFieldsIsNot) {
  const PrimeField F(2);
  const auto K = alg("K[]", 2);
  const auto P = direct_product(K, K);
  EXPECT_EQ(P.rank(), 2u);
  EXPECT_FALSE(is_local(P));
  EXPECT_FALSE(is_unit(P, Vec{1, 0}));
  EXPECT_FALSE(is_unit(P, Vec{0, 1}));
  EXPECT_TRUE(is_unit(P, Vec{1, 1}));
  try {
    (void)radical(P);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotLocal);
  }
}

TEST(Local, RadicalOfR4) {
  const auto A = alg("K[x,y]/(x,y)^2", 2);
  const auto m = radical(A);
  EXPECT_EQ(m.dim(), 2u);
  EXPECT_TRUE(m.contains(A, A.parse_element("x")));
  EXPECT_TRUE(m.contains(A, A.parse_element("y")));
  EXPECT_FALSE(m.contains(A, A.unit()));
}

TEST(DVector, Examples) {
  EXPECT_EQ(d_vector(alg("K[x,y]/(x^2, x*y^2, y^3)", 2)), (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(d_vector(catalog().at("R_17").algebra(PrimeField(3))), (std::vector<std::size_t>{4}));
  EXPECT_TRUE(d_vector(alg("K[]", 5)).empty());
}

TEST(Ideals, AddExamples) {
  const auto R4 = alg("K[x,y]/(x,y)^2", 2);
  const auto Ix = ideal_add(R4, IdealSubspace::zero(R4), R4.parse_element("x"));
  EXPECT_EQ(Ix.dim(), 1u);
  const auto Ixy = ideal_add(R4, Ix, R4.parse_element("y"));
  EXPECT_EQ(Ixy, radical(R4));

  const auto R12 = alg("K[x,y]/(x*y, x^3, y^3)", 2);
  const auto x = R12.parse_element("x");
  const auto I = ideal_add(R12, IdealSubspace::zero(R12), x);
  EXPECT_EQ(I.dim(), 2u);
  EXPECT_TRUE(I.span() == closure_oracle(R12, {x}));
  EXPECT_TRUE(I.contains(R12, R12.parse_element("x^2")));
}

TEST(Ideals, AddMatchesClosureOracle) {
  for (std::uint32_t p : {2u, 3u}) {
    for (const char* id : {"R_12", "R_13", "R_21", "R_6"}) {
      const auto A = catalog().at(id).algebra(PrimeField(p));
      std::size_t checked = 0;
      for_each_vector(p, A.rank(), [&](const Vec& a) {
        EXPECT_TRUE(principal_ideal(A, a).span() == closure_oracle(A, {a}));
        return ++checked < 200;
      });
    }
  }
}

TEST(Ideals, AddIsMonotoneAndIdempotent) {
  const auto A = catalog().at("R_13").algebra(PrimeField(2));
  for (const auto& I : all_ideals(A)) {
    for_each_vector(2, A.rank(), [&](const Vec& a) {
      const auto J = ideal_add(A, I, a);
      EXPECT_TRUE(J.contains(A, I));
      EXPECT_TRUE(J.contains(A, a));
      EXPECT_EQ(ideal_add(A, J, a), J);
      return true;
    });
  }
}

TEST(Ideals, SumProductAnnihilator) {
  const auto A = alg("K[x,y]/(x*y, x^3, y^3)", 3);
  const auto m = radical(A);
  const auto m2 = ideal_product(A, m, m);
  EXPECT_EQ(m2.dim(), 2u);
  EXPECT_EQ(ideal_sum(A, m2, principal_ideal(A, A.parse_element("x"))).dim(), 3u);
  const auto soc = annihilator(A, m);
  EXPECT_EQ(soc, m2);
}

TEST(Quotient, Examples) {
  const auto R6 = catalog().at("R_6").algebra(PrimeField(2));
  const auto R4 = catalog().at("R_4").algebra(PrimeField(2));
  const auto Q = quotient_by(R6, principal_ideal(R6, R6.parse_element("y^2")));
  EXPECT_EQ(Q.algebra.rank(), 3u);
  EXPECT_EQ(is_isomorphic(Q.algebra, R4).outcome, IsoOutcome::Yes);

  const auto R12 = catalog().at("R_12").algebra(PrimeField(3));
  const auto same = quotient_by(R12, IdealSubspace::zero(R12));
  EXPECT_EQ(same.algebra.rank(), R12.rank());
  EXPECT_EQ(is_isomorphic(same.algebra, R12).outcome, IsoOutcome::Yes);

  const auto R2 = catalog().at("R_2").algebra(PrimeField(5));
  EXPECT_EQ(quotient_by(R2, principal_ideal(R2, R2.parse_element("x"))).algebra.rank(), 1u);

  try {
    (void)quotient_by(R2, IdealSubspace::full(R2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::QuotientIsZeroRing);
  }
}

TEST(Quotient, RankAdditivityOverAllIdeals) {
  for (const char* id : {"R_12", "R_13", "R_17"}) {
    const auto A = catalog().at(id).algebra(PrimeField(2));
    for (const auto& I : all_ideals(A)) {
      if (I.is_full()) continue;
      const auto Q = quotient_by(A, I);
      EXPECT_EQ(Q.algebra.rank() + I.dim(), A.rank());
      EXPECT_FALSE(Q.algebra.check_axioms().has_value());
      // the projection is multiplicative
      for (std::size_t i = 0; i < A.rank(); ++i) {
        for (std::size_t j = 0; j < A.rank(); ++j) {
          const auto ai = A.basis_element(i);
          const auto aj = A.basis_element(j);
          EXPECT_EQ(Q.project(A.mul(ai, aj)), Q.algebra.mul(Q.project(ai), Q.project(aj)));
        }
      }
    }
  }
}

TEST(Product, RanksAndMaximalIdeals) {
  const auto R2 = alg("K[x]/(x^2)", 2);
  const auto K = alg("K[]", 2);
  const auto P = direct_product(R2, K);
  EXPECT_EQ(P.rank(), 3u);
  EXPECT_FALSE(P.check_axioms().has_value());
  const auto ideals = all_ideals(P);
  std::size_t maximal = 0;
  for (const auto& I : ideals) {
    if (I.is_full()) continue;
    bool is_max = true;
    for (const auto& J : ideals) {
      if (!J.is_full() && J.dim() > I.dim() && J.contains(P, I)) is_max = false;
    }
    if (is_max) ++maximal;
  }
  EXPECT_EQ(maximal, 2u);

  for (const char* a : {"R_4", "R_12"}) {
    for (const char* b : {"R_2", "R_3"}) {
      const auto A = catalog().at(a).algebra(PrimeField(3));
      const auto B = catalog().at(b).algebra(PrimeField(3));
      EXPECT_EQ(direct_product(A, B).rank(), A.rank() + B.rank());
    }
  }
}

TEST(Render, EveryElementReparses) {
  const auto A = catalog().at("R_12").algebra(PrimeField(3));
  for_each_vector(3, A.rank(), [&](const Vec& a) {
    EXPECT_EQ(A.parse_element(A.render(a)), a) << A.render(a);
    return true;
  });
  const auto P = direct_product(catalog().at("R_2").algebra(PrimeField(3)), catalog().at("R_1").algebra(PrimeField(3)));
  for_each_vector(3, P.rank(), [&](const Vec& a) {
    EXPECT_EQ(P.parse_element(P.render(a)), a) << P.render(a);
    return true;
  });
}
