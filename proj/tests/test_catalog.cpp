#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <set>

#include "ichomp/catalog.hpp"

using namespace ichomp;

namespace {

const Catalog& catalog() {
  static const Catalog c = Catalog::load();
  return c;
}

std::set<std::string> ids(const std::vector<CatalogEntry>& v) {
  std::set<std::string> out;
  for (const auto& e : v) out.insert(e.id);
  return out;
}

bool starred(const std::string& id) { return id.find('*') != std::string::npos; }

}  // namespace

TEST(Catalog, Characteristic5HasTheFortyTwoPlainRows) {
  const auto e = load_catalog(5);
  EXPECT_EQ(e.size(), 42u);
  for (int i = 1; i <= 42; ++i) EXPECT_TRUE(ids(e).count("R_" + std::to_string(i))) << i;
  for (const auto& x : e) EXPECT_FALSE(starred(x.id)) << x.id;
}

TEST(Catalog, Characteristic2HasTheStarRows) {
  const auto s = ids(load_catalog(2));
  for (const char* id : {"R_7,*", "R_15,*", "R_25,*", "R_29,*", "R_31,*", "R_34,*", "R_36,*", "R_37,*", "R_39,*",
                         "R_41,*"}) {
    EXPECT_TRUE(s.count(id)) << id;
  }
  EXPECT_FALSE(s.count("R_25,**"));
  EXPECT_EQ(s.size(), 52u);
}

TEST(Catalog, Characteristic3HasOnlyTheDoubleStarRow) {
  const auto s = ids(load_catalog(3));
  EXPECT_TRUE(s.count("R_25,**"));
  for (const auto& id : s) {
    if (starred(id)) {
      EXPECT_EQ(id, "R_25,**");
    }
  }
  EXPECT_EQ(s.size(), 43u);
}

TEST(Catalog, Metadata) {
  const auto& r4 = catalog().at("R_4");
  EXPECT_EQ(r4.n, 3u);
  EXPECT_EQ(r4.d, (std::vector<std::size_t>{2}));
  EXPECT_EQ(r4.expected_winner, Player::B);
  std::set<std::string> b_rows;
  for (const auto& e : catalog().all_entries()) {
    if (e.expected_winner == Player::B) b_rows.insert(e.id);
  }
  EXPECT_EQ(b_rows, (std::set<std::string>{"R_1", "R_4", "R_12", "R_13", "R_17"}));
  for (const auto& e : catalog().all_entries()) {
    std::size_t sum = 1;
    for (auto d : e.d) sum += d;
    EXPECT_EQ(sum, e.n) << e.id;
  }
}

TEST(Catalog, Reductions) {
  const auto& rows = catalog().all_reductions();
  EXPECT_EQ(rows.size(), 48u);
  auto has = [&](const char* s, const char* m, const char* t) {
    return std::any_of(rows.begin(), rows.end(),
                       [&](const ReductionRow& r) { return r.source == s && r.move == m && r.target == t; });
  };
  EXPECT_TRUE(has("R_21", "y^3", "R_12"));
  EXPECT_TRUE(has("R_42", "v", "R_17"));
  EXPECT_TRUE(has("R_34", "x+y", "R_4"));
  for (const auto& r : rows) {
    ASSERT_NE(catalog().find(r.source), nullptr) << r.source;
    ASSERT_NE(catalog().find(r.target), nullptr) << r.target;
    EXPECT_LT(catalog().at(r.target).n, catalog().at(r.source).n) << r.source;
  }
  for (const auto& r : load_reductions(3)) EXPECT_TRUE(catalog().at(r.source).applies_to(3));
}

TEST(Catalog, Errors) {
  try {
    (void)catalog().at("R_99");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownRing);
  }
  try {
    (void)catalog().at("R_7,*").algebra(PrimeField(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CharMismatch);
  }
  try {
    (void)Catalog::load("/nonexistent/catalog.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

TEST(Catalog, ResolveRing) {
  const auto byId = resolve_ring(catalog(), "R_13", PrimeField(2));
  EXPECT_EQ(byId.id, "R_13");
  EXPECT_EQ(byId.algebra.rank(), 5u);
  const auto adHoc = resolve_ring(catalog(), "K[x]/(x^2)", PrimeField(5));
  EXPECT_EQ(adHoc.algebra.rank(), 2u);
  EXPECT_THROW(resolve_ring(catalog(), "R_0", PrimeField(2)), Error);
}

TEST(Catalog, EnvironmentOverridesPath) {
  ::setenv("ICHOMP_CATALOG", "/nonexistent/override.json", 1);
  EXPECT_EQ(default_catalog_path(), "/nonexistent/override.json");
  ::unsetenv("ICHOMP_CATALOG");
  EXPECT_NE(default_catalog_path(), "/nonexistent/override.json");
}
