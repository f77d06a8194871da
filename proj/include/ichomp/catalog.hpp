#pragma once

#include <cstdlib>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ichomp/algebra.hpp"
#include "ichomp/error.hpp"
#include "ichomp/presentation.hpp"

namespace ichomp {

enum class Player { A, B };

inline const char* to_string(Player p) { return p == Player::A ? "A" : "B"; }
inline Player other(Player p) { return p == Player::A ? Player::B : Player::A; }

/// Which characteristics a catalog row is a separate isomorphism class in.
enum class CharConstraint { Any, Only2, Only3 };

inline const char* to_string(CharConstraint c) {
  switch (c) {
    case CharConstraint::Any: return "any";
    case CharConstraint::Only2: return "2";
    case CharConstraint::Only3: return "3";
  }
  return "?";
}

struct CatalogEntry {
  std::string id;
  std::size_t n = 0;
  std::vector<std::size_t> d;
  std::vector<std::string> vars;
  std::vector<std::string> gens;
  std::string presentation;
  CharConstraint char_constraint = CharConstraint::Any;
  Player expected_winner = Player::A;

  bool applies_to(std::uint32_t p) const {
    switch (char_constraint) {
      case CharConstraint::Any: return true;
      case CharConstraint::Only2: return p == 2;
      case CharConstraint::Only3: return p == 3;
    }
    return false;
  }

  Presentation make_presentation(PrimeField field) const {
    return ichomp::make_presentation(field, vars, gens, presentation);
  }

  FiniteAlgebra algebra(PrimeField field) const {
    if (!applies_to(field.modulus())) {
      throw Error(ErrorCode::CharMismatch,
                  id + " is only a class in characteristic " + to_string(char_constraint));
    }
    return from_presentation(make_presentation(field));
  }
};

struct ReductionRow {
  std::string source;
  std::string move;
  std::string target;
};

/// Directory-independent location of the shipped data file: the
/// ICHOMP_CATALOG environment variable, else the path baked in at build time.
inline std::string default_catalog_path() {
  if (const char* env = std::getenv("ICHOMP_CATALOG"); env != nullptr && *env != '\0') return env;
#ifdef ICHOMP_CATALOG_PATH
  return ICHOMP_CATALOG_PATH;
#else
  return "data/catalog.json";
#endif
}

/// The whole data file, unfiltered.
class Catalog {
 public:
  static Catalog load(const std::string& path = default_catalog_path()) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open catalog file " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Io, "malformed catalog file " + path + ": " + e.what());
    }
    return from_json(j);
  }

  static Catalog from_json(const nlohmann::json& j) {
    Catalog c;
    for (const auto& a : j.at("algebras")) {
      CatalogEntry e;
      e.id = a.at("id").get<std::string>();
      e.n = a.at("n").get<std::size_t>();
      e.d = a.at("d").get<std::vector<std::size_t>>();
      e.vars = a.at("vars").get<std::vector<std::string>>();
      e.gens = a.at("gens").get<std::vector<std::string>>();
      e.presentation = a.value("presentation", std::string());
      const auto ch = a.at("char").get<std::string>();
      if (ch == "any") {
        e.char_constraint = CharConstraint::Any;
      } else if (ch == "2") {
        e.char_constraint = CharConstraint::Only2;
      } else if (ch == "3") {
        e.char_constraint = CharConstraint::Only3;
      } else {
        throw Error(ErrorCode::Io, "bad char constraint '" + ch + "' for " + e.id);
      }
      e.expected_winner = a.at("win").get<std::string>() == "B" ? Player::B : Player::A;
      c.entries_.push_back(std::move(e));
    }
    for (const auto& r : j.at("reductions")) {
      c.reductions_.push_back(
          {r.at("source").get<std::string>(), r.at("move").get<std::string>(), r.at("target").get<std::string>()});
    }
    return c;
  }

  const std::vector<CatalogEntry>& all_entries() const noexcept { return entries_; }
  const std::vector<ReductionRow>& all_reductions() const noexcept { return reductions_; }

  std::vector<CatalogEntry> entries_for(std::uint32_t p) const {
    std::vector<CatalogEntry> out;
    for (const auto& e : entries_) {
      if (e.applies_to(p)) out.push_back(e);
    }
    return out;
  }

  std::vector<ReductionRow> reductions_for(std::uint32_t p) const {
    std::vector<ReductionRow> out;
    for (const auto& r : reductions_) {
      const auto* src = find(r.source);
      if (src != nullptr && src->applies_to(p)) out.push_back(r);
    }
    return out;
  }

  const CatalogEntry* find(std::string_view id) const {
    for (const auto& e : entries_) {
      if (e.id == id) return &e;
    }
    return nullptr;
  }

  const CatalogEntry& at(std::string_view id) const {
    const auto* e = find(id);
    if (e == nullptr) throw Error(ErrorCode::UnknownRing, "unknown ring id " + std::string(id));
    return *e;
  }

 private:
  std::vector<CatalogEntry> entries_;
  std::vector<ReductionRow> reductions_;
};

inline std::vector<CatalogEntry> load_catalog(std::uint32_t p, const std::string& path = default_catalog_path()) {
  if (!PrimeField::is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  return Catalog::load(path).entries_for(p);
}

inline std::vector<ReductionRow> load_reductions(std::uint32_t p, const std::string& path = default_catalog_path()) {
  if (!PrimeField::is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  return Catalog::load(path).reductions_for(p);
}

/// A ring given either as a catalog id or as a presentation "K[...]/(...)".
struct ResolvedRing {
  std::string id;
  FiniteAlgebra algebra;
};

inline ResolvedRing resolve_ring(const Catalog& catalog, std::string_view spec, PrimeField field) {
  std::size_t i = 0;
  while (i < spec.size() && spec[i] == ' ') ++i;
  if (i < spec.size() && (spec[i] == 'K' || spec[i] == 'k') && spec.find('[') != std::string_view::npos) {
    return {std::string(spec), from_presentation(parse_presentation(spec, field))};
  }
  const auto& e = catalog.at(spec);
  return {e.id, e.algebra(field)};
}

}  // namespace ichomp
