#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ichomp/algebra.hpp"
#include "ichomp/catalog.hpp"
#include "ichomp/game.hpp"

namespace ichomp {

using nlohmann::json;

/// {modulus, labels, structure_constants[i][j] = coords of b_i*b_j, unit,
///  generators: [{name, coords}], presentation}
inline json algebra_to_json(const FiniteAlgebra& A) {
  const auto n = A.rank();
  json sc = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) {
      const auto prod = A.basis_product(i, j);
      row.push_back(std::vector<int>(prod.begin(), prod.end()));
    }
    sc.push_back(std::move(row));
  }
  json gens = json::array();
  for (const auto& g : A.generators()) {
    gens.push_back({{"name", g.name}, {"coords", std::vector<int>(g.coords.begin(), g.coords.end())}});
  }
  return {{"modulus", A.p()},
          {"labels", A.labels()},
          {"structure_constants", std::move(sc)},
          {"unit", std::vector<int>(A.unit().begin(), A.unit().end())},
          {"generators", std::move(gens)},
          {"presentation", A.description()}};
}

inline FiniteAlgebra algebra_from_json(const json& j) {
  const PrimeField F(j.at("modulus").get<std::uint32_t>());
  auto labels = j.at("labels").get<std::vector<std::string>>();
  const auto n = labels.size();
  auto to_vec = [&](const json& v) {
    AlgElement out;
    for (const auto& x : v) out.push_back(static_cast<std::uint8_t>(F.reduce(x.get<std::int64_t>())));
    return out;
  };
  std::vector<std::uint8_t> table;
  const auto& sc = j.at("structure_constants");
  if (sc.size() != n) throw Error(ErrorCode::InvalidArgument, "structure constants have wrong shape");
  for (const auto& row : sc) {
    if (row.size() != n) throw Error(ErrorCode::InvalidArgument, "structure constants have wrong shape");
    for (const auto& cell : row) {
      const auto v = to_vec(cell);
      table.insert(table.end(), v.begin(), v.end());
    }
  }
  std::vector<NamedElement> gens;
  for (const auto& g : j.at("generators")) gens.push_back({g.at("name").get<std::string>(), to_vec(g.at("coords"))});
  return FiniteAlgebra(F, std::move(labels), std::move(table), to_vec(j.at("unit")), std::move(gens),
                       j.value("presentation", std::string()));
}

inline json to_json(const SolveReport& r) {
  return {{"ring_id", r.ring_id},
          {"field", r.field},
          {"winner", to_string(r.winner)},
          {"winning_first_moves", r.winning_first_move_strings},
          {"states", r.states},
          {"transitions", r.transitions},
          {"ms", r.ms}};
}

inline json to_json(const CatalogEntry& e) {
  return {{"id", e.id},
          {"n", e.n},
          {"d", e.d},
          {"vars", e.vars},
          {"gens", e.gens},
          {"presentation", e.presentation},
          {"char", to_string(e.char_constraint)},
          {"win", to_string(e.expected_winner)}};
}

/// Basis of an ideal written as polynomial strings in the generators.
inline std::vector<std::string> render_basis(const FiniteAlgebra& A, const IdealSubspace& I) {
  std::vector<std::string> out;
  for (const auto& v : I.basis()) out.push_back(A.render(v));
  return out;
}

/// JSON array of {player, move, resulting_ideal_basis}.
inline json transcript_json(const PlaySession& s) {
  json out = json::array();
  for (const auto& m : s.history()) {
    out.push_back({{"player", to_string(m.player)},
                   {"move", m.move},
                   {"resulting_ideal_basis", render_basis(s.algebra(), m.result)}});
  }
  return out;
}

}  // namespace ichomp
