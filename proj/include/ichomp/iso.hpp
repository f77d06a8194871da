#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ichomp/algebra.hpp"

namespace ichomp {

/// Isomorphism invariants of a local algebra.
struct LocalInvariants {
  std::size_t rank = 0;
  std::vector<std::size_t> d;
  std::size_t socle_dim = 0;
  /// dim ann(m^i) for i = 1 .. nilpotency index.
  std::vector<std::size_t> annihilator_chain;
  /// For a in m: how many a have (dim aA, dim a^2 A) equal to the key.
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> principal_profile;
};

inline LocalInvariants local_invariants(const FiniteAlgebra& A, const IdealSubspace& m) {
  LocalInvariants inv;
  inv.rank = A.rank();
  const auto powers = radical_powers(A, m);
  for (std::size_t i = 0; i + 1 < powers.size(); ++i) inv.d.push_back(powers[i].dim() - powers[i + 1].dim());
  for (std::size_t i = 0; i + 1 < powers.size(); ++i) {
    inv.annihilator_chain.push_back(annihilator(A, powers[i]).dim());
  }
  inv.socle_dim = annihilator(A, m).dim();
  const auto basis = m.basis();
  for_each_vector(A.p(), basis.size(), [&](const Vec& c) {
    AlgElement a = A.zero();
    for (std::size_t i = 0; i < basis.size(); ++i) A.mod().axpy(a, c[i], basis[i]);
    const auto da = principal_ideal(A, a).dim();
    const auto da2 = principal_ideal(A, A.mul(a, a)).dim();
    ++inv.principal_profile[{da, da2}];
    return true;
  });
  return inv;
}

enum class IsoOutcome { Yes, No, Undecided };

inline const char* to_string(IsoOutcome o) {
  switch (o) {
    case IsoOutcome::Yes: return "yes";
    case IsoOutcome::No: return "no";
    case IsoOutcome::Undecided: return "undecided";
  }
  return "?";
}

/// An isomorphism A -> B: `generators` are minimal generators of A's maximal
/// ideal, `images` their images in B, `basis_images[i]` the image of A's
/// i-th basis element.
struct IsoWitness {
  std::vector<AlgElement> generators;
  std::vector<AlgElement> images;
  std::vector<AlgElement> basis_images;
};

struct IsoResult {
  IsoOutcome outcome = IsoOutcome::Undecided;
  /// Which stage decided: "invariant:<name>", "square_zero", or "search".
  std::string stage;
  std::string detail;
  std::optional<IsoWitness> witness;
  std::uint64_t candidates = 0;
};

struct IsoOptions {
  /// Candidate generator images tried before answering Undecided.
  std::uint64_t budget = 10'000'000;
};

namespace detail {

inline std::string join(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

/// Minimal generators of m: preferred from the algebra's named generators,
/// completed from a basis of m, independent modulo m^2.
inline std::vector<AlgElement> minimal_generators(const FiniteAlgebra& A, const IdealSubspace& m,
                                                  const IdealSubspace& m2) {
  std::vector<AlgElement> pool;
  for (const auto& g : A.generators()) {
    if (m.contains(A, g.coords)) pool.push_back(g.coords);
  }
  for (const auto& b : m.basis()) pool.push_back(b);
  std::vector<AlgElement> chosen;
  Subspace acc = m2.span();
  for (const auto& v : pool) {
    if (acc.contains(A.mod(), v)) continue;
    acc = acc.with(A.mod(), {v});
    chosen.push_back(v);
  }
  return chosen;
}

/// Backtracking search for images of A's minimal generators in B. Monomials
/// in the generators are grouped by the highest generator they involve;
/// after assigning generator k every linear relation among the monomials in
/// generators 0..k is checked in B.
class IsoSearch {
 public:
  IsoSearch(const FiniteAlgebra& A, const IdealSubspace& mA, const FiniteAlgebra& B,
            const IdealSubspace& mB, std::uint64_t budget)
      : A_(A), B_(B), budget_(budget) {
    const auto powersA = radical_powers(A, mA);
    const auto m2A = powersA.size() > 1 ? powersA[1] : IdealSubspace::zero(A);
    gens_ = minimal_generators(A, mA, m2A);
    const std::size_t d = gens_.size();
    const std::size_t L = powersA.size() - 1;  // m^L = 0

    // exponent tuples of total degree <= L, ordered by (level, degree, tuple)
    std::vector<std::vector<std::uint16_t>> tuples;
    std::vector<std::uint16_t> e(d, 0);
    enumerate(e, 0, L, tuples);
    auto level_of = [](const std::vector<std::uint16_t>& t) {
      std::size_t lv = 0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] > 0) lv = i + 1;
      }
      return lv;
    };
    auto degree_of = [](const std::vector<std::uint16_t>& t) {
      unsigned s = 0;
      for (auto x : t) s += x;
      return s;
    };
    std::sort(tuples.begin(), tuples.end(), [&](const auto& a, const auto& b) {
      const auto la = level_of(a);
      const auto lb = level_of(b);
      if (la != lb) return la < lb;
      const auto da = degree_of(a);
      const auto db = degree_of(b);
      if (da != db) return da < db;
      return a < b;
    });
    std::map<std::vector<std::uint16_t>, std::size_t> index;
    for (std::size_t i = 0; i < tuples.size(); ++i) index[tuples[i]] = i;

    mons_.resize(tuples.size());
    by_level_.assign(d + 1, {});
    std::vector<AlgElement> basis_values;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      auto& mon = mons_[i];
      mon.level = level_of(tuples[i]);
      by_level_[mon.level].push_back(i);
      if (mon.level == 0) {
        mon.valueA = A.unit();
      } else {
        mon.var = mon.level - 1;
        auto pred = tuples[i];
        --pred[mon.var];
        mon.pred = index.at(pred);
        mon.valueA = A.mul(mons_[mon.pred].valueA, gens_[mon.var]);
      }
      std::optional<Vec> coeffs;
      if (!basis_values.empty()) {
        coeffs = Expresser(A.mod(), A.rank(), basis_values).express(mon.valueA);
      } else if (std::all_of(mon.valueA.begin(), mon.valueA.end(), [](auto x) { return x == 0; })) {
        coeffs = Vec{};
      }
      if (coeffs) {
        mon.relation = *coeffs;
      } else {
        mon.is_basis = true;
        mon.basis_slot = basis_values.size();
        basis_values.push_back(mon.valueA);
        basis_mons_.push_back(i);
      }
    }

    const auto powersB = radical_powers(B, mB);
    m2B_ = powersB.size() > 1 ? powersB[1] : IdealSubspace::zero(B);
    mB_basis_ = mB.basis();
    valueB_.assign(mons_.size(), B.zero());
    images_.assign(d, B.zero());
  }

  std::optional<IsoWitness> run() {
    valueB_[0] = B_.unit();
    if (assign(0, m2B_.span())) {
      IsoWitness w;
      w.generators = gens_;
      w.images = images_;
      // A's basis element a_j as a combination of basis monomials, mapped
      std::vector<AlgElement> valsA;
      for (auto idx : basis_mons_) valsA.push_back(mons_[idx].valueA);
      Expresser ex(A_.mod(), A_.rank(), valsA);
      for (std::size_t j = 0; j < A_.rank(); ++j) {
        const auto c = ex.express(A_.basis_element(j));
        AlgElement img = B_.zero();
        for (std::size_t s = 0; s < basis_mons_.size(); ++s) {
          B_.mod().axpy(img, (*c)[s], valueB_[basis_mons_[s]]);
        }
        w.basis_images.push_back(std::move(img));
      }
      return w;
    }
    return std::nullopt;
  }

  bool exhausted() const noexcept { return tried_ > budget_; }
  std::uint64_t tried() const noexcept { return tried_; }
  std::size_t generator_count() const noexcept { return gens_.size(); }

 private:
  struct Mon {
    std::size_t level = 0;
    std::size_t var = 0;
    std::size_t pred = 0;
    AlgElement valueA;
    bool is_basis = false;
    std::size_t basis_slot = 0;
    Vec relation;  // coefficients over earlier basis monomials
  };

  static void enumerate(std::vector<std::uint16_t>& e, std::size_t i, std::size_t remaining,
                        std::vector<std::vector<std::uint16_t>>& out) {
    if (i == e.size()) {
      out.push_back(e);
      return;
    }
    for (std::size_t k = 0; k <= remaining; ++k) {
      e[i] = static_cast<std::uint16_t>(k);
      enumerate(e, i + 1, remaining - k, out);
    }
    e[i] = 0;
  }

  bool relations_hold(std::size_t level) {
    for (auto idx : by_level_[level]) {
      auto& mon = mons_[idx];
      mon_value_b(idx);
      if (mon.is_basis) continue;
      AlgElement expect = B_.zero();
      for (std::size_t s = 0; s < mon.relation.size(); ++s) {
        B_.mod().axpy(expect, mon.relation[s], valueB_[basis_mons_[s]]);
      }
      if (expect != valueB_[idx]) return false;
    }
    return true;
  }

  void mon_value_b(std::size_t idx) {
    const auto& mon = mons_[idx];
    valueB_[idx] = B_.mul(valueB_[mon.pred], images_[mon.var]);
  }

  bool assign(std::size_t k, const Subspace& independent_of) {
    if (k == gens_.size()) {
      std::vector<AlgElement> vals;
      for (auto idx : basis_mons_) vals.push_back(valueB_[idx]);
      return rank_of(B_.mod(), B_.rank(), vals) == B_.rank();
    }
    bool found = false;
    const auto dim = mB_basis_.size();
    for_each_vector(B_.p(), dim, [&](const Vec& c) {
      AlgElement h = B_.zero();
      for (std::size_t i = 0; i < dim; ++i) B_.mod().axpy(h, c[i], mB_basis_[i]);
      if (independent_of.contains(B_.mod(), h)) return true;
      if (++tried_ > budget_) return false;
      images_[k] = h;
      if (!relations_hold(k + 1)) return true;
      if (assign(k + 1, independent_of.with(B_.mod(), {h}))) {
        found = true;
        return false;
      }
      return !exhausted();
    });
    return found;
  }

  const FiniteAlgebra& A_;
  const FiniteAlgebra& B_;
  std::uint64_t budget_;
  std::uint64_t tried_ = 0;
  std::vector<AlgElement> gens_;
  std::vector<Mon> mons_;
  std::vector<std::vector<std::size_t>> by_level_;
  std::vector<std::size_t> basis_mons_;
  IdealSubspace m2B_;
  std::vector<AlgElement> mB_basis_;
  std::vector<AlgElement> valueB_;
  std::vector<AlgElement> images_;
};

}  // namespace detail

/// Decides whether two local algebras over the same field are isomorphic.
/// Stages: compare invariants; if both maximal ideals square to zero, equal
/// ranks suffice; otherwise search for generator images.
inline IsoResult is_isomorphic(const FiniteAlgebra& A, const FiniteAlgebra& B, const IsoOptions& options = {}) {
  if (!(A.field() == B.field())) throw Error(ErrorCode::ModulusMismatch, "algebras over different fields");
  const auto mA = radical(A);
  const auto mB = radical(B);
  IsoResult r;
  auto differ = [&](const std::string& name, const std::string& a, const std::string& b) {
    r.outcome = IsoOutcome::No;
    r.stage = "invariant:" + name;
    r.detail = name + " " + a + " vs " + b;
    return r;
  };
  if (A.rank() != B.rank()) return differ("rank", std::to_string(A.rank()), std::to_string(B.rank()));

  const auto invA = local_invariants(A, mA);
  const auto invB = local_invariants(B, mB);
  if (invA.d != invB.d) return differ("d_vector", detail::join(invA.d), detail::join(invB.d));
  if (invA.socle_dim != invB.socle_dim) {
    return differ("socle", std::to_string(invA.socle_dim), std::to_string(invB.socle_dim));
  }
  if (invA.annihilator_chain != invB.annihilator_chain) {
    return differ("annihilator_chain", detail::join(invA.annihilator_chain), detail::join(invB.annihilator_chain));
  }

  const bool square_zero = invA.d.size() <= 1;
  if (square_zero) {
    // any bijection of the radicals, with 1 -> 1, is an isomorphism
    IsoWitness w;
    w.generators = mA.basis();
    w.images = mB.basis();
    std::vector<AlgElement> src{A.unit()};
    std::vector<AlgElement> dst{B.unit()};
    src.insert(src.end(), w.generators.begin(), w.generators.end());
    dst.insert(dst.end(), w.images.begin(), w.images.end());
    Expresser ex(A.mod(), A.rank(), src);
    for (std::size_t j = 0; j < A.rank(); ++j) {
      const auto c = ex.express(A.basis_element(j));
      AlgElement img = B.zero();
      for (std::size_t s = 0; s < dst.size(); ++s) B.mod().axpy(img, (*c)[s], dst[s]);
      w.basis_images.push_back(std::move(img));
    }
    r.outcome = IsoOutcome::Yes;
    r.stage = "square_zero";
    r.detail = "maximal ideals square to zero, equal rank";
    r.witness = std::move(w);
    return r;
  }

  if (invA.principal_profile != invB.principal_profile) {
    std::ostringstream a;
    std::ostringstream b;
    for (const auto& [k, v] : invA.principal_profile) a << "(" << k.first << "," << k.second << "):" << v << " ";
    for (const auto& [k, v] : invB.principal_profile) b << "(" << k.first << "," << k.second << "):" << v << " ";
    return differ("principal_profile", a.str(), b.str());
  }

  detail::IsoSearch search(A, mA, B, mB, options.budget);
  auto w = search.run();
  r.candidates = search.tried();
  r.stage = "search";
  if (w) {
    r.outcome = IsoOutcome::Yes;
    r.detail = "generator images found after " + std::to_string(search.tried()) + " candidates";
    r.witness = std::move(w);
  } else if (search.exhausted()) {
    r.outcome = IsoOutcome::Undecided;
    r.detail = "search budget of " + std::to_string(options.budget) + " candidates exhausted";
  } else {
    r.outcome = IsoOutcome::No;
    r.detail = "exhaustive search over " + std::to_string(search.tried()) + " candidates found no isomorphism";
  }
  return r;
}

/// Checks that a witness really is an algebra isomorphism: linear bijection,
/// unit to unit, multiplicative on basis pairs.
inline bool check_witness(const FiniteAlgebra& A, const FiniteAlgebra& B, const IsoWitness& w) {
  const auto n = A.rank();
  if (B.rank() != n || w.basis_images.size() != n) return false;
  if (rank_of(B.mod(), n, w.basis_images) != n) return false;
  auto apply = [&](const AlgElement& a) {
    AlgElement img = B.zero();
    for (std::size_t j = 0; j < n; ++j) B.mod().axpy(img, a[j], w.basis_images[j]);
    return img;
  };
  if (apply(A.unit()) != B.unit()) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto prod = A.basis_product(i, j);
      if (apply(Vec(prod.begin(), prod.end())) != B.mul(w.basis_images[i], w.basis_images[j])) return false;
    }
  }
  return true;
}

/// Substitution maps phi: A -> B and psi: B -> A given by images of the
/// presentation variables. True iff both are well-defined homomorphisms
/// (relations map into the target ideal) and they are mutually inverse on
/// the standard monomial bases.
inline bool verify_explicit_iso(const Presentation& A, const Presentation& B,
                                const std::vector<std::string>& phi, const std::vector<std::string>& psi,
                                std::string* why = nullptr) {
  auto fail = [&](std::string msg) {
    if (why != nullptr) *why = std::move(msg);
    return false;
  };
  if (phi.size() != A.ring->nvars() || psi.size() != B.ring->nvars()) return fail("substitution arity mismatch");
  std::vector<Polynomial> phi_img;
  for (const auto& s : phi) phi_img.push_back(parse_polynomial(s, B.ring));
  std::vector<Polynomial> psi_img;
  for (const auto& s : psi) psi_img.push_back(parse_polynomial(s, A.ring));

  for (const auto& g : A.ideal->generators()) {
    if (!B.ideal->contains(g.substitute(phi_img))) return fail("phi does not kill relation " + g.to_string());
  }
  for (const auto& g : B.ideal->generators()) {
    if (!A.ideal->contains(g.substitute(psi_img))) return fail("psi does not kill relation " + g.to_string());
  }
  for (const auto& m : A.ideal->quotient_basis()) {
    const auto f = Polynomial::monomial(A.ring, m);
    if (!A.ideal->contains(f.substitute(phi_img).substitute(psi_img) - f)) {
      return fail("psi(phi(" + f.to_string() + ")) differs");
    }
  }
  for (const auto& m : B.ideal->quotient_basis()) {
    const auto f = Polynomial::monomial(B.ring, m);
    if (!B.ideal->contains(f.substitute(psi_img).substitute(phi_img) - f)) {
      return fail("phi(psi(" + f.to_string() + ")) differs");
    }
  }
  return true;
}

}  // namespace ichomp
