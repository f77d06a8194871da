#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ichomp/error.hpp"
#include "ichomp/field.hpp"
#include "ichomp/groebner.hpp"
#include "ichomp/linalg.hpp"
#include "ichomp/poly.hpp"
#include "ichomp/presentation.hpp"

namespace ichomp {

/// Coordinates of an algebra element in the algebra's basis.
using AlgElement = Vec;

struct NamedElement {
  std::string name;
  AlgElement coords;

  friend bool operator==(const NamedElement&, const NamedElement&) = default;
};

/// A commutative F_p-algebra of finite rank n, given by structure constants:
/// the product of basis elements i and j has coordinates table[(i*n+j)*n ..].
///
/// Elements can be written as polynomials in the named generators, which is
/// how moves are entered; for algebras built from a presentation the
/// generators are the presentation's variables.
class FiniteAlgebra {
 public:
  FiniteAlgebra(PrimeField field, std::vector<std::string> labels,
                std::vector<std::uint8_t> table, AlgElement unit,
                std::vector<NamedElement> generators, std::string description)
      : field_(field),
        mod_(field),
        labels_(std::move(labels)),
        table_(std::move(table)),
        unit_(std::move(unit)),
        generators_(std::move(generators)),
        description_(std::move(description)) {
    const auto n = labels_.size();
    if (n == 0) {
      throw Error(ErrorCode::QuotientIsZeroRing, "the zero ring is not a finite algebra");
    }
    if (table_.size() != n * n * n || unit_.size() != n) {
      throw Error(ErrorCode::InvalidArgument, "structure constant table has wrong shape");
    }
    for (const auto& g : generators_) {
      if (g.coords.size() != n) throw Error(ErrorCode::InvalidArgument, "generator has wrong length");
    }
    std::vector<std::string> names;
    for (const auto& g : generators_) names.push_back(g.name);
    generator_ring_ = PolyRing::make(field_, std::move(names));
  }

  const PrimeField& field() const noexcept { return field_; }
  const Mod& mod() const noexcept { return mod_; }
  std::uint32_t p() const noexcept { return field_.modulus(); }
  std::size_t rank() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::uint8_t>& table() const noexcept { return table_; }
  const AlgElement& unit() const noexcept { return unit_; }
  const std::vector<NamedElement>& generators() const noexcept { return generators_; }
  const std::string& description() const noexcept { return description_; }
  const std::optional<Presentation>& presentation() const noexcept { return presentation_; }

  std::span<const std::uint8_t> basis_product(std::size_t i, std::size_t j) const {
    const auto n = rank();
    return {table_.data() + (i * n + j) * n, n};
  }

  AlgElement zero() const { return AlgElement(rank(), 0); }
  AlgElement basis_element(std::size_t i) const {
    AlgElement e(rank(), 0);
    e.at(i) = 1;
    return e;
  }

  AlgElement mul(const AlgElement& a, const AlgElement& b) const {
    const auto n = rank();
    std::vector<std::uint32_t> acc(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[j] == 0) continue;
        const std::uint32_t c = a[i] * b[j];
        const auto* row = table_.data() + (i * n + j) * n;
        for (std::size_t k = 0; k < n; ++k) acc[k] += c * row[k];
      }
    }
    AlgElement out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = static_cast<std::uint8_t>(acc[k] % p());
    return out;
  }

  /// a * b_j for all basis elements b_j; spans the principal ideal (a).
  std::vector<AlgElement> multiples(const AlgElement& a) const {
    const auto n = rank();
    std::vector<AlgElement> out(n, AlgElement(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::uint32_t> acc(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        const auto* row = table_.data() + (i * n + j) * n;
        for (std::size_t k = 0; k < n; ++k) acc[k] += a[i] * row[k];
      }
      for (std::size_t k = 0; k < n; ++k) out[j][k] = static_cast<std::uint8_t>(acc[k] % p());
    }
    return out;
  }

  AlgElement add(const AlgElement& a, const AlgElement& b) const {
    AlgElement out = a;
    mod_.axpy(out, 1, b);
    return out;
  }
  AlgElement scale(const AlgElement& a, std::uint32_t c) const {
    AlgElement out = a;
    mod_.scale(out, c % p());
    return out;
  }
  AlgElement pow(const AlgElement& a, unsigned e) const {
    AlgElement r = unit_;
    for (unsigned i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }

  /// Evaluates a polynomial in the generator names inside the algebra.
  AlgElement evaluate(const Polynomial& f) const {
    AlgElement out = zero();
    for (const auto& t : f.terms()) {
      AlgElement prod = scale(unit_, t.coeff);
      for (std::size_t i = 0; i < t.mono.exps.size(); ++i) {
        for (unsigned e = 0; e < t.mono.exps[i]; ++e) prod = mul(prod, generators_[i].coords);
      }
      mod_.axpy(out, 1, prod);
    }
    return out;
  }

  AlgElement parse_element(std::string_view text) const {
    return evaluate(parse_polynomial(text, generator_ring_));
  }

  const PolyRingPtr& generator_ring() const noexcept { return generator_ring_; }

  /// Writes a as a linear combination of the basis labels, largest basis
  /// element first. The output parses back to a.
  std::string render(const AlgElement& a) const {
    std::string out;
    const auto P = p();
    for (std::size_t k = rank(); k-- > 0;) {
      const std::uint32_t c = a[k];
      if (c == 0) continue;
      const bool negative = P > 2 && c > P / 2;
      const auto mag = negative ? P - c : c;
      if (out.empty()) {
        if (negative) out += '-';
      } else {
        out += negative ? " - " : " + ";
      }
      if (labels_[k] == "1") {
        out += std::to_string(mag);
      } else {
        if (mag != 1) out += std::to_string(mag) + '*';
        out += labels_[k];
      }
    }
    return out.empty() ? "0" : out;
  }

  /// Checks commutativity, associativity on basis triples, and the unit.
  /// Returns a description of the first failure.
  std::optional<std::string> check_axioms() const {
    const auto n = rank();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto ij = basis_product(i, j);
        auto ji = basis_product(j, i);
        if (!std::equal(ij.begin(), ij.end(), ji.begin())) {
          return "not commutative at (" + labels_[i] + ", " + labels_[j] + ")";
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto bi = basis_element(i);
      if (mul(unit_, bi) != bi) return "unit does not fix " + labels_[i];
      for (std::size_t j = 0; j < n; ++j) {
        const auto bj = basis_element(j);
        const auto ij = mul(bi, bj);
        for (std::size_t k = 0; k < n; ++k) {
          const auto bk = basis_element(k);
          if (mul(ij, bk) != mul(bi, mul(bj, bk))) {
            return "not associative at (" + labels_[i] + ", " + labels_[j] + ", " + labels_[k] + ")";
          }
        }
      }
    }
    return std::nullopt;
  }

  /// Basis = standard monomials of the presentation ideal; structure
  /// constants = normal forms of their pairwise products.
  static FiniteAlgebra from_presentation(const Presentation& pres) {
    const auto& ideal = *pres.ideal;
    const auto basis = ideal.quotient_basis();
    if (basis.empty()) {
      throw Error(ErrorCode::QuotientIsZeroRing, "presentation defines the zero ring");
    }
    const auto n = basis.size();
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(basis[i], i);
    auto coords = [&](const Polynomial& f) {
      const auto nf = ideal.normal_form(f);
      AlgElement v(n, 0);
      for (const auto& t : nf.terms()) v[index.at(t.mono)] = static_cast<std::uint8_t>(t.coeff);
      return v;
    };
    const auto& ring = pres.ring;
    std::vector<std::uint8_t> table(n * n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const auto v = coords(Polynomial::monomial(ring, basis[i] * basis[j]));
        std::copy(v.begin(), v.end(), table.begin() + static_cast<std::ptrdiff_t>((i * n + j) * n));
        std::copy(v.begin(), v.end(), table.begin() + static_cast<std::ptrdiff_t>((j * n + i) * n));
      }
    }
    std::vector<std::string> labels;
    for (const auto& m : basis) labels.push_back(ring->render(m));
    std::vector<NamedElement> gens;
    for (std::size_t v = 0; v < ring->nvars(); ++v) {
      gens.push_back({ring->vars()[v], coords(Polynomial::variable(ring, v))});
    }
    FiniteAlgebra A(ring->field(), std::move(labels), std::move(table),
                    coords(Polynomial::constant(ring, 1)), std::move(gens), pres.text);
    A.presentation_ = pres;
    A.standard_monomials_ = basis;
    return A;
  }

  /// Standard monomials backing the basis, for presentation algebras.
  const std::vector<Monomial>& standard_monomials() const noexcept { return standard_monomials_; }

  friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    return a.field_ == b.field_ && a.labels_ == b.labels_ && a.table_ == b.table_ &&
           a.unit_ == b.unit_ && a.generators_ == b.generators_;
  }

 private:
  PrimeField field_;
  Mod mod_;
  std::vector<std::string> labels_;
  std::vector<std::uint8_t> table_;
  AlgElement unit_;
  std::vector<NamedElement> generators_;
  std::string description_;
  PolyRingPtr generator_ring_;
  std::optional<Presentation> presentation_;
  std::vector<Monomial> standard_monomials_;
};

inline FiniteAlgebra from_presentation(const Presentation& pres) {
  return FiniteAlgebra::from_presentation(pres);
}

/// An ideal of a FiniteAlgebra, stored as the canonical row echelon basis of
/// the underlying subspace.
class IdealSubspace {
 public:
  IdealSubspace() = default;
  explicit IdealSubspace(Subspace span) : span_(std::move(span)) {}

  static IdealSubspace zero(const FiniteAlgebra& A) { return IdealSubspace(Subspace(A.rank())); }
  static IdealSubspace full(const FiniteAlgebra& A) {
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < A.rank(); ++i) basis.push_back(A.basis_element(i));
    return IdealSubspace(Subspace::span(A.mod(), A.rank(), basis));
  }

  const Subspace& span() const noexcept { return span_; }
  std::size_t dim() const noexcept { return span_.dim(); }
  bool is_zero() const noexcept { return span_.is_zero(); }
  bool is_full() const noexcept { return span_.is_full(); }
  std::string key() const { return span_.key(); }
  std::vector<AlgElement> basis() const { return span_.basis(); }
  bool contains(const FiniteAlgebra& A, const AlgElement& a) const {
    return span_.contains(A.mod(), a);
  }
  bool contains(const FiniteAlgebra& A, const IdealSubspace& other) const {
    return span_.contains(A.mod(), other.span_);
  }

  friend bool operator==(const IdealSubspace& a, const IdealSubspace& b) {
    return a.span_ == b.span_;
  }

 private:
  Subspace span_;
};

inline IdealSubspace principal_ideal(const FiniteAlgebra& A, const AlgElement& a) {
  return IdealSubspace(Subspace::span(A.mod(), A.rank(), A.multiples(a)));
}

/// Smallest ideal containing I and a, i.e. I + (a). Since (a) = span{a*b_j}
/// is already an ideal, one span computation closes it.
inline IdealSubspace ideal_add(const FiniteAlgebra& A, const IdealSubspace& I, const AlgElement& a) {
  return IdealSubspace(I.span().with(A.mod(), A.multiples(a)));
}

inline IdealSubspace ideal_sum(const FiniteAlgebra& A, const IdealSubspace& I, const IdealSubspace& J) {
  return IdealSubspace(I.span().with(A.mod(), J.basis()));
}

/// Span of all products u*v, u in I, v in J.
inline IdealSubspace ideal_product(const FiniteAlgebra& A, const IdealSubspace& I, const IdealSubspace& J) {
  std::vector<Vec> prods;
  for (const auto& u : I.basis()) {
    for (const auto& v : J.basis()) prods.push_back(A.mul(u, v));
  }
  return IdealSubspace(Subspace::span(A.mod(), A.rank(), prods));
}

/// ann(I) = { x : x*I = 0 }.
inline IdealSubspace annihilator(const FiniteAlgebra& A, const IdealSubspace& I) {
  const auto n = A.rank();
  const auto gens = I.basis();
  if (gens.empty()) return IdealSubspace::full(A);
  std::vector<Vec> images;
  for (std::size_t i = 0; i < n; ++i) {
    const auto e = A.basis_element(i);
    Vec img;
    for (const auto& u : gens) {
      const auto prod = A.mul(e, u);
      img.insert(img.end(), prod.begin(), prod.end());
    }
    images.push_back(std::move(img));
  }
  return IdealSubspace(Expresser(A.mod(), n * gens.size(), images).kernel());
}

/// True iff multiplication by a is invertible.
inline bool is_unit(const FiniteAlgebra& A, const AlgElement& a) {
  return rank_of(A.mod(), A.rank(), A.multiples(a)) == A.rank();
}

/// When the non-units form an ideal, returns it; nothing otherwise.
inline std::optional<IdealSubspace> local_radical(const FiniteAlgebra& A) {
  const auto n = A.rank();
  std::vector<Vec> nonunits;
  std::uint64_t count = 0;
  for_each_vector(A.p(), n, [&](const Vec& v) {
    if (!is_unit(A, v)) {
      ++count;
      nonunits.push_back(v);
    }
    return true;
  });
  const auto span = Subspace::span(A.mod(), n, nonunits);
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < span.dim(); ++i) size *= A.p();
  if (size != count || span.is_full()) return std::nullopt;
  IdealSubspace m(span);
  for (const auto& v : m.basis()) {
    for (const auto& w : A.multiples(v)) {
      if (!m.contains(A, w)) return std::nullopt;
    }
  }
  return m;
}

inline bool is_local(const FiniteAlgebra& A) { return local_radical(A).has_value(); }

inline IdealSubspace radical(const FiniteAlgebra& A) {
  auto m = local_radical(A);
  if (!m) throw Error(ErrorCode::NotLocal, "algebra is not local: " + A.description());
  return *m;
}

/// Powers m, m^2, ..., ending with the first zero power.
inline std::vector<IdealSubspace> radical_powers(const FiniteAlgebra& A, const IdealSubspace& m) {
  std::vector<IdealSubspace> powers{m};
  while (!powers.back().is_zero()) powers.push_back(ideal_product(A, powers.back(), m));
  return powers;
}

/// d_i = dim(m^i / m^{i+1}) for i >= 1; empty for a field.
inline std::vector<std::size_t> d_vector(const FiniteAlgebra& A, const IdealSubspace& m) {
  const auto powers = radical_powers(A, m);
  std::vector<std::size_t> d;
  for (std::size_t i = 0; i + 1 < powers.size(); ++i) d.push_back(powers[i].dim() - powers[i + 1].dim());
  return d;
}

inline std::vector<std::size_t> d_vector(const FiniteAlgebra& A) { return d_vector(A, radical(A)); }

/// A/I together with the projection A -> A/I. The quotient's basis is the
/// set of A's basis elements on non-pivot columns of I.
struct Quotient {
  FiniteAlgebra algebra;
  IdealSubspace kernel;
  std::vector<std::size_t> kept;
  Mod mod;

  AlgElement project(const AlgElement& a) const {
    const auto r = kernel.span().reduce(mod, a);
    AlgElement out(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) out[i] = r[kept[i]];
    return out;
  }
  /// The canonical preimage: zero on the kernel's pivot columns.
  AlgElement lift(const AlgElement& q, std::size_t ambient) const {
    AlgElement out(ambient, 0);
    for (std::size_t i = 0; i < kept.size(); ++i) out[kept[i]] = q[i];
    return out;
  }
};

inline Quotient quotient_by(const FiniteAlgebra& A, const IdealSubspace& I) {
  if (I.is_full()) throw Error(ErrorCode::QuotientIsZeroRing, "quotient by the whole algebra");
  const auto kept = I.span().free_columns();
  const auto n = A.rank();
  const auto m = kept.size();
  auto project = [&](const Vec& v) {
    const auto r = I.span().reduce(A.mod(), v);
    Vec out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = r[kept[i]];
    return out;
  };
  std::vector<std::uint8_t> table(m * m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto prod = A.basis_product(kept[i], kept[j]);
      const auto q = project(Vec(prod.begin(), prod.end()));
      std::copy(q.begin(), q.end(), table.begin() + static_cast<std::ptrdiff_t>((i * m + j) * m));
    }
  }
  std::vector<std::string> labels;
  for (auto k : kept) labels.push_back(A.labels()[k]);
  std::vector<NamedElement> gens;
  for (const auto& g : A.generators()) gens.push_back({g.name, project(g.coords)});
  std::string desc = A.description() + " / (";
  const auto basis = I.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) desc += (i ? ", " : "") + A.render(basis[i]);
  desc += ")";
  (void)n;
  return Quotient{FiniteAlgebra(A.field(), std::move(labels), std::move(table), project(A.unit()),
                                std::move(gens), std::move(desc)),
                  I, kept, A.mod()};
}

/// A x B with componentwise operations. Basis elements are named a1..an
/// and b1..bm after the factors' bases, and every basis element is a generator.
inline FiniteAlgebra direct_product(const FiniteAlgebra& A, const FiniteAlgebra& B) {
  if (!(A.field() == B.field())) throw Error(ErrorCode::ModulusMismatch, "factors over different fields");
  const auto na = A.rank();
  const auto nb = B.rank();
  const auto n = na + nb;
  std::vector<std::uint8_t> table(n * n * n, 0);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      const auto prod = A.basis_product(i, j);
      std::copy(prod.begin(), prod.end(), table.begin() + static_cast<std::ptrdiff_t>((i * n + j) * n));
    }
  }
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      const auto prod = B.basis_product(i, j);
      std::copy(prod.begin(), prod.end(),
                table.begin() + static_cast<std::ptrdiff_t>(((na + i) * n + (na + j)) * n + na));
    }
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < na; ++i) labels.push_back("a" + std::to_string(i + 1));
  for (std::size_t i = 0; i < nb; ++i) labels.push_back("b" + std::to_string(i + 1));
  AlgElement unit(n, 0);
  std::copy(A.unit().begin(), A.unit().end(), unit.begin());
  std::copy(B.unit().begin(), B.unit().end(), unit.begin() + static_cast<std::ptrdiff_t>(na));
  std::vector<NamedElement> gens;
  for (std::size_t i = 0; i < n; ++i) {
    AlgElement e(n, 0);
    e[i] = 1;
    gens.push_back({labels[i], std::move(e)});
  }
  return FiniteAlgebra(A.field(), std::move(labels), std::move(table), std::move(unit), std::move(gens),
                       "(" + A.description() + ") x (" + B.description() + ")");
}

/// Embeds a pair (a, b) into the product's coordinates.
inline AlgElement pair_element(const AlgElement& a, const AlgElement& b) {
  AlgElement out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace ichomp
