#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "ichomp/error.hpp"
#include "ichomp/poly.hpp"

namespace ichomp {

struct GroebnerOptions {
  /// Upper bound on S-polynomials reduced before giving up.
  std::size_t max_spairs = 200000;
};

/// Full reduction of f modulo a list of monic polynomials.
inline Polynomial reduce_by(const Polynomial& f, const std::vector<Polynomial>& basis) {
  const auto& F = f.ring()->field();
  Polynomial rest = f;
  std::vector<Term> remainder;
  while (!rest.is_zero()) {
    const Term lt = rest.leading();
    const Polynomial* divisor = nullptr;
    for (const auto& g : basis) {
      if (g.leading_monomial().divides(lt.mono)) {
        divisor = &g;
        break;
      }
    }
    if (divisor != nullptr) {
      const auto c = F.mul(lt.coeff, F.inv(divisor->leading_coeff()));
      rest = rest - divisor->times_term(lt.mono / divisor->leading_monomial(), c);
    } else {
      remainder.push_back(lt);
      rest = rest - Polynomial::monomial(rest.ring(), lt.mono, lt.coeff);
    }
  }
  return Polynomial(f.ring(), std::move(remainder));
}

namespace detail {

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const auto& F = f.ring()->field();
  const Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  const auto a = f.times_term(l / f.leading_monomial(), F.inv(f.leading_coeff()));
  const auto b = g.times_term(l / g.leading_monomial(), F.inv(g.leading_coeff()));
  return a - b;
}

/// Turns a Groebner basis into the reduced one: minimal leading terms,
/// monic, tails fully reduced, sorted by leading monomial (ascending).
inline std::vector<Polynomial> interreduce(std::vector<Polynomial> g) {
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& li = g[i].leading_monomial();
      const auto& lj = g[j].leading_monomial();
      if (lj.divides(li) && (!(lj == li) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i].monic());
  }
  std::vector<Polynomial> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    const auto& lead = minimal[i].leading();
    Polynomial tail = minimal[i] - Polynomial::monomial(minimal[i].ring(), lead.mono, lead.coeff);
    reduced.push_back(Polynomial::monomial(minimal[i].ring(), lead.mono, 1) + reduce_by(tail, others));
  }
  const auto& ord = reduced.empty() ? MonomialOrder() : reduced.front().ring()->order();
  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ord.less(a.leading_monomial(), b.leading_monomial());
  });
  return reduced;
}

}  // namespace detail

/// Reduced Groebner basis of the ideal generated by `gens`, by Buchberger's
/// algorithm with the coprime and chain criteria.
inline std::vector<Polynomial> buchberger_basis(const std::vector<Polynomial>& gens,
                                                const GroebnerOptions& options = {}) {
  std::vector<Polynomial> g;
  for (const auto& f : gens) {
    if (!f.is_zero()) g.push_back(f.monic());
  }
  if (g.empty()) return {};
  const auto& ord = g.front().ring()->order();

  std::set<std::pair<std::size_t, std::size_t>> pending;
  for (std::size_t j = 1; j < g.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) pending.insert({i, j});
  }
  auto is_pending = [&](std::size_t a, std::size_t b) {
    return pending.count({std::min(a, b), std::max(a, b)}) > 0;
  };

  std::size_t processed = 0;
  while (!pending.empty()) {
    // normal selection strategy: smallest lcm first
    auto best = pending.begin();
    Monomial best_lcm = lcm(g[best->first].leading_monomial(), g[best->second].leading_monomial());
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Monomial l = lcm(g[it->first].leading_monomial(), g[it->second].leading_monomial());
      if (ord.less(l, best_lcm)) {
        best = it;
        best_lcm = std::move(l);
      }
    }
    const auto [i, j] = *best;
    pending.erase(best);

    const auto& li = g[i].leading_monomial();
    const auto& lj = g[j].leading_monomial();
    if (coprime(li, lj)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (g[k].leading_monomial().divides(best_lcm) && !is_pending(i, k) && !is_pending(j, k)) {
        chain = true;
      }
    }
    if (chain) continue;

    if (++processed > options.max_spairs) {
      throw Error(ErrorCode::BudgetExceeded, "Groebner S-pair budget exhausted");
    }
    Polynomial h = reduce_by(detail::s_polynomial(g[i], g[j]), g);
    if (h.is_zero()) continue;
    g.push_back(h.monic());
    const auto n = g.size() - 1;
    for (std::size_t k = 0; k < n; ++k) pending.insert({k, n});
  }
  return detail::interreduce(std::move(g));
}

/// An ideal of a polynomial ring together with its reduced Groebner basis
/// under the ring's order.
class PolyIdeal {
 public:
  PolyIdeal(PolyRingPtr ring, std::vector<Polynomial> generators,
            const GroebnerOptions& options = {})
      : ring_(std::move(ring)), generators_(std::move(generators)) {
    for (const auto& f : generators_) {
      if (!(*f.ring() == *ring_)) {
        throw Error(ErrorCode::RingMismatch, "generator from a different ring");
      }
    }
    gb_ = buchberger_basis(generators_, options);
  }

  const PolyRingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return generators_; }
  const std::vector<Polynomial>& groebner_basis() const noexcept { return gb_; }

  Polynomial normal_form(const Polynomial& f) const { return reduce_by(f, gb_); }
  bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }
  bool is_unit_ideal() const {
    return gb_.size() == 1 && gb_.front().leading_monomial().is_one();
  }

  PolyIdeal plus(const std::vector<Polynomial>& extra) const {
    auto gens = generators_;
    gens.insert(gens.end(), extra.begin(), extra.end());
    return PolyIdeal(ring_, std::move(gens));
  }

  /// Every variable has a pure power among the leading monomials.
  bool is_zero_dimensional() const {
    if (is_unit_ideal()) return true;
    for (std::size_t v = 0; v < ring_->nvars(); ++v) {
      if (!pure_power_bound(v)) return false;
    }
    return true;
  }

  /// Standard monomials: those divisible by no leading monomial of the
  /// basis. Ordered by degree, then from largest to smallest in the ring's
  /// order within a degree, so the constant 1 comes first.
  std::vector<Monomial> quotient_basis() const {
    if (is_unit_ideal()) return {};
    const auto n = ring_->nvars();
    std::vector<std::uint16_t> bound(n);
    for (std::size_t v = 0; v < n; ++v) {
      auto b = pure_power_bound(v);
      if (!b) {
        throw Error(ErrorCode::InfiniteRank,
                    "ideal is not zero-dimensional (no pure power of " + ring_->vars()[v] + ")");
      }
      bound[v] = *b;
    }
    std::vector<Monomial> out;
    Monomial m(n);
    while (true) {
      bool standard = true;
      for (const auto& g : gb_) {
        if (g.leading_monomial().divides(m)) {
          standard = false;
          break;
        }
      }
      if (standard) out.push_back(m);
      std::size_t i = 0;
      while (i < n) {
        if (++m.exps[i] < bound[i]) break;
        m.exps[i] = 0;
        ++i;
      }
      if (i == n) break;
    }
    const auto& ord = ring_->order();
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
      if (a.degree() != b.degree()) return a.degree() < b.degree();
      return ord.compare(a, b) > 0;
    });
    return out;
  }

  std::size_t rank() const { return quotient_basis().size(); }

  friend bool ideal_equal(const PolyIdeal& a, const PolyIdeal& b) {
    if (!(*a.ring_ == *b.ring_)) throw Error(ErrorCode::RingMismatch, "ideals in different rings");
    return a.gb_ == b.gb_;
  }

 private:
  std::optional<std::uint16_t> pure_power_bound(std::size_t v) const {
    std::optional<std::uint16_t> best;
    for (const auto& g : gb_) {
      const auto& lm = g.leading_monomial();
      auto pv = lm.pure_power_variable();
      if (pv && *pv == v && (!best || lm.exps[v] < *best)) best = lm.exps[v];
    }
    return best;
  }

  PolyRingPtr ring_;
  std::vector<Polynomial> generators_;
  std::vector<Polynomial> gb_;
};

inline PolyIdeal buchberger(const PolyRingPtr& ring, const std::vector<Polynomial>& gens,
                            const GroebnerOptions& options = {}) {
  return PolyIdeal(ring, gens, options);
}

inline Polynomial normal_form(const Polynomial& f, const PolyIdeal& ideal) {
  return ideal.normal_form(f);
}

inline std::vector<Monomial> quotient_basis(const PolyIdeal& ideal) {
  return ideal.quotient_basis();
}

}  // namespace ichomp
