#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ichomp/field.hpp"

namespace ichomp {

/// Coordinate vector over F_p. Entries are always reduced into [0, p).
using Vec = std::vector<std::uint8_t>;

/// Dense linear algebra over a small prime field, on byte-valued entries.
class Mod {
 public:
  explicit Mod(PrimeField field) : field_(field), inv_(field.modulus(), 0) {
    for (std::uint32_t a = 1; a < field.modulus(); ++a) inv_[a] = field.inv(a);
  }

  const PrimeField& field() const noexcept { return field_; }
  std::uint32_t p() const noexcept { return field_.modulus(); }
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    return inv_[a];
  }

  /// y += c * x
  void axpy(std::span<std::uint8_t> y, std::uint32_t c,
            std::span<const std::uint8_t> x) const noexcept {
    if (c == 0) return;
    const auto m = p();
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = static_cast<std::uint8_t>((y[i] + c * x[i]) % m);
    }
  }
  void scale(std::span<std::uint8_t> y, std::uint32_t c) const noexcept {
    const auto m = p();
    for (auto& v : y) v = static_cast<std::uint8_t>((v * c) % m);
  }

 private:
  PrimeField field_;
  std::vector<std::uint32_t> inv_;
};

/// A subspace of F_p^n held as its reduced row echelon basis. The basis is
/// unique for the subspace, so the raw bytes double as a canonical key.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : n_(ambient) {}

  /// Row space of the given vectors.
  static Subspace span(const Mod& mod, std::size_t ambient,
                       const std::vector<Vec>& vectors) {
    std::vector<std::uint8_t> flat;
    flat.reserve(vectors.size() * ambient);
    for (const auto& v : vectors) flat.insert(flat.end(), v.begin(), v.end());
    return from_flat(mod, ambient, std::move(flat));
  }

  /// Row space of `rows` stacked row-major; consumes the buffer.
  static Subspace from_flat(const Mod& mod, std::size_t ambient,
                            std::vector<std::uint8_t> flat) {
    Subspace s(ambient);
    const std::size_t rows = ambient == 0 ? 0 : flat.size() / ambient;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ambient && rank < rows; ++col) {
      std::size_t pivot = rows;
      for (std::size_t r = rank; r < rows; ++r) {
        if (flat[r * ambient + col] != 0) {
          pivot = r;
          break;
        }
      }
      if (pivot == rows) continue;
      if (pivot != rank) {
        std::swap_ranges(flat.begin() + pivot * ambient,
                         flat.begin() + (pivot + 1) * ambient,
                         flat.begin() + rank * ambient);
      }
      std::span<std::uint8_t> prow(flat.data() + rank * ambient, ambient);
      mod.scale(prow, mod.inv(prow[col]));
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == rank) continue;
        std::span<std::uint8_t> row(flat.data() + r * ambient, ambient);
        if (row[col] != 0) mod.axpy(row, mod.p() - row[col], prow);
      }
      s.pivots_.push_back(col);
      ++rank;
    }
    flat.resize(rank * ambient);
    s.rows_ = std::move(flat);
    return s;
  }

  std::size_t ambient() const noexcept { return n_; }
  std::size_t dim() const noexcept { return pivots_.size(); }
  bool is_zero() const noexcept { return pivots_.empty(); }
  bool is_full() const noexcept { return pivots_.size() == n_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  std::span<const std::uint8_t> row(std::size_t i) const {
    return {rows_.data() + i * n_, n_};
  }
  std::vector<Vec> basis() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < dim(); ++i) {
      auto r = row(i);
      out.emplace_back(r.begin(), r.end());
    }
    return out;
  }
  const std::vector<std::uint8_t>& flat() const noexcept { return rows_; }

  /// Canonical byte key: equal keys iff equal subspaces of the same ambient.
  std::string key() const {
    return std::string(rows_.begin(), rows_.end()) + static_cast<char>(n_);
  }

  /// Reduces v against the basis, clearing all pivot coordinates. The result
  /// is the canonical coset representative of v modulo this subspace.
  Vec reduce(const Mod& mod, Vec v) const {
    for (std::size_t i = 0; i < dim(); ++i) {
      const auto c = v[pivots_[i]];
      if (c != 0) mod.axpy(v, mod.p() - c, row(i));
    }
    return v;
  }
  bool contains(const Mod& mod, const Vec& v) const {
    auto r = reduce(mod, v);
    return std::all_of(r.begin(), r.end(), [](auto x) { return x == 0; });
  }
  bool contains(const Mod& mod, const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i) {
      auto r = other.row(i);
      if (!contains(mod, Vec(r.begin(), r.end()))) return false;
    }
    return true;
  }

  /// Smallest subspace containing this one and the extra vectors.
  Subspace with(const Mod& mod, const std::vector<Vec>& extra) const {
    std::vector<std::uint8_t> flat = rows_;
    for (const auto& v : extra) flat.insert(flat.end(), v.begin(), v.end());
    return from_flat(mod, n_, std::move(flat));
  }

  /// Coordinates that are not pivots; the unit vectors on these columns
  /// map to a basis of the quotient space.
  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t c = 0; c < n_; ++c) {
      if (k < pivots_.size() && pivots_[k] == c) {
        ++k;
      } else {
        out.push_back(c);
      }
    }
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::size_t rank_of(const Mod& mod, std::size_t ambient,
                           const std::vector<Vec>& vectors) {
  return Subspace::span(mod, ambient, vectors).dim();
}

/// Calls f(v) for every vector of F_p^n in lexicographic order (coordinate
/// 0 most significant), starting from the zero vector. Stops early when f
/// returns false.
template <class F>
void for_each_vector(std::uint32_t p, std::size_t n, F&& f) {
  Vec v(n, 0);
  while (true) {
    if (!f(static_cast<const Vec&>(v))) return;
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++v[i] < p) break;
      v[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

/// Calls f(c) for each coefficient tuple c in F_p^k whose first nonzero entry
/// is 1, i.e. one representative per point of projective space P^{k-1}.
template <class F>
void for_each_projective(std::uint32_t p, std::size_t k, F&& f) {
  Vec c(k, 0);
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::fill(c.begin(), c.end(), 0);
    c[lead] = 1;
    const std::size_t tail = k - lead - 1;
    while (true) {
      if (!f(static_cast<const Vec&>(c))) return;
      std::size_t i = k;
      bool carry = true;
      while (carry && i > lead + 1) {
        --i;
        if (++c[i] < p) {
          carry = false;
        } else {
          c[i] = 0;
        }
      }
      if (carry || tail == 0) break;
    }
  }
}

/// Writes vectors in terms of a fixed family b_1..b_r: express(v) returns c
/// with sum c_i b_i = v, or nothing when v is outside the span.
class Expresser {
 public:
  Expresser(const Mod& mod, std::size_t ambient, const std::vector<Vec>& family)
      : mod_(&mod), m_(ambient), r_(family.size()) {
    std::vector<std::uint8_t> flat;
    flat.reserve(r_ * (m_ + r_));
    for (std::size_t i = 0; i < r_; ++i) {
      flat.insert(flat.end(), family[i].begin(), family[i].end());
      for (std::size_t j = 0; j < r_; ++j) flat.push_back(i == j ? 1 : 0);
    }
    echelon_ = Subspace::from_flat(mod, m_ + r_, std::move(flat));
  }

  std::optional<Vec> express(const Vec& v) const {
    Vec w(m_ + r_, 0);
    std::copy(v.begin(), v.end(), w.begin());
    for (std::size_t k = 0; k < echelon_.dim(); ++k) {
      const auto col = echelon_.pivots()[k];
      if (col >= m_) break;
      const auto c = w[col];
      if (c != 0) mod_->axpy(w, mod_->p() - c, echelon_.row(k));
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (w[i] != 0) return std::nullopt;
    }
    Vec coeffs(r_);
    for (std::size_t i = 0; i < r_; ++i) {
      coeffs[i] = static_cast<std::uint8_t>(mod_->field().neg(w[m_ + i]));
    }
    return coeffs;
  }

  /// Kernel of the map e_i -> b_i, as a subspace of F_p^r.
  Subspace kernel() const {
    std::vector<Vec> rows;
    for (std::size_t k = 0; k < echelon_.dim(); ++k) {
      if (echelon_.pivots()[k] < m_) continue;
      auto row = echelon_.row(k);
      rows.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(m_), row.end());
    }
    return Subspace::span(*mod_, r_, rows);
  }

 private:
  const Mod* mod_;
  std::size_t m_;
  std::size_t r_;
  Subspace echelon_;
};

}  // namespace ichomp
