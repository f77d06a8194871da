#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ichomp/error.hpp"
#include "ichomp/field.hpp"

namespace ichomp {

/// Dense exponent vector, one entry per ring variable.
struct Monomial {
  std::vector<std::uint16_t> exps;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps(nvars, 0) {}
  explicit Monomial(std::vector<std::uint16_t> e) : exps(std::move(e)) {}

  static Monomial variable(std::size_t nvars, std::size_t i, std::uint16_t e = 1) {
    Monomial m(nvars);
    m.exps[i] = e;
    return m;
  }

  std::size_t nvars() const noexcept { return exps.size(); }
  unsigned degree() const noexcept {
    return std::accumulate(exps.begin(), exps.end(), 0U);
  }
  bool is_one() const noexcept {
    return std::all_of(exps.begin(), exps.end(), [](auto e) { return e == 0; });
  }
  bool divides(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] > other.exps[i]) return false;
    }
    return true;
  }
  /// Index of the only variable with nonzero exponent, if there is exactly one.
  std::optional<std::size_t> pure_power_variable() const noexcept {
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] == 0) continue;
      if (found) return std::nullopt;
      found = i;
    }
    return found;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m(a.nvars());
    for (std::size_t i = 0; i < a.exps.size(); ++i) m.exps[i] = a.exps[i] + b.exps[i];
    return m;
  }
  /// Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m(a.nvars());
    for (std::size_t i = 0; i < a.exps.size(); ++i) m.exps[i] = a.exps[i] - b.exps[i];
    return m;
  }
  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m(a.nvars());
    for (std::size_t i = 0; i < a.exps.size(); ++i) m.exps[i] = std::max(a.exps[i], b.exps[i]);
    return m;
  }
  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.exps.size(); ++i) {
      if (a.exps[i] != 0 && b.exps[i] != 0) return false;
    }
    return true;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

enum class OrderKind { degrevlex, lex };

/// A monomial order over a fixed variable ranking. `ranking[0]` is the
/// largest variable.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  MonomialOrder(OrderKind kind, std::vector<std::size_t> ranking)
      : kind_(kind), ranking_(std::move(ranking)) {}

  static MonomialOrder natural(OrderKind kind, std::size_t nvars) {
    std::vector<std::size_t> r(nvars);
    std::iota(r.begin(), r.end(), 0);
    return MonomialOrder(kind, std::move(r));
  }

  OrderKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& ranking() const noexcept { return ranking_; }

  /// Three-way comparison: negative when a < b.
  int compare(const Monomial& a, const Monomial& b) const noexcept {
    if (kind_ == OrderKind::degrevlex) {
      const auto da = a.degree();
      const auto db = b.degree();
      if (da != db) return da < db ? -1 : 1;
      for (auto it = ranking_.rbegin(); it != ranking_.rend(); ++it) {
        const auto ea = a.exps[*it];
        const auto eb = b.exps[*it];
        if (ea != eb) return ea > eb ? -1 : 1;
      }
      return 0;
    }
    for (auto v : ranking_) {
      const auto ea = a.exps[v];
      const auto eb = b.exps[v];
      if (ea != eb) return ea < eb ? -1 : 1;
    }
    return 0;
  }
  bool less(const Monomial& a, const Monomial& b) const noexcept {
    return compare(a, b) < 0;
  }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  OrderKind kind_ = OrderKind::degrevlex;
  std::vector<std::size_t> ranking_;
};

/// Ambient polynomial ring F_p[vars] with its active monomial order.
class PolyRing {
 public:
  PolyRing(PrimeField field, std::vector<std::string> vars,
           std::optional<MonomialOrder> order = std::nullopt)
      : field_(field),
        vars_(std::move(vars)),
        order_(order ? *order
                     : MonomialOrder::natural(OrderKind::degrevlex, vars_.size())) {
    if (order_.ranking().size() != vars_.size()) {
      throw Error(ErrorCode::InvalidArgument, "order does not match variable count");
    }
  }

  static std::shared_ptr<const PolyRing> make(
      PrimeField field, std::vector<std::string> vars,
      std::optional<MonomialOrder> order = std::nullopt) {
    return std::make_shared<const PolyRing>(field, std::move(vars), std::move(order));
  }

  const PrimeField& field() const noexcept { return field_; }
  std::uint32_t p() const noexcept { return field_.modulus(); }
  const std::vector<std::string>& vars() const noexcept { return vars_; }
  std::size_t nvars() const noexcept { return vars_.size(); }
  const MonomialOrder& order() const noexcept { return order_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) return i;
    }
    return std::nullopt;
  }

  std::string render(const Monomial& m) const {
    std::string out;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
      if (m.exps[i] == 0) continue;
      if (!out.empty()) out += '*';
      out += vars_[i];
      if (m.exps[i] > 1) out += '^' + std::to_string(m.exps[i]);
    }
    return out.empty() ? "1" : out;
  }

  friend bool operator==(const PolyRing&, const PolyRing&) = default;

 private:
  PrimeField field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

struct Term {
  Monomial mono;
  std::uint32_t coeff;
};

/// Polynomial over F_p. Terms are kept sorted by the ring's order, largest
/// first, with no zero coefficients; the zero polynomial has no terms.
class Polynomial {
 public:
  explicit Polynomial(PolyRingPtr ring) : ring_(std::move(ring)) {}

  Polynomial(PolyRingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)) {
    normalize(std::move(terms));
  }

  static Polynomial constant(PolyRingPtr ring, std::int64_t c) {
    const auto v = ring->field().reduce(c);
    Polynomial f(ring);
    if (v != 0) f.terms_.push_back({Monomial(ring->nvars()), v});
    return f;
  }
  static Polynomial variable(PolyRingPtr ring, std::size_t i) {
    Polynomial f(ring);
    f.terms_.push_back({Monomial::variable(ring->nvars(), i), 1});
    return f;
  }
  static Polynomial monomial(PolyRingPtr ring, Monomial m, std::uint32_t c = 1) {
    std::vector<Term> t;
    t.push_back({std::move(m), c});
    return Polynomial(std::move(ring), std::move(t));
  }

  const PolyRingPtr& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const Term& leading() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  std::uint32_t leading_coeff() const { return terms_.front().coeff; }

  unsigned total_degree() const noexcept {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  /// Coefficient of m, zero when absent.
  std::uint32_t coeff_of(const Monomial& m) const {
    for (const auto& t : terms_) {
      if (t.mono == m) return t.coeff;
    }
    return 0;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(ring_->field().inv(leading_coeff()));
  }

  Polynomial scaled(std::uint32_t c) const {
    const auto& F = ring_->field();
    c = c % F.modulus();
    Polynomial out(ring_);
    if (c == 0) return out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.mono, F.mul(t.coeff, c)});
    return out;
  }

  /// c * m * this
  Polynomial times_term(const Monomial& m, std::uint32_t c) const {
    const auto& F = ring_->field();
    Polynomial out(ring_);
    if (c % F.modulus() == 0) return out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.mono * m, F.mul(t.coeff, c)});
    return out;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    return merge(a, b, false);
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return merge(a, b, true);
  }
  Polynomial operator-() const { return scaled(ring_->p() - 1); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_ring(a, b);
    std::vector<Term> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    const auto& F = a.ring_->field();
    for (const auto& s : a.terms_) {
      for (const auto& t : b.terms_) acc.push_back({s.mono * t.mono, F.mul(s.coeff, t.coeff)});
    }
    return Polynomial(a.ring_, std::move(acc));
  }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(ring_, 1);
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1U) result = result * base;
      e >>= 1U;
      if (e > 0) base = base * base;
    }
    return result;
  }

  /// Substitutes images[i] for variable i. The images may live in another
  /// ring, which becomes the ring of the result.
  Polynomial substitute(const std::vector<Polynomial>& images) const {
    if (images.size() != ring_->nvars()) {
      throw Error(ErrorCode::InvalidArgument, "substitution arity mismatch");
    }
    PolyRingPtr target = images.empty() ? ring_ : images.front().ring();
    Polynomial out(target);
    std::vector<std::vector<Polynomial>> powers(images.size());
    for (const auto& t : terms_) {
      Polynomial prod = constant(target, t.coeff);
      for (std::size_t i = 0; i < images.size(); ++i) {
        const auto e = t.mono.exps[i];
        if (e == 0) continue;
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(constant(target, 1));
        while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
        prod = prod * cache[e];
      }
      out = out + prod;
    }
    return out;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    const auto p = ring_->p();
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      const bool negative = p > 2 && t.coeff > p / 2;
      const auto mag = negative ? p - t.coeff : t.coeff;
      if (first) {
        if (negative) out += '-';
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      if (t.mono.is_one()) {
        out += std::to_string(mag);
      } else {
        if (mag != 1) out += std::to_string(mag) + '*';
        out += ring_->render(t.mono);
      }
    }
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].coeff != b.terms_[i].coeff || !(a.terms_[i].mono == b.terms_[i].mono)) {
        return false;
      }
    }
    return *a.ring_ == *b.ring_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& f) {
    return os << f.to_string();
  }

 private:
  static void check_ring(const Polynomial& a, const Polynomial& b) {
    if (a.ring_ != b.ring_ && !(*a.ring_ == *b.ring_)) {
      throw Error(ErrorCode::RingMismatch, "polynomials from different rings");
    }
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    check_ring(a, b);
    const auto& F = a.ring_->field();
    const auto& ord = a.ring_->order();
    Polynomial out(a.ring_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == a.terms_.size()) {
        c = -1;
      } else if (j == b.terms_.size()) {
        c = 1;
      } else {
        c = ord.compare(a.terms_[i].mono, b.terms_[j].mono);
      }
      if (c > 0) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        auto t = b.terms_[j++];
        if (subtract) t.coeff = F.neg(t.coeff);
        out.terms_.push_back(std::move(t));
      } else {
        const auto bc = subtract ? F.neg(b.terms_[j].coeff) : b.terms_[j].coeff;
        const auto s = F.add(a.terms_[i].coeff, bc);
        if (s != 0) out.terms_.push_back({a.terms_[i].mono, s});
        ++i;
        ++j;
      }
    }
    return out;
  }

  void normalize(std::vector<Term> terms) {
    const auto& F = ring_->field();
    const auto& ord = ring_->order();
    std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
      return ord.compare(a.mono, b.mono) > 0;
    });
    terms_.clear();
    for (auto& t : terms) {
      t.coeff %= F.modulus();
      if (!terms_.empty() && terms_.back().mono == t.mono) {
        terms_.back().coeff = F.add(terms_.back().coeff, t.coeff);
      } else {
        terms_.push_back(std::move(t));
      }
    }
    std::erase_if(terms_, [](const Term& t) { return t.coeff == 0; });
  }

  PolyRingPtr ring_;
  std::vector<Term> terms_;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, PolyRingPtr ring) : s_(text), ring_(std::move(ring)) {}

  Polynomial parse_all() {
    skip();
    if (pos_ == s_.size()) throw ParseError(pos_, "empty expression");
    Polynomial f = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return f;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool at_factor_start() {
    skip();
    if (pos_ >= s_.size()) return false;
    const auto c = static_cast<unsigned char>(s_[pos_]);
    return std::isdigit(c) || std::isalpha(c) || c == '(';
  }

  Polynomial expr() {
    bool negate = false;
    if (peek('-')) {
      ++pos_;
      negate = true;
    } else if (peek('+')) {
      ++pos_;
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc = acc + term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (at_factor_start()) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  std::uint64_t uint_literal(bool reduce) {
    skip();
    const auto start = pos_;
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const auto d = static_cast<std::uint64_t>(s_[pos_] - '0');
      v = v * 10 + d;
      if (reduce) {
        v %= ring_->p();
      } else if (v > 1000) {
        throw ParseError(start, "exponent too large");
      }
      ++pos_;
    }
    if (pos_ == start) throw ParseError(pos_, "expected number");
    return v;
  }

  std::optional<unsigned> exponent() {
    if (!peek('^')) return std::nullopt;
    ++pos_;
    return static_cast<unsigned>(uint_literal(false));
  }

  Polynomial factor() {
    skip();
    if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!peek(')')) throw ParseError(pos_, "expected ')'");
      ++pos_;
      if (auto e = exponent()) inner = inner.pow(*e);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Polynomial::constant(ring_, static_cast<std::int64_t>(uint_literal(true)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const auto start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const auto name = s_.substr(start, pos_ - start);
      Polynomial base = variable_product(name, start);
      if (auto e = exponent()) base = base.pow(*e);
      return base;
    }
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  // An identifier that is not a variable is read as a juxtaposition of
  // single-letter variables when that is possible ("xy" -> x*y).
  Polynomial variable_product(std::string_view name, std::size_t at) {
    if (auto idx = ring_->index_of(name)) return Polynomial::variable(ring_, *idx);
    Polynomial prod = Polynomial::constant(ring_, 1);
    for (char ch : name) {
      auto idx = ring_->index_of(std::string_view(&ch, 1));
      if (!idx || !std::isalpha(static_cast<unsigned char>(ch))) {
        throw Error(ErrorCode::UnknownVariable,
                    "unknown variable '" + std::string(name) + "' at position " +
                        std::to_string(at));
      }
      prod = prod * Polynomial::variable(ring_, *idx);
    }
    return prod;
  }

  std::string_view s_;
  PolyRingPtr ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses text in the polynomial grammar over the given ring.
inline Polynomial parse_polynomial(std::string_view text, const PolyRingPtr& ring) {
  return detail::PolyParser(text, ring).parse_all();
}

}  // namespace ichomp
