#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ichomp/error.hpp"
#include "ichomp/groebner.hpp"
#include "ichomp/poly.hpp"

namespace ichomp {

/// A quotient K[vars]/I written down as text, e.g. "K[x,y]/(x,y)^2 + (x+y)".
struct Presentation {
  std::string text;
  PolyRingPtr ring;
  std::shared_ptr<const PolyIdeal> ideal;
};

inline Presentation make_presentation(PrimeField field, std::vector<std::string> vars,
                                      const std::vector<std::string>& generators,
                                      std::string text = {}) {
  auto ring = PolyRing::make(field, std::move(vars));
  std::vector<Polynomial> gens;
  gens.reserve(generators.size());
  for (const auto& g : generators) gens.push_back(parse_polynomial(g, ring));
  if (text.empty()) {
    text = "K[";
    for (std::size_t i = 0; i < ring->nvars(); ++i) text += (i ? "," : "") + ring->vars()[i];
    text += "]";
    if (!generators.empty()) {
      text += "/(";
      for (std::size_t i = 0; i < generators.size(); ++i) text += (i ? ", " : "") + generators[i];
      text += ")";
    }
  }
  return {std::move(text), ring, std::make_shared<const PolyIdeal>(ring, std::move(gens))};
}

namespace detail {

/// presentation := 'K' '[' vars? ']' ('/' ideal ('+' ideal)*)?
/// ideal        := '(' poly (',' poly)* ')' ('^' uint)?
class PresentationParser {
 public:
  PresentationParser(std::string_view text, PrimeField field) : s_(text), field_(field) {}

  Presentation parse() {
    skip();
    if (pos_ >= s_.size() || (s_[pos_] != 'K' && s_[pos_] != 'k')) {
      throw ParseError(pos_, "presentation must start with K[...]");
    }
    ++pos_;
    expect('[');
    std::vector<std::string> vars;
    skip();
    if (!peek(']')) {
      while (true) {
        skip();
        const auto start = pos_;
        if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
          throw ParseError(pos_, "expected variable name");
        }
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        vars.emplace_back(s_.substr(start, pos_ - start));
        if (peek(',')) {
          ++pos_;
          continue;
        }
        break;
      }
    }
    expect(']');
    ring_ = PolyRing::make(field_, vars);
    std::vector<Polynomial> gens;
    skip();
    if (pos_ < s_.size()) {
      expect('/');
      while (true) {
        auto part = ideal();
        gens.insert(gens.end(), part.begin(), part.end());
        if (peek('+')) {
          ++pos_;
          continue;
        }
        break;
      }
    }
    skip();
    if (pos_ != s_.size()) throw ParseError(pos_, "trailing input in presentation");
    return {std::string(s_), ring_, std::make_shared<const PolyIdeal>(ring_, std::move(gens))};
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) throw ParseError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  // Splits the parenthesised list at top-level commas and hands each piece
  // to the polynomial parser.
  std::vector<Polynomial> ideal() {
    expect('(');
    std::vector<Polynomial> parts;
    std::size_t depth = 0;
    std::size_t start = pos_;
    while (true) {
      if (pos_ >= s_.size()) throw ParseError(pos_, "unterminated ideal");
      const char c = s_[pos_];
      if (c == '(') {
        ++depth;
      } else if (c == ')' && depth > 0) {
        --depth;
      } else if ((c == ',' || c == ')') && depth == 0) {
        try {
          parts.push_back(parse_polynomial(s_.substr(start, pos_ - start), ring_));
        } catch (const ParseError& e) {
          throw ParseError(start + e.position(), "in generator");
        }
        ++pos_;
        if (c == ')') break;
        start = pos_;
        continue;
      }
      ++pos_;
    }
    if (peek('^')) {
      ++pos_;
      skip();
      unsigned k = 0;
      const auto at = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        k = k * 10 + static_cast<unsigned>(s_[pos_++] - '0');
      }
      if (pos_ == at || k == 0) throw ParseError(at, "expected positive ideal power");
      parts = power(parts, k);
    }
    return parts;
  }

  static std::vector<Polynomial> power(const std::vector<Polynomial>& gens, unsigned k) {
    std::vector<Polynomial> acc = gens;
    for (unsigned e = 1; e < k; ++e) {
      std::vector<Polynomial> next;
      for (const auto& a : acc) {
        for (const auto& g : gens) next.push_back(a * g);
      }
      acc = std::move(next);
    }
    return acc;
  }

  std::string_view s_;
  PrimeField field_;
  PolyRingPtr ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Presentation parse_presentation(std::string_view text, PrimeField field) {
  return detail::PresentationParser(text, field).parse();
}

}  // namespace ichomp
