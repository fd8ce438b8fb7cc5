// Text syntax for user-defined functionals.
//
//   expr    := ['+'|'-'] product (('+'|'-') product)*
//   product := postfix ('*' postfix)*
//   postfix := primary ("'")* ('^' integer)?
//   primary := number | symbol | '1' | '[' symbol ("'")? ('^' integer)? ']' | '(' expr ')'
//   number  := decimal float, optionally followed by 'j' (imaginary)
//
// Symbols name tuple slots. A number c denotes c times the unit symbol, so
// `1 - x'*x` is the isometry functional and `2j*x` is 2i x. `[x^m]` is the
// range projection of x^m, `[x'^m]` that of (x*)^m. Several functionals
// may be given separated by ';'.

#ifndef BAERDEC_FUNCTIONAL_PARSER_HPP
#define BAERDEC_FUNCTIONAL_PARSER_HPP

#include "properties.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

namespace baerdec {

class FunctionalParser {
public:
  FunctionalParser(std::string_view text, const std::vector<std::string>& symbols)
      : text_(text), symbols_(symbols) {}

  StarPolynomial parse() {
    StarPolynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("functional syntax error at column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  StarPolynomial expr() {
    StarPolynomial acc;
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    acc = product();
    if (negate) acc = acc * cplx(-1.0);
    for (;;) {
      if (accept('+')) acc += product();
      else if (accept('-')) acc -= product();
      else break;
    }
    return acc;
  }

  StarPolynomial product() {
    StarPolynomial acc = postfix();
    while (accept('*')) acc = acc * postfix();
    return acc;
  }

  StarPolynomial postfix() {
    StarPolynomial p = primary();
    while (accept('\'')) p = p.adjoint();
    if (accept('^')) {
      const int k = integer();
      if (k < 1) fail("exponent must be positive");
      StarPolynomial base = p;
      for (int i = 1; i < k; ++i) p = p * base;
    }
    return p;
  }

  int integer() {
    skip_ws();
    int v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc()) fail("expected an integer");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  int symbol_slot() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      fail("expected a symbol");
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (symbols_[i] == name) return static_cast<int>(i);
    pos_ = start;
    fail("unknown symbol '" + name + "'");
  }

  StarPolynomial number() {
    const char* begin = text_.data() + pos_;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), v);
    if (ec != std::errc()) fail("malformed number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    if (pos_ < text_.size() && text_[pos_] == 'j') {
      ++pos_;
      return StarPolynomial::scalar(cplx(0.0, v));
    }
    return StarPolynomial::scalar(cplx(v, 0.0));
  }

  StarPolynomial primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      StarPolynomial p = expr();
      expect(')');
      return p;
    }
    if (c == '[') {
      ++pos_;
      const int slot = symbol_slot();
      bool adj = false;
      while (accept('\'')) adj = !adj;
      int m = 1;
      if (accept('^')) m = integer();
      if (m < 1) fail("range-projection exponent must be positive");
      expect(']');
      return StarPolynomial::range_power(slot, m, adj);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == 'j' && (pos_ + 1 >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      // bare 'j' is the imaginary unit unless it names a symbol
      for (const auto& s : symbols_)
        if (s == "j") return StarPolynomial::element(symbol_slot());
      ++pos_;
      return StarPolynomial::scalar(cplx(0.0, 1.0));
    }
    return StarPolynomial::element(symbol_slot());
  }

  std::string_view text_;
  const std::vector<std::string>& symbols_;
  std::size_t pos_ = 0;
};

/// Parses one functional over the given tuple symbols.
inline StarPolynomial parse_functional(std::string_view text, const std::vector<std::string>& symbols) {
  return FunctionalParser(text, symbols).parse();
}

/// Parses a ';'-separated list of functionals into a property spec whose
/// arity is the number of symbols.
inline PropertySpec parse_property(std::string_view text, const std::vector<std::string>& symbols,
                                   std::string name = "user") {
  if (symbols.empty()) throw InputError("a user property needs at least one tuple symbol");
  PropertySpec spec{std::move(name), static_cast<int>(symbols.size()), {}};
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view piece = text.substr(start, end - start);
    if (piece.find_first_not_of(" \t\r\n") != std::string_view::npos) {
      StarPolynomial p = parse_functional(piece, symbols);
      spec.functionals.push_back({p.to_string(symbols), std::move(p)});
    }
    start = end + 1;
  }
  spec.validate();
  return spec;
}

}  // namespace baerdec

#endif  // BAERDEC_FUNCTIONAL_PARSER_HPP
