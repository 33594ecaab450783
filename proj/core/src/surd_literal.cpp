#include <cctype>
#include <string>

#include "blspec/exactnum.hpp"

namespace blspec {
namespace {

// Recursive-descent parser for surd literals:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | primary
//   primary := integer | 'sqrt' '(' integer ')' | '(' expr ')'
class SurdParser {
 public:
  explicit SurdParser(std::string_view text) : text_(normalize_minus(text)) {}

  QuadraticSurd parse() {
    QuadraticSurd value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  // U+2212 MINUS SIGN is accepted as '-'; offsets are reported in the
  // rewritten text.
  static std::string normalize_minus(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text.substr(i, 3) == "\xE2\x88\x92") {
        out += '-';
        i += 2;
      } else {
        out += text[i];
      }
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  QuadraticSurd wrap(auto&& op) {
    const std::size_t at = pos_;
    try {
      return op();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), at);
    }
  }

  QuadraticSurd expr() {
    QuadraticSurd value = term();
    for (;;) {
      if (accept('+')) {
        QuadraticSurd rhs = term();
        value = wrap([&] { return value + rhs; });
      } else if (accept('-')) {
        QuadraticSurd rhs = term();
        value = wrap([&] { return value - rhs; });
      } else {
        return value;
      }
    }
  }

  QuadraticSurd term() {
    QuadraticSurd value = unary();
    for (;;) {
      if (accept('*')) {
        QuadraticSurd rhs = unary();
        value = wrap([&] { return value * rhs; });
      } else if (accept('/')) {
        const std::size_t at = pos_;
        QuadraticSurd rhs = unary();
        if (rhs.is_zero()) throw ParseError("division by zero", at);
        value = wrap([&] { return value / rhs; });
      } else {
        return value;
      }
    }
  }

  QuadraticSurd unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  BigInt integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return BigInt(text_.substr(start, pos_ - start), 10);
  }

  QuadraticSurd primary() {
    skip_space();
    if (accept('(')) {
      QuadraticSurd value = expr();
      expect(')');
      return value;
    }
    if (text_.compare(pos_, 4, "sqrt") == 0) {
      pos_ += 4;
      expect('(');
      BigInt radicand = integer();
      expect(')');
      return QuadraticSurd::sqrt_of(radicand);
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      return QuadraticSurd(integer());
    }
    if (pos_ >= text_.size()) fail("unexpected end of input");
    fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

QuadraticSurd parse_surd(std::string_view text) { return SurdParser(text).parse(); }

}  // namespace blspec
