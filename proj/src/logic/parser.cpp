#include "cdd/logic/parser.hpp"

#include "cdd/error.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace cdd::logic {

namespace {

enum class Tok { Ident, Number, LParen, RParen, Comma, Dot, Eq, Le, Lt, Ge, Gt, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_digit = [&](std::size_t k) { return k < src.size() && std::isdigit(static_cast<unsigned char>(src[k])); };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(c) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(src.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(c) || ((c == '-' || c == '+') && is_digit(i + 1))) {
      ++i;
      while (is_digit(i)) ++i;
      if (i < src.size() && src[i] == '/' && is_digit(i + 1)) {
        ++i;
        while (is_digit(i)) ++i;
      } else {
        if (i < src.size() && src[i] == '.' && is_digit(i + 1)) {
          ++i;
          while (is_digit(i)) ++i;
        }
        if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
          std::size_t k = i + 1;
          if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
          if (is_digit(k)) {
            i = k;
            while (is_digit(i)) ++i;
          }
        }
      }
      out.push_back({Tok::Number, std::string(src.substr(start, i - start)), start});
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "->") { out.push_back({Tok::Arrow, "->", i}); i += 2; continue; }
    if (two == "<=") { out.push_back({Tok::Le, "<=", i}); i += 2; continue; }
    if (two == ">=") { out.push_back({Tok::Ge, ">=", i}); i += 2; continue; }
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", i}); break;
      case ')': out.push_back({Tok::RParen, ")", i}); break;
      case ',': out.push_back({Tok::Comma, ",", i}); break;
      case '.': out.push_back({Tok::Dot, ".", i}); break;
      case '=': out.push_back({Tok::Eq, "=", i}); break;
      case '<': out.push_back({Tok::Lt, "<", i}); break;
      case '>': out.push_back({Tok::Gt, ">", i}); break;
      default:
        throw SyntaxError(i, "a token", "'" + std::string(1, static_cast<char>(c)) + "'");
    }
    ++i;
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view src, const Signature& sig) : tokens_(lex(src)), sig_(sig) {}

  FormulaPtr parse() {
    FormulaPtr f = implication_level();
    if (peek().kind != Tok::End) throw SyntaxError(peek().pos, "end of input", describe(peek()));
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_++]; }
  bool peek_keyword(std::string_view kw) const { return peek().kind == Tok::Ident && peek().text == kw; }

  Token expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) throw SyntaxError(peek().pos, std::string(what), describe(peek()));
    return next();
  }

  FormulaPtr implication_level() {
    FormulaPtr lhs = disjunction_level();
    if (peek().kind == Tok::Arrow) {
      next();
      return implication(lhs, implication_level());
    }
    return lhs;
  }

  FormulaPtr disjunction_level() {
    FormulaPtr acc = conjunction_level();
    while (peek_keyword("or")) {
      next();
      acc = disjunction(acc, conjunction_level());
    }
    return acc;
  }

  FormulaPtr conjunction_level() {
    FormulaPtr acc = unary();
    while (peek_keyword("and")) {
      next();
      acc = conjunction(acc, unary());
    }
    return acc;
  }

  FormulaPtr unary() {
    if (peek_keyword("not")) {
      next();
      return negation(unary());
    }
    if (peek_keyword("forall") || peek_keyword("exists")) {
      bool universal = next().text == "forall";
      Token var = expect(Tok::Ident, "a variable name");
      if (is_keyword(var.text)) throw SyntaxError(var.pos, "a variable name", describe(var));
      if (sig_.declares(var.text))
        throw SyntaxError(var.pos, "a variable name (not a declared symbol)", describe(var));
      expect(Tok::Dot, "'.'");
      FormulaPtr body = implication_level();
      return universal ? forall(var.text, body) : exists(var.text, body);
    }
    if (peek().kind == Tok::LParen) {
      next();
      FormulaPtr inner = implication_level();
      expect(Tok::RParen, "')'");
      return inner;
    }
    return atom();
  }

  FormulaPtr atom() {
    bool predicate_head = peek().kind == Tok::Ident && sig_.predicate_arity(peek().text).has_value();
    if (predicate_head) {
      Token head = next();
      auto args = argument_list();
      auto arity = *sig_.predicate_arity(head.text);
      if (args.size() != arity)
        throw Error(Errc::ArityMismatch, "'" + head.text + "' expects " + std::to_string(arity) +
                                             " arguments, got " + std::to_string(args.size()));
      if (is_comparator(peek().kind))
        throw SyntaxError(peek().pos, "a connective (predicate '" + head.text + "' is not a term)",
                          describe(peek()));
      return predicate(head.text, std::move(args));
    }
    TermPtr lhs = term();
    Token op = peek();
    if (!is_comparator(op.kind)) throw SyntaxError(op.pos, "'=' or a comparison after term", describe(op));
    next();
    TermPtr rhs = term();
    switch (op.kind) {
      case Tok::Eq: return equal(lhs, rhs);
      case Tok::Le: return compare(Comparison::LessEq, lhs, rhs);
      case Tok::Lt: return compare(Comparison::Less, lhs, rhs);
      case Tok::Ge: return compare(Comparison::GreaterEq, lhs, rhs);
      default: return compare(Comparison::Greater, lhs, rhs);
    }
  }

  static bool is_comparator(Tok k) {
    return k == Tok::Eq || k == Tok::Le || k == Tok::Lt || k == Tok::Ge || k == Tok::Gt;
  }

  std::vector<TermPtr> argument_list() {
    expect(Tok::LParen, "'('");
    std::vector<TermPtr> args;
    args.push_back(term());
    while (peek().kind == Tok::Comma) {
      next();
      args.push_back(term());
    }
    expect(Tok::RParen, "')' or ','");
    return args;
  }

  TermPtr term() {
    if (peek().kind == Tok::Number) {
      Token num = next();
      return literal(Rational::parse(num.text), num.text);
    }
    Token id = expect(Tok::Ident, "a term");
    if (is_keyword(id.text)) throw SyntaxError(id.pos, "a term", describe(id));
    if (sig_.predicate_arity(id.text))
      throw Error(Errc::ArityMismatch, "predicate '" + id.text + "' used as a term");
    if (peek().kind == Tok::LParen) {
      auto arity = sig_.function_arity(id.text);
      if (!arity) throw Error(Errc::UnknownSymbol, "undeclared function symbol '" + id.text + "'");
      auto args = argument_list();
      if (args.size() != *arity)
        throw Error(Errc::ArityMismatch, "'" + id.text + "' expects " + std::to_string(*arity) +
                                             " arguments, got " + std::to_string(args.size()));
      return apply(id.text, std::move(args));
    }
    if (auto arity = sig_.function_arity(id.text)) {
      if (*arity != 0)
        throw Error(Errc::ArityMismatch, "'" + id.text + "' expects " + std::to_string(*arity) + " arguments");
      return apply(id.text);
    }
    return variable(id.text);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Signature& sig_;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text, const Signature& sig, Closure closure) {
  FormulaPtr f = Parser(text, sig).parse();
  if (closure == Closure::RequireSentence) {
    auto free = free_variables(*f);
    if (!free.empty()) throw Error(Errc::FreeVariable, "unbound variable '" + *free.begin() + "'");
  }
  return f;
}

}  // namespace cdd::logic
