#include "fwred/problem.hpp"

#include "fwred/error.hpp"

#include <cctype>
#include <set>

namespace fwred {

namespace {

struct Token {
  enum Kind { name, integer, decimal, punct, end } kind = end;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_blank();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= src_.size()) return t;
    const char ch = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      t.kind = Token::name;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        t.text += advance();
      }
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      t.kind = Token::integer;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t.text += advance();
      if (pos_ + 1 < src_.size() && src_[pos_] == '.' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
        t.kind = Token::decimal;
        t.text += advance();
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t.text += advance();
      }
    } else if (std::string_view("=;+-*/^(),").find(ch) != std::string_view::npos) {
      t.kind = Token::punct;
      t.text = advance();
    } else {
      throw ParseError(std::string("unexpected character '") + ch + "'", line_, column_);
    }
    return t;
  }

 private:
  char advance() {
    const char ch = src_[pos_++];
    if (ch == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return ch;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      if (src_[pos_] == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

const std::set<std::string> kReservedFactors{"i", "b1", "b2", "m1", "m2", "c", "comm", "acomm", "H"};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

  ProblemFile problem() {
    ProblemFile out{nullptr, Expression(std::make_shared<const SymbolTable>()), {}, std::nullopt};
    SymbolTable table;
    bool have_h = false;
    std::set<std::string> config_keys, numeric_keys;
    while (cur_.kind != Token::end) {
      const Token head = expect_name("a statement");
      if (head.text == "symbol" || head.text == "commute") {
        if (have_h) fail("declarations must precede H", head);
        table = head.text == "symbol" ? symbol_decl(table) : commute_decl(table);
      } else if (head.text == "H") {
        if (have_h) fail("H is defined twice", head);
        expect("=");
        out.table = std::make_shared<const SymbolTable>(table);
        table_ = out.table;
        out.hamiltonian = expr();
        have_h = true;
      } else if (head.text == "config") {
        config_stmt(out.config, config_keys);
      } else if (head.text == "numeric") {
        if (!out.numeric) out.numeric = NumericSettings{};
        numeric_stmt(*out.numeric, numeric_keys);
      } else {
        fail("unknown statement '" + head.text + "'", head);
      }
      expect(";");
    }
    if (!have_h) fail("missing Hamiltonian definition 'H = ...;'", cur_);
    return out;
  }

  Expression expression_only(const TablePtr& table) {
    table_ = table;
    Expression e = expr();
    if (cur_.kind != Token::end) fail("unexpected '" + cur_.text + "' after expression", cur_);
    return e;
  }

 private:
  [[noreturn]] static void fail(const std::string& what, const Token& at) {
    throw ParseError(what, at.line, at.column);
  }

  Token take() {
    Token t = cur_;
    cur_ = lex_.next();
    return t;
  }

  bool accept(const char* punct) {
    if (cur_.kind == Token::punct && cur_.text == punct) {
      take();
      return true;
    }
    return false;
  }

  void expect(const char* punct) {
    if (!accept(punct)) fail(std::string("expected '") + punct + "'" + found(), cur_);
  }

  std::string found() const {
    return cur_.kind == Token::end ? " but reached the end of input" : " but found '" + cur_.text + "'";
  }

  Token expect_name(const char* what) {
    if (cur_.kind != Token::name) fail(std::string("expected ") + what + found(), cur_);
    return take();
  }

  int signed_int(const char* what) {
    const Token at = cur_;
    const bool neg = accept("-");
    if (cur_.kind == Token::decimal) fail(std::string(what) + " must be an integer", cur_);
    if (cur_.kind != Token::integer) fail(std::string("expected ") + what + found(), cur_);
    const Token t = take();
    long long v = 0;
    try {
      v = std::stoll(t.text);
    } catch (const std::exception&) {
      fail(std::string(what) + " out of range", at);
    }
    if (v > 1000000) fail(std::string(what) + " out of range", at);
    return static_cast<int>(neg ? -v : v);
  }

  // cpp_int reads a leading zero as an octal prefix.
  static Int base10(const std::string& digits) {
    const auto first = digits.find_first_not_of('0');
    return first == std::string::npos ? Int(0) : Int(digits.substr(first));
  }

  // Exact rational from INT, DECIMAL or INT/INT.
  MassFraction number() {
    const Token t = take();
    MassFraction v;
    if (t.kind == Token::integer) {
      v = MassFraction(MassPoly(base10(t.text)));
    } else {
      const auto dot = t.text.find('.');
      const std::string digits = t.text.substr(0, dot) + t.text.substr(dot + 1);
      Int den = 1;
      for (std::size_t k = dot + 1; k < t.text.size(); ++k) den *= 10;
      v = MassFraction::rational(base10(digits), den);
    }
    return v;
  }

  long double numeric_value() {
    if (cur_.kind != Token::integer && cur_.kind != Token::decimal) fail("expected a number" + found(), cur_);
    const Token at = cur_;
    MassFraction v = number();
    if (accept("/")) {
      if (cur_.kind != Token::integer && cur_.kind != Token::decimal) fail("malformed rational" + found(), cur_);
      const MassFraction d = number();
      if (d.is_zero()) fail("malformed rational: zero denominator", at);
      v = v / d;
    }
    return v.num().constant_value().convert_to<long double>() / v.den().constant_value().convert_to<long double>();
  }

  bool boolean() {
    const Token t = expect_name("true or false");
    if (t.text == "true") return true;
    if (t.text == "false") return false;
    fail("expected true or false but found '" + t.text + "'", t);
  }

  SymbolTable symbol_decl(const SymbolTable& table) {
    const Token name = expect_name("a symbol name");
    if (kReservedFactors.count(name.text) != 0) fail("'" + name.text + "' is reserved", name);
    Parity p;
    for (bool* odd : {&p.odd1, &p.odd2}) {
      const Token g = expect_name("even or odd");
      if (g.text != "even" && g.text != "odd") fail("expected even or odd but found '" + g.text + "'", g);
      *odd = g.text == "odd";
    }
    const Token kw = expect_name("'order'");
    if (kw.text != "order") fail("expected 'order' but found '" + kw.text + "'", kw);
    const int order = signed_int("symbol order");
    try {
      return declare_symbol(table, {name.text, p, order, true});
    } catch (const Error& e) {
      fail(e.what(), name);
    }
  }

  SymbolTable commute_decl(const SymbolTable& table) {
    const Token a = expect_name("a symbol name");
    const Token b = expect_name("a symbol name");
    try {
      return declare_commuting(table, a.text, b.text);
    } catch (const Error& e) {
      fail(e.what(), a);
    }
  }

  void config_stmt(ReductionConfig& cfg, std::set<std::string>& seen) {
    const Token key = expect_name("a config key");
    if (!seen.insert(key.text).second) fail("config key '" + key.text + "' given twice", key);
    expect("=");
    if (key.text == "sequence") {
      cfg.sequence.clear();
      do {
        const Token k = expect_name("oe, eo or oo");
        if (k.text != "oe" && k.text != "eo" && k.text != "oo") fail("unknown generator '" + k.text + "'", k);
        cfg.sequence.push_back(component_from_string(k.text));
      } while (accept(","));
    } else if (key.text == "trunc") {
      cfg.trunc_order = signed_int("truncation order");
    } else if (key.text == "cleanup") {
      cfg.cleanup = boolean();
    } else if (key.text == "masses_equal") {
      cfg.masses_equal = boolean();
    } else if (key.text == "cleanup_first_order_only") {
      cfg.cleanup_first_order_only = boolean();
    } else if (key.text == "max_rounds") {
      cfg.max_rounds = signed_int("max_rounds");
    } else {
      fail("unknown config key '" + key.text + "'", key);
    }
    try {
      cfg.validate();
    } catch (const Error& e) {
      fail(e.what(), key);
    }
  }

  void numeric_stmt(NumericSettings& num, std::set<std::string>& seen) {
    const Token key = expect_name("a numeric key");
    if (!seen.insert(key.text).second) fail("numeric key '" + key.text + "' given twice", key);
    expect("=");
    if (key.text == "m1" || key.text == "m2") {
      const long double v = numeric_value();
      if (!(v > 0)) fail("masses must be positive", key);
      (key.text == "m1" ? num.m1 : num.m2) = v;
    } else if (key.text == "c") {
      num.c_values.clear();
      do {
        const long double v = numeric_value();
        if (!(v > 0)) fail("c values must be positive", key);
        num.c_values.push_back(v);
      } while (accept(","));
    } else if (key.text == "seed") {
      const int s = signed_int("seed");
      if (s < 0) fail("seed must be nonnegative", key);
      num.seed = static_cast<std::uint64_t>(s);
    } else if (key.text == "aux_dim") {
      num.aux_dim = signed_int("aux_dim");
      if (num.aux_dim < 1) fail("aux_dim must be positive", key);
    } else {
      fail("unknown numeric key '" + key.text + "'", key);
    }
  }

  Expression expr() {
    Expression sum = term();
    for (;;) {
      if (accept("+")) {
        sum += term();
      } else if (accept("-")) {
        sum -= term();
      } else {
        return sum;
      }
    }
  }

  Expression term() {
    bool negative = false;
    if (accept("-")) {
      negative = true;
    } else {
      accept("+");
    }
    Expression prod = factor();
    for (;;) {
      if (accept("*")) {
        prod = prod * factor();
      } else if (cur_.kind == Token::punct && cur_.text == "/") {
        const Token at = take();
        prod = divide(prod, factor(), at);
      } else {
        break;
      }
    }
    return negative ? -prod : prod;
  }

  Expression divide(const Expression& a, const Expression& b, const Token& at) {
    if (b.is_zero()) fail("division by zero", at);
    if (b.size() != 1) fail("division by a non-scalar expression", at);
    const auto& [key, coeff] = *b.terms().begin();
    if (!key.word.empty() || key.b1 != 0 || key.b2 != 0) fail("division by a non-scalar expression", at);
    const MassFraction norm = coeff.re * coeff.re + coeff.im * coeff.im;
    const Coefficient inverse(coeff.re / norm, -coeff.im / norm);
    return inverse * (a * Expression::c_power(table_, -key.c_exp));
  }

  Expression factor() {
    Expression base = atom();
    if (cur_.kind == Token::punct && cur_.text == "^") {
      const Token caret = take();
      const int e = signed_int("exponent");
      if (e < 0) fail("negative powers are allowed only for m1, m2 and c", caret);
      Expression out = Expression::scalar(table_, 1);
      for (int k = 0; k < e; ++k) out = out * base;
      return out;
    }
    return base;
  }

  Expression atom() {
    const Token t = cur_;
    if (t.kind == Token::integer || t.kind == Token::decimal) return Expression::scalar(table_, number());
    if (accept("(")) {
      Expression e = expr();
      expect(")");
      return e;
    }
    if (t.kind != Token::name) fail("expected a factor" + found(), t);
    take();
    if (t.text == "i") return Expression::scalar(table_, Coefficient::i());
    if (t.text == "b1" || t.text == "b2") return Expression::beta(table_, t.text == "b1" ? 1 : 2);
    if (t.text == "m1" || t.text == "m2" || t.text == "c") {
      int e = 1;
      if (accept("^")) e = signed_int(t.text == "c" ? "c exponent" : "mass exponent");
      if (t.text == "c") return Expression::c_power(table_, e);
      return Expression::scalar(table_, MassFraction::mass_power(t.text == "m1" ? 1 : 2, e));
    }
    if (t.text == "comm" || t.text == "acomm") {
      expect("(");
      Expression a = expr();
      expect(",");
      Expression b = expr();
      expect(")");
      return t.text == "comm" ? commutator(a, b) : anticommutator(a, b);
    }
    if (t.text == "H") fail("H cannot appear inside an expression", t);
    if (!table_->find(t.text)) fail("undeclared symbol '" + t.text + "'", t);
    return Expression::symbol(table_, t.text);
  }

  Lexer lex_;
  Token cur_;
  TablePtr table_;
};

}  // namespace

ProblemFile parse_problem(std::string_view text) { return Parser(text).problem(); }

Expression parse_expression(std::string_view text, const TablePtr& table) {
  return Parser(text).expression_only(table);
}

}  // namespace fwred
