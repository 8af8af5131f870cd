#include "helixlab/expr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>

namespace helixlab {

namespace {

const std::vector<std::pair<std::string, UnaryFn>> kFunctions = {
    {"sin", UnaryFn::Sin},   {"cos", UnaryFn::Cos},  {"tan", UnaryFn::Tan},
    {"exp", UnaryFn::Exp},   {"log", UnaryFn::Log},  {"sqrt", UnaryFn::Sqrt},
    {"sinh", UnaryFn::Sinh}, {"cosh", UnaryFn::Cosh}};

std::optional<UnaryFn> function_named(const std::string& name) {
  for (const auto& [fname, fn] : kFunctions) {
    if (fname == name) return fn;
  }
  return std::nullopt;
}

bool is_const(const AstPtr& a, double v) {
  return a->kind == AstKind::Constant && a->value == v;
}

double apply_unary(UnaryFn fn, double x, std::size_t pos) {
  switch (fn) {
    case UnaryFn::Neg:
      return -x;
    case UnaryFn::Sin:
      return std::sin(x);
    case UnaryFn::Cos:
      return std::cos(x);
    case UnaryFn::Tan:
      return std::tan(x);
    case UnaryFn::Exp:
      return std::exp(x);
    case UnaryFn::Log:
      if (x <= 0.0) throw NumericalDomain("log of nonpositive value", pos);
      return std::log(x);
    case UnaryFn::Sqrt:
      if (x < 0.0) throw NumericalDomain("sqrt of negative value", pos);
      return std::sqrt(x);
    case UnaryFn::Sinh:
      return std::sinh(x);
    case UnaryFn::Cosh:
      return std::cosh(x);
  }
  return 0.0;  // unreachable
}

double apply_pow(double base, double expo, std::size_t pos) {
  double rounded = std::nearbyint(expo);
  if (expo == rounded && std::abs(expo) <= 1024.0) {
    // integer fast path; valid for any base
    long long k = static_cast<long long>(rounded);
    if (base == 0.0 && k < 0) throw NumericalDomain("zero raised to a negative power", pos);
    double acc = 1.0;
    double b = base;
    unsigned long long m = static_cast<unsigned long long>(k < 0 ? -k : k);
    while (m > 0) {
      if (m & 1ull) acc *= b;
      b *= b;
      m >>= 1;
    }
    return k < 0 ? 1.0 / acc : acc;
  }
  if (base <= 0.0) {
    throw NumericalDomain("non-integer power of a nonpositive base", pos);
  }
  return std::exp(expo * std::log(base));
}

double apply_binary(BinOp op, double a, double b, std::size_t pos) {
  switch (op) {
    case BinOp::Add:
      return a + b;
    case BinOp::Sub:
      return a - b;
    case BinOp::Mul:
      return a * b;
    case BinOp::Div:
      if (b == 0.0) throw NumericalDomain("division by zero", pos);
      return a / b;
    case BinOp::Pow:
      return apply_pow(a, b, pos);
  }
  return 0.0;  // unreachable
}

// ---- tokenizer -----------------------------------------------------------

enum class TokKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  TokKind kind;
  std::string text;
  double value = 0.0;
  std::size_t pos = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> toks;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t pos = i + 1;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = i;
      while (i < n && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) ++i;
      if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t mark = i;
        ++i;
        if (i < n && (text[i] == '+' || text[i] == '-')) ++i;
        if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
          while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        } else {
          i = mark;  // 'e' belongs to the next token
        }
      }
      std::string s = text.substr(start, i - start);
      char* end = nullptr;
      double v = std::strtod(s.c_str(), &end);
      if (end == nullptr || *end != '\0') {
        throw SyntaxError(pos, "a well-formed number");
      }
      toks.push_back({TokKind::Number, s, v, pos});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      toks.push_back({TokKind::Ident, text.substr(start, i - start), 0.0, pos});
      continue;
    }
    TokKind kind;
    switch (c) {
      case '+': kind = TokKind::Plus; break;
      case '-': kind = TokKind::Minus; break;
      case '*': kind = TokKind::Star; break;
      case '/': kind = TokKind::Slash; break;
      case '^': kind = TokKind::Caret; break;
      case '(': kind = TokKind::LParen; break;
      case ')': kind = TokKind::RParen; break;
      case ',': kind = TokKind::Comma; break;
      default:
        throw SyntaxError(pos, "an operator, parenthesis, number or identifier");
    }
    toks.push_back({kind, std::string(1, c), 0.0, pos});
    ++i;
  }
  toks.push_back({TokKind::End, "", 0.0, n + 1});
  return toks;
}

// ---- recursive-descent parser --------------------------------------------
//
// expr   := term (('+'|'-') term)*
// term   := factor (('*'|'/') factor)*
// factor := base ('^' factor)?          -- right-associative power
// base   := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')' | '-' base

class Parser {
public:
  Parser(std::vector<Token> toks, const std::vector<std::string>& vars,
         const std::vector<std::string>& params)
      : toks_(std::move(toks)), vars_(vars), params_(params) {}

  AstPtr parse_single() {
    AstPtr e = expr();
    expect_end();
    return e;
  }

  std::vector<AstPtr> parse_list() {
    std::vector<AstPtr> out;
    out.push_back(expr());
    while (peek().kind == TokKind::Comma) {
      advance();
      out.push_back(expr());
    }
    expect_end();
    return out;
  }

private:
  const Token& peek() const { return toks_[cursor_]; }
  const Token& advance() { return toks_[cursor_++]; }

  void expect_end() {
    if (peek().kind != TokKind::End) {
      throw SyntaxError(peek().pos, "end of expression, ',' or an operator");
    }
  }

  // Folding may collapse a node; only surviving operator nodes get the
  // source position (evaluation reports domain faults against it).
  static AstPtr with_pos(AstPtr node, AstKind kind, std::size_t pos) {
    if (node->kind != kind || node->pos != 0) return node;
    auto mut = std::make_shared<ExprAst>(*node);
    mut->pos = pos;
    return mut;
  }

  AstPtr expr() {
    AstPtr lhs = term();
    while (peek().kind == TokKind::Plus || peek().kind == TokKind::Minus) {
      const Token& tok = advance();
      BinOp op = tok.kind == TokKind::Plus ? BinOp::Add : BinOp::Sub;
      lhs = with_pos(ast::binary(op, lhs, term()), AstKind::Binary, tok.pos);
    }
    return lhs;
  }

  AstPtr term() {
    AstPtr lhs = factor();
    while (peek().kind == TokKind::Star || peek().kind == TokKind::Slash) {
      const Token& tok = advance();
      BinOp op = tok.kind == TokKind::Star ? BinOp::Mul : BinOp::Div;
      lhs = with_pos(ast::binary(op, lhs, factor()), AstKind::Binary, tok.pos);
    }
    return lhs;
  }

  AstPtr factor() {
    AstPtr b = base();
    if (peek().kind == TokKind::Caret) {
      std::size_t pos = advance().pos;
      return with_pos(ast::binary(BinOp::Pow, b, factor()), AstKind::Binary, pos);
    }
    return b;
  }

  AstPtr base() {
    const Token& t = peek();
    switch (t.kind) {
      case TokKind::Number: {
        advance();
        auto node = std::make_shared<ExprAst>();
        node->kind = AstKind::Constant;
        node->value = t.value;
        node->pos = t.pos;
        return node;
      }
      case TokKind::Minus: {
        std::size_t pos = advance().pos;
        return with_pos(ast::unary(UnaryFn::Neg, base()), AstKind::Unary, pos);
      }
      case TokKind::LParen: {
        advance();
        AstPtr inner = expr();
        if (peek().kind != TokKind::RParen) {
          throw SyntaxError(peek().pos, "')'");
        }
        advance();
        return inner;
      }
      case TokKind::Ident:
        return ident_or_call();
      default:
        throw SyntaxError(t.pos, "a number, identifier, '(' or '-'");
    }
  }

  AstPtr ident_or_call() {
    Token name = advance();
    if (peek().kind == TokKind::LParen) {
      std::size_t paren_pos = advance().pos;
      std::vector<AstPtr> args;
      args.push_back(expr());
      while (peek().kind == TokKind::Comma) {
        advance();
        args.push_back(expr());
      }
      if (peek().kind != TokKind::RParen) {
        throw SyntaxError(peek().pos, "')' or ','");
      }
      advance();
      auto fn = function_named(name.text);
      if (!fn) throw UnknownIdentifier(name.pos, name.text);
      if (args.size() != 1) throw ArityError(paren_pos, name.text, args.size());
      return with_pos(ast::unary(*fn, args[0]), AstKind::Unary, name.pos);
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name.text) {
        auto node = std::make_shared<ExprAst>();
        node->kind = AstKind::Variable;
        node->var_index = static_cast<int>(i);
        node->name = name.text;
        node->pos = name.pos;
        return node;
      }
    }
    if (std::find(params_.begin(), params_.end(), name.text) != params_.end()) {
      auto node = std::make_shared<ExprAst>();
      node->kind = AstKind::Parameter;
      node->name = name.text;
      node->pos = name.pos;
      return node;
    }
    throw UnknownIdentifier(name.pos, name.text);
  }

  std::vector<Token> toks_;
  std::size_t cursor_ = 0;
  const std::vector<std::string>& vars_;
  const std::vector<std::string>& params_;
};

}  // namespace

AstPtr parse_expression(const std::string& text,
                        const std::vector<std::string>& variables,
                        const std::vector<std::string>& parameters) {
  Parser p(tokenize(text), variables, parameters);
  return p.parse_single();
}

std::vector<AstPtr> parse_expression_list(
    const std::string& text, const std::vector<std::string>& variables,
    const std::vector<std::string>& parameters) {
  Parser p(tokenize(text), variables, parameters);
  return p.parse_list();
}

double eval_ast(const ExprAst& ast, const Vec& u, const ParamMap& params) {
  switch (ast.kind) {
    case AstKind::Constant:
      return ast.value;
    case AstKind::Parameter: {
      auto it = params.find(ast.name);
      if (it == params.end()) {
        throw UnknownIdentifier(ast.pos, ast.name);
      }
      return it->second;
    }
    case AstKind::Variable:
      if (ast.var_index < 0 || ast.var_index >= u.size()) {
        throw NumericalDomain("variable index out of range", ast.pos);
      }
      return u[ast.var_index];
    case AstKind::Unary:
      return apply_unary(ast.fn, eval_ast(*ast.lhs, u, params), ast.pos);
    case AstKind::Binary: {
      double a = eval_ast(*ast.lhs, u, params);
      double b = eval_ast(*ast.rhs, u, params);
      double r = apply_binary(ast.op, a, b, ast.pos);
      if (!std::isfinite(r)) throw NumericalDomain("non-finite value", ast.pos);
      return r;
    }
  }
  return 0.0;  // unreachable
}

namespace ast {

AstPtr constant(double v) {
  auto node = std::make_shared<ExprAst>();
  node->kind = AstKind::Constant;
  node->value = v;
  return node;
}

AstPtr parameter(const std::string& name) {
  auto node = std::make_shared<ExprAst>();
  node->kind = AstKind::Parameter;
  node->name = name;
  return node;
}

AstPtr variable(int index) {
  auto node = std::make_shared<ExprAst>();
  node->kind = AstKind::Variable;
  node->var_index = index;
  node->name = "u" + std::to_string(index + 1);
  return node;
}

AstPtr unary(UnaryFn fn, AstPtr a) {
  if (a->kind == AstKind::Constant) {
    // fold when the value is defined; otherwise keep the node so evaluation
    // reports the domain fault with a position
    try {
      return constant(apply_unary(fn, a->value, 0));
    } catch (const NumericalDomain&) {
    }
  }
  if (fn == UnaryFn::Neg && a->kind == AstKind::Unary && a->fn == UnaryFn::Neg) {
    return a->lhs;  // --x = x
  }
  auto node = std::make_shared<ExprAst>();
  node->kind = AstKind::Unary;
  node->fn = fn;
  node->lhs = std::move(a);
  return node;
}

AstPtr binary(BinOp op, AstPtr a, AstPtr b) {
  if (a->kind == AstKind::Constant && b->kind == AstKind::Constant) {
    try {
      return constant(apply_binary(op, a->value, b->value, 0));
    } catch (const NumericalDomain&) {
    }
  }
  switch (op) {
    case BinOp::Add:
      if (is_const(a, 0.0)) return b;
      if (is_const(b, 0.0)) return a;
      break;
    case BinOp::Sub:
      if (is_const(b, 0.0)) return a;
      if (is_const(a, 0.0)) return unary(UnaryFn::Neg, b);
      break;
    case BinOp::Mul:
      if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
      if (is_const(a, 1.0)) return b;
      if (is_const(b, 1.0)) return a;
      if (is_const(a, -1.0)) return unary(UnaryFn::Neg, b);
      if (is_const(b, -1.0)) return unary(UnaryFn::Neg, a);
      break;
    case BinOp::Div:
      if (is_const(a, 0.0) && !is_const(b, 0.0)) return constant(0.0);
      if (is_const(b, 1.0)) return a;
      break;
    case BinOp::Pow:
      if (is_const(b, 1.0)) return a;
      if (is_const(b, 0.0)) return constant(1.0);
      break;
  }
  auto node = std::make_shared<ExprAst>();
  node->kind = AstKind::Binary;
  node->op = op;
  node->lhs = std::move(a);
  node->rhs = std::move(b);
  return node;
}

}  // namespace ast

AstPtr differentiate(const AstPtr& a, int var) {
  using namespace ast;
  switch (a->kind) {
    case AstKind::Constant:
    case AstKind::Parameter:
      return constant(0.0);
    case AstKind::Variable:
      return constant(a->var_index == var ? 1.0 : 0.0);
    case AstKind::Unary: {
      AstPtr inner = a->lhs;
      AstPtr di = differentiate(inner, var);
      switch (a->fn) {
        case UnaryFn::Neg:
          return unary(UnaryFn::Neg, di);
        case UnaryFn::Sin:
          return binary(BinOp::Mul, unary(UnaryFn::Cos, inner), di);
        case UnaryFn::Cos:
          return unary(UnaryFn::Neg,
                       binary(BinOp::Mul, unary(UnaryFn::Sin, inner), di));
        case UnaryFn::Tan: {
          AstPtr c = unary(UnaryFn::Cos, inner);
          return binary(BinOp::Div, di, binary(BinOp::Mul, c, c));
        }
        case UnaryFn::Exp:
          return binary(BinOp::Mul, unary(UnaryFn::Exp, inner), di);
        case UnaryFn::Log:
          return binary(BinOp::Div, di, inner);
        case UnaryFn::Sqrt:
          return binary(BinOp::Div, di,
                        binary(BinOp::Mul, constant(2.0), unary(UnaryFn::Sqrt, inner)));
        case UnaryFn::Sinh:
          return binary(BinOp::Mul, unary(UnaryFn::Cosh, inner), di);
        case UnaryFn::Cosh:
          return binary(BinOp::Mul, unary(UnaryFn::Sinh, inner), di);
      }
      return constant(0.0);  // unreachable
    }
    case AstKind::Binary: {
      AstPtr f = a->lhs, g = a->rhs;
      AstPtr df = differentiate(f, var), dg = differentiate(g, var);
      switch (a->op) {
        case BinOp::Add:
          return binary(BinOp::Add, df, dg);
        case BinOp::Sub:
          return binary(BinOp::Sub, df, dg);
        case BinOp::Mul:
          return binary(BinOp::Add, binary(BinOp::Mul, df, g),
                        binary(BinOp::Mul, f, dg));
        case BinOp::Div:
          return binary(BinOp::Div,
                        binary(BinOp::Sub, binary(BinOp::Mul, df, g),
                               binary(BinOp::Mul, f, dg)),
                        binary(BinOp::Mul, g, g));
        case BinOp::Pow:
          if (g->kind == AstKind::Constant) {
            // d(f^k) = k f^(k-1) f'
            return binary(
                BinOp::Mul, constant(g->value),
                binary(BinOp::Mul,
                       binary(BinOp::Pow, f, constant(g->value - 1.0)), df));
          }
          // d(f^g) = f^g (g' log f + g f'/f)
          return binary(
              BinOp::Mul, binary(BinOp::Pow, f, g),
              binary(BinOp::Add,
                     binary(BinOp::Mul, dg, unary(UnaryFn::Log, f)),
                     binary(BinOp::Mul, g, binary(BinOp::Div, df, f))));
      }
      return constant(0.0);  // unreachable
    }
  }
  return ast::constant(0.0);  // unreachable
}

namespace {

/// Rebuilt nodes keep the source position of the node they came from (unless
/// folding collapsed them into a different kind).
AstPtr keep_pos(AstPtr built, const ExprAst& src) {
  if (built->kind != src.kind || src.pos == 0 || built->pos != 0) return built;
  auto mut = std::make_shared<ExprAst>(*built);
  mut->pos = src.pos;
  return mut;
}

}  // namespace

AstPtr substitute_variables(const AstPtr& a,
                            const std::vector<AstPtr>& replacements) {
  switch (a->kind) {
    case AstKind::Constant:
    case AstKind::Parameter:
      return a;
    case AstKind::Variable:
      if (a->var_index < 0 ||
          a->var_index >= static_cast<int>(replacements.size())) {
        throw BadParameter("substitute_variables: missing replacement for " + a->name);
      }
      return replacements[a->var_index];
    case AstKind::Unary:
      return keep_pos(ast::unary(a->fn, substitute_variables(a->lhs, replacements)),
                      *a);
    case AstKind::Binary:
      return keep_pos(
          ast::binary(a->op, substitute_variables(a->lhs, replacements),
                      substitute_variables(a->rhs, replacements)),
          *a);
  }
  return a;  // unreachable
}

AstPtr bind_parameters(const AstPtr& a, const ParamMap& params) {
  switch (a->kind) {
    case AstKind::Constant:
    case AstKind::Variable:
      return a;
    case AstKind::Parameter: {
      auto it = params.find(a->name);
      if (it == params.end()) throw UnknownIdentifier(a->pos, a->name);
      return ast::constant(it->second);
    }
    case AstKind::Unary:
      return keep_pos(ast::unary(a->fn, bind_parameters(a->lhs, params)), *a);
    case AstKind::Binary:
      return keep_pos(ast::binary(a->op, bind_parameters(a->lhs, params),
                                  bind_parameters(a->rhs, params)),
                      *a);
  }
  return a;  // unreachable
}

std::string to_string(const ExprAst& a) {
  switch (a.kind) {
    case AstKind::Constant: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", a.value);
      std::string s(buf);
      if (a.value < 0.0) return "(" + s + ")";
      return s;
    }
    case AstKind::Parameter:
      return a.name;
    case AstKind::Variable:
      return a.name.empty() ? "u" + std::to_string(a.var_index + 1) : a.name;
    case AstKind::Unary: {
      static const char* names[] = {"-",   "sin", "cos",  "tan", "exp",
                                    "log", "sqrt", "sinh", "cosh"};
      if (a.fn == UnaryFn::Neg) return "(-" + to_string(*a.lhs) + ")";
      return std::string(names[static_cast<int>(a.fn)]) + "(" + to_string(*a.lhs) + ")";
    }
    case AstKind::Binary: {
      static const char* ops[] = {"+", "-", "*", "/", "^"};
      return "(" + to_string(*a.lhs) + ops[static_cast<int>(a.op)] +
             to_string(*a.rhs) + ")";
    }
  }
  return "";  // unreachable
}

}  // namespace helixlab
