#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "helixlab/errors.hpp"
#include "helixlab/numerics.hpp"

namespace helixlab {

enum class AstKind { Constant, Parameter, Variable, Unary, Binary };
enum class UnaryFn { Neg, Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh };
enum class BinOp { Add, Sub, Mul, Div, Pow };

struct ExprAst;
using AstPtr = std::shared_ptr<const ExprAst>;

/// Immutable expression node. Trees are shared freely; differentiation and
/// substitution build new trees that reuse untouched subtrees.
struct ExprAst {
  AstKind kind;
  double value = 0.0;     // Constant
  int var_index = -1;     // Variable, 0-based
  std::string name;       // Parameter or function name (for messages)
  UnaryFn fn = UnaryFn::Neg;
  BinOp op = BinOp::Add;
  AstPtr lhs, rhs;        // Unary uses lhs only
  std::size_t pos = 0;    // 1-based source position; 0 for synthesized nodes
};

using ParamMap = std::map<std::string, double>;

/// Parse one expression over the given variable names (grammar: + - * / ^,
/// parentheses, unary minus, sin cos tan exp log sqrt sinh cosh). Identifiers
/// that are neither variables nor functions must appear in `parameters`.
AstPtr parse_expression(const std::string& text,
                        const std::vector<std::string>& variables,
                        const std::vector<std::string>& parameters = {});

/// Parse a top-level comma-separated list of expressions.
std::vector<AstPtr> parse_expression_list(
    const std::string& text, const std::vector<std::string>& variables,
    const std::vector<std::string>& parameters = {});

double eval_ast(const ExprAst& ast, const Vec& u, const ParamMap& params = {});
inline double eval_ast(const AstPtr& ast, const Vec& u,
                       const ParamMap& params = {}) {
  return eval_ast(*ast, u, params);
}

/// Exact derivative with respect to variable `var`, with constant folding.
AstPtr differentiate(const AstPtr& ast, int var);

/// Replace variable i by replacements[i] (used to compose curve and patch
/// expressions symbolically).
AstPtr substitute_variables(const AstPtr& ast,
                            const std::vector<AstPtr>& replacements);

/// Replace parameters by constants and fold.
AstPtr bind_parameters(const AstPtr& ast, const ParamMap& params);

/// Parenthesized text form; reparses to an evaluation-identical tree.
std::string to_string(const ExprAst& ast);
inline std::string to_string(const AstPtr& ast) { return to_string(*ast); }

// Node builders with constant folding (exposed for tests and the catalog).
namespace ast {
AstPtr constant(double v);
AstPtr parameter(const std::string& name);
AstPtr variable(int index);
AstPtr unary(UnaryFn fn, AstPtr a);
AstPtr binary(BinOp op, AstPtr a, AstPtr b);
}  // namespace ast

}  // namespace helixlab
