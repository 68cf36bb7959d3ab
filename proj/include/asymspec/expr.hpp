#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "asymspec/matrix.hpp"

namespace asymspec {

// Analytic-function expressions over the spectral variable (written `z` or
// `lambda`) and the family parameter `h`.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' INTEGER)?
//   primary := NUMBER ['i'] | 'i' | 'z' | 'lambda' | 'h'
//            | 'exp' '(' expr ')' | '(' expr ')'
//
// Exponents are integer literals in [0, 64].

enum class Variable { Lambda, H };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct VarNode { Variable var; };
struct ConstNode { Complex value; };
struct NegNode { ExprPtr operand; };
struct ExpNode { ExprPtr operand; };
struct ParenNode { ExprPtr inner; };
struct IntPowNode { ExprPtr base; unsigned exponent; };
struct BinaryNode {
  enum class Op { Add, Sub, Mul, Div };
  Op op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct ExprNode {
  std::variant<VarNode, ConstNode, NegNode, ExpNode, ParenNode, IntPowNode, BinaryNode> node;
};

inline constexpr unsigned kMaxExponent = 64;
inline constexpr double kDivisionFloor = 1e-300;

struct Bindings {
  std::optional<Complex> lambda;
  std::optional<Complex> h;
};

class FuncExpr {
public:
  FuncExpr(std::string source, ExprPtr root) : source_(std::move(source)), root_(std::move(root)) {}

  const std::string& source() const noexcept { return source_; }
  const ExprNode& root() const noexcept { return *root_; }
  bool uses(Variable v) const;

  /// Canonical fully-parenthesized rendering, e.g. "(z^2)".
  std::string to_string() const;

private:
  std::string source_;
  ExprPtr root_;
};

/// Throws ParseError carrying the byte offset and the expected-token set.
FuncExpr parse_expr(std::string_view src);

/// Throws Error(DivisionNearZero) or Error(UnboundVariable).
Complex eval_expr(const FuncExpr& f, const Bindings& bindings);

/// f(lambda) for spectral-variable-only expressions.
inline Complex eval_at(const FuncExpr& f, Complex lambda) {
  return eval_expr(f, Bindings{lambda, std::nullopt});
}

}  // namespace asymspec
