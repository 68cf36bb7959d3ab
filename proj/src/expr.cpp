#include "asymspec/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "asymspec/error.hpp"

namespace asymspec {

namespace {

enum class Tok { Number, Imag, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
  double number = 0.0;
};

[[noreturn]] void fail(std::size_t offset, std::vector<std::string> expected, std::string_view got) {
  std::ostringstream msg;
  msg << "parse error at offset " << offset << ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) msg << (i ? " | " : "") << expected[i];
  msg << ", got " << (got.empty() ? "end of input" : "'" + std::string(got) + "'");
  throw ParseError(offset, std::move(expected), msg.str());
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (i < src.size() && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '.')) ++i;
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
        if (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
          i = j;
          while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        }
      }
      Token t{Tok::Number, start, std::string(src.substr(start, i - start))};
      auto [ptr, ec] = std::from_chars(src.data() + start, src.data() + i, t.number);
      if (ec != std::errc() || ptr != src.data() + i) fail(start, {"number"}, t.text);
      // An immediately following 'i' that does not start a longer identifier
      // makes the literal imaginary.
      if (i < src.size() && src[i] == 'i' &&
          (i + 1 >= src.size() || !std::isalnum(static_cast<unsigned char>(src[i + 1])))) {
        ++i;
        t.kind = Tok::Imag;
        t.text += 'i';
      }
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      out.push_back({Tok::Ident, start, std::string(src.substr(start, i - start))});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default: fail(start, {"number", "identifier", "operator", "'('", "')'"}, std::string(1, c));
    }
    ++i;
    out.push_back({kind, start, std::string(1, c)});
  }
  out.push_back({Tok::End, src.size(), ""});
  return out;
}

ExprPtr make(auto node) { return std::make_shared<const ExprNode>(ExprNode{std::move(node)}); }

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    if (peek().kind != Tok::End) fail(peek().offset, {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"}, peek().text);
    return e;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const auto op = next().kind == Tok::Plus ? BinaryNode::Op::Add : BinaryNode::Op::Sub;
      lhs = make(BinaryNode{op, lhs, term()});
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const auto op = next().kind == Tok::Star ? BinaryNode::Op::Mul : BinaryNode::Op::Div;
      lhs = make(BinaryNode{op, lhs, unary()});
    }
    return lhs;
  }

  ExprPtr unary() {
    if (peek().kind == Tok::Minus) {
      next();
      return make(NegNode{unary()});
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (peek().kind != Tok::Caret) return base;
    next();
    const Token& t = peek();
    if (t.kind != Tok::Number || t.text.find_first_of(".eE") != std::string::npos)
      fail(t.offset, {"integer exponent"}, t.text);
    if (t.number > kMaxExponent) fail(t.offset, {"integer exponent <= 64"}, t.text);
    next();
    return make(IntPowNode{base, static_cast<unsigned>(t.number)});
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        next();
        return make(ConstNode{Complex(t.number, 0.0)});
      case Tok::Imag:
        next();
        return make(ConstNode{Complex(0.0, t.number)});
      case Tok::LParen: {
        next();
        ExprPtr inner = expr();
        expect(Tok::RParen, "')'");
        return make(ParenNode{inner});
      }
      case Tok::Ident: {
        next();
        if (t.text == "z" || t.text == "lambda") return make(VarNode{Variable::Lambda});
        if (t.text == "h") return make(VarNode{Variable::H});
        if (t.text == "i") return make(ConstNode{Complex(0.0, 1.0)});
        if (t.text == "exp") {
          expect(Tok::LParen, "'('");
          ExprPtr inner = expr();
          expect(Tok::RParen, "')'");
          return make(ExpNode{inner});
        }
        fail(t.offset, {"z", "lambda", "h", "i", "exp"}, t.text);
      }
      default:
        fail(t.offset, {"number", "identifier", "'('", "'-'"}, t.text);
    }
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(peek().offset, {what}, peek().text);
    next();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

Complex eval_node(const ExprNode& n, const Bindings& b) {
  return std::visit(
      [&](const auto& node) -> Complex {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, VarNode>) {
          const auto& slot = node.var == Variable::Lambda ? b.lambda : b.h;
          if (!slot)
            throw Error(ErrorCode::UnboundVariable,
                        node.var == Variable::Lambda ? "unbound variable z" : "unbound variable h");
          return *slot;
        } else if constexpr (std::is_same_v<T, ConstNode>) {
          return node.value;
        } else if constexpr (std::is_same_v<T, NegNode>) {
          return -eval_node(*node.operand, b);
        } else if constexpr (std::is_same_v<T, ExpNode>) {
          return std::exp(eval_node(*node.operand, b));
        } else if constexpr (std::is_same_v<T, ParenNode>) {
          return eval_node(*node.inner, b);
        } else if constexpr (std::is_same_v<T, IntPowNode>) {
          const Complex base = eval_node(*node.base, b);
          Complex result{1.0};
          for (unsigned k = 0; k < node.exponent; ++k) result *= base;
          return result;
        } else {
          const Complex l = eval_node(*node.lhs, b);
          const Complex r = eval_node(*node.rhs, b);
          switch (node.op) {
            case BinaryNode::Op::Add: return l + r;
            case BinaryNode::Op::Sub: return l - r;
            case BinaryNode::Op::Mul: return l * r;
            case BinaryNode::Op::Div:
              if (std::abs(r) < kDivisionFloor)
                throw Error(ErrorCode::DivisionNearZero, "division by near-zero denominator");
              return l / r;
          }
          return {};
        }
      },
      n.node);
}

bool node_uses(const ExprNode& n, Variable v) {
  return std::visit(
      [&](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, VarNode>) return node.var == v;
        else if constexpr (std::is_same_v<T, ConstNode>) return false;
        else if constexpr (std::is_same_v<T, NegNode> || std::is_same_v<T, ExpNode>)
          return node_uses(*node.operand, v);
        else if constexpr (std::is_same_v<T, ParenNode>) return node_uses(*node.inner, v);
        else if constexpr (std::is_same_v<T, IntPowNode>) return node_uses(*node.base, v);
        else return node_uses(*node.lhs, v) || node_uses(*node.rhs, v);
      },
      n.node);
}

void render(const ExprNode& n, std::ostringstream& os) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, VarNode>) {
          os << (node.var == Variable::Lambda ? "z" : "h");
        } else if constexpr (std::is_same_v<T, ConstNode>) {
          os << "(" << node.value.real() << (node.value.imag() < 0 ? "" : "+") << node.value.imag() << "i)";
        } else if constexpr (std::is_same_v<T, NegNode>) {
          os << "(-";
          render(*node.operand, os);
          os << ")";
        } else if constexpr (std::is_same_v<T, ExpNode>) {
          os << "exp(";
          render(*node.operand, os);
          os << ")";
        } else if constexpr (std::is_same_v<T, ParenNode>) {
          render(*node.inner, os);
        } else if constexpr (std::is_same_v<T, IntPowNode>) {
          os << "(";
          render(*node.base, os);
          os << "^" << node.exponent << ")";
        } else {
          static constexpr const char* ops[] = {"+", "-", "*", "/"};
          os << "(";
          render(*node.lhs, os);
          os << ops[static_cast<int>(node.op)];
          render(*node.rhs, os);
          os << ")";
        }
      },
      n.node);
}

}  // namespace

bool FuncExpr::uses(Variable v) const { return node_uses(*root_, v); }

std::string FuncExpr::to_string() const {
  std::ostringstream os;
  os.precision(17);
  render(*root_, os);
  return os.str();
}

FuncExpr parse_expr(std::string_view src) {
  Parser p(tokenize(src));
  return FuncExpr(std::string(src), p.parse_all());
}

Complex eval_expr(const FuncExpr& f, const Bindings& bindings) {
  return eval_node(f.root(), bindings);
}

}  // namespace asymspec
