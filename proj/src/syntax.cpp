#include "grassp/syntax.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "grassp/detail/overloaded.hpp"
#include "grassp/error.hpp"

namespace grassp {
namespace {

using detail::Overloaded;

constexpr std::size_t kMaxNesting = 256;

struct SNode {
  bool is_list = false;
  std::string atom;
  std::vector<SNode> items;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  // Reads exactly one top-level form.
  SNode read_single() {
    skip_space();
    if (at_end()) throw ParseError("empty input", line_, column_);
    SNode node = read(0);
    skip_space();
    if (!at_end()) throw ParseError("unexpected text after form", line_, column_);
    return node;
  }

  // Reads atoms until the end of input; lists are rejected.
  std::vector<SNode> read_atoms() {
    std::vector<SNode> atoms;
    for (skip_space(); !at_end(); skip_space()) {
      SNode node = read(0);
      if (node.is_list) {
        throw ParseError("expected a scalar, found a list", node.line, node.column);
      }
      atoms.push_back(std::move(node));
    }
    return atoms;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (!at_end()) {
      if (peek() == ';') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else {
        break;
      }
    }
  }

  SNode read(std::size_t nesting) {
    if (nesting > kMaxNesting) throw ParseError("nesting too deep", line_, column_);
    SNode node;
    node.line = line_;
    node.column = column_;
    if (peek() == ')') throw ParseError("unexpected ')'", line_, column_);
    if (peek() == '(') {
      node.is_list = true;
      advance();
      for (;;) {
        skip_space();
        if (at_end()) throw ParseError("missing ')'", line_, column_);
        if (peek() == ')') {
          advance();
          break;
        }
        node.items.push_back(read(nesting + 1));
      }
      return node;
    }
    while (!at_end() && peek() != '(' && peek() != ')' && peek() != ';' &&
           !std::isspace(static_cast<unsigned char>(peek()))) {
      node.atom.push_back(peek());
      advance();
    }
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

[[noreturn]] void fail(const SNode& at, const std::string& message) {
  throw ParseError(message, at.line, at.column);
}

const std::set<std::string, std::less<>>& reserved_words() {
  static const std::set<std::string, std::less<>> words = {
      "program", "state", "step", "output", "elem", "element", "if",
      "and",     "or",    "not",  "min",    "max",  "eof",     "inf"};
  return words;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || reserved_words().count(s) > 0) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      return false;
    }
  }
  return true;
}

bool is_head(const SNode& list, std::string_view head) {
  return list.is_list && !list.items.empty() && !list.items[0].is_list &&
         list.items[0].atom == head;
}

std::optional<ArithOp> arith_op(std::string_view s) {
  if (s == "+") return ArithOp::kAdd;
  if (s == "-") return ArithOp::kSub;
  if (s == "*") return ArithOp::kMul;
  if (s == "min") return ArithOp::kMin;
  if (s == "max") return ArithOp::kMax;
  return std::nullopt;
}

std::optional<CmpOp> cmp_op(std::string_view s) {
  if (s == "=") return CmpOp::kEq;
  if (s == "!=") return CmpOp::kNe;
  if (s == "<") return CmpOp::kLt;
  if (s == "<=") return CmpOp::kLe;
  if (s == ">") return CmpOp::kGt;
  if (s == ">=") return CmpOp::kGe;
  return std::nullopt;
}

// Turns S-expressions into Expr/BoolExpr against a set of field names.
class ExprBuilder {
 public:
  explicit ExprBuilder(const std::map<std::string, std::size_t, std::less<>>& fields)
      : fields_(fields) {}

  Expr expr(const SNode& n) const {
    if (!n.is_list) return atom(n);
    if (n.items.empty()) fail(n, "empty expression");
    const SNode& head = n.items[0];
    if (head.is_list) fail(head, "expected an operator");
    if (head.atom == "if") {
      expect_arity(n, 3);
      return Expr::if_then_else(boolean(n.items[1]), expr(n.items[2]),
                                expr(n.items[3]));
    }
    if (auto op = arith_op(head.atom)) {
      expect_arity(n, 2);
      return Expr::arith(*op, expr(n.items[1]), expr(n.items[2]));
    }
    fail(head, "unknown operator '" + head.atom + "'");
  }

  BoolExpr boolean(const SNode& n) const {
    if (!n.is_list || n.items.empty() || n.items[0].is_list) {
      fail(n, "expected a boolean expression");
    }
    const std::string& head = n.items[0].atom;
    if (auto op = cmp_op(head)) {
      expect_arity(n, 2);
      return BoolExpr::compare(*op, expr(n.items[1]), expr(n.items[2]));
    }
    if (head == "and" || head == "or") {
      expect_arity(n, 2);
      auto lhs = boolean(n.items[1]);
      auto rhs = boolean(n.items[2]);
      return head == "and" ? BoolExpr::conjunction(lhs, rhs)
                           : BoolExpr::disjunction(lhs, rhs);
    }
    if (head == "not") {
      expect_arity(n, 1);
      return BoolExpr::negation(boolean(n.items[1]));
    }
    fail(n.items[0], "unknown boolean operator '" + head + "'");
  }

 private:
  Expr atom(const SNode& n) const {
    if (n.atom == "elem" || n.atom == "element") return Expr::input();
    if (auto s = parse_scalar(n.atom)) return Expr::constant(*s);
    if (auto it = fields_.find(n.atom); it != fields_.end()) {
      return Expr::field(it->second);
    }
    if (is_identifier(n.atom)) {
      throw ValidationError({"state index out of range: unknown field '" + n.atom +
                             "' at line " + std::to_string(n.line) + ", column " +
                             std::to_string(n.column)});
    }
    fail(n, "unexpected token '" + n.atom + "'");
  }

  static void expect_arity(const SNode& n, std::size_t args) {
    if (n.items.size() != args + 1) {
      fail(n, "'" + n.items[0].atom + "' takes " + std::to_string(args) +
                  " argument" + (args == 1 ? "" : "s") + ", got " +
                  std::to_string(n.items.size() - 1));
    }
  }

  const std::map<std::string, std::size_t, std::less<>>& fields_;
};

const SNode& section(const SNode& program, std::size_t index, std::string_view name) {
  if (program.items.size() <= index || !is_head(program.items[index], name)) {
    const SNode& at = program.items.size() > index ? program.items[index] : program;
    fail(at, "expected (" + std::string(name) + " ...)");
  }
  return program.items[index];
}

std::string field_name(std::span<const std::string> names, std::size_t index) {
  if (index < names.size()) return names[index];
  return "s" + std::to_string(index);
}

void print_expr(std::ostream& os, const Expr& e, std::span<const std::string> names);

void print_bool(std::ostream& os, const BoolExpr& b,
                std::span<const std::string> names) {
  std::visit(Overloaded{
                 [&](const CmpBool& n) {
                   os << '(' << symbol(n.op) << ' ';
                   print_expr(os, n.lhs, names);
                   os << ' ';
                   print_expr(os, n.rhs, names);
                   os << ')';
                 },
                 [&](const AndBool& n) {
                   os << "(and ";
                   print_bool(os, n.lhs, names);
                   os << ' ';
                   print_bool(os, n.rhs, names);
                   os << ')';
                 },
                 [&](const OrBool& n) {
                   os << "(or ";
                   print_bool(os, n.lhs, names);
                   os << ' ';
                   print_bool(os, n.rhs, names);
                   os << ')';
                 },
                 [&](const NotBool& n) {
                   os << "(not ";
                   print_bool(os, n.operand, names);
                   os << ')';
                 },
             },
             b.node().v);
}

void print_expr(std::ostream& os, const Expr& e, std::span<const std::string> names) {
  std::visit(Overloaded{
                 [&](const ConstExpr& n) { os << n.value; },
                 [&](const InputExpr&) { os << "elem"; },
                 [&](const FieldExpr& n) { os << field_name(names, n.index); },
                 [&](const IfExpr& n) {
                   os << "(if ";
                   print_bool(os, n.cond, names);
                   os << ' ';
                   print_expr(os, n.then_branch, names);
                   os << ' ';
                   print_expr(os, n.else_branch, names);
                   os << ')';
                 },
                 [&](const ArithExpr& n) {
                   os << '(' << symbol(n.op) << ' ';
                   print_expr(os, n.lhs, names);
                   os << ' ';
                   print_expr(os, n.rhs, names);
                   os << ')';
                 },
             },
             e.node().v);
}

}  // namespace

Program parse_program(std::string_view text, std::string name) {
  SNode root = Reader(text).read_single();
  if (!is_head(root, "program")) fail(root, "expected (program ...)");
  if (root.items.size() != 4) {
    fail(root, "program must contain state, step and output sections");
  }

  Program p;
  p.name = std::move(name);
  std::map<std::string, std::size_t, std::less<>> fields;

  const SNode& state = section(root, 1, "state");
  if (state.items.size() < 2) fail(state, "state needs at least one binding");
  for (std::size_t i = 1; i < state.items.size(); ++i) {
    const SNode& b = state.items[i];
    if (!b.is_list || b.items.size() != 2 || b.items[0].is_list || b.items[1].is_list) {
      fail(b, "expected (name scalar)");
    }
    if (!is_identifier(b.items[0].atom)) {
      fail(b.items[0], "invalid field name '" + b.items[0].atom + "'");
    }
    auto value = parse_scalar(b.items[1].atom);
    if (!value) fail(b.items[1], "expected a scalar, got '" + b.items[1].atom + "'");
    if (!fields.emplace(b.items[0].atom, p.field_names.size()).second) {
      fail(b.items[0], "duplicate field '" + b.items[0].atom + "'");
    }
    p.field_names.push_back(b.items[0].atom);
    p.init.push_back(*value);
  }
  p.arity = p.init.size();

  ExprBuilder builder(fields);
  const SNode& step = section(root, 2, "step");
  std::vector<std::optional<Expr>> assigned(p.arity);
  for (std::size_t i = 1; i < step.items.size(); ++i) {
    const SNode& a = step.items[i];
    if (!a.is_list || a.items.size() != 2 || a.items[0].is_list) {
      fail(a, "expected (field expr)");
    }
    auto it = fields.find(a.items[0].atom);
    if (it == fields.end()) fail(a.items[0], "assignment to unknown field '" + a.items[0].atom + "'");
    if (assigned[it->second]) fail(a.items[0], "field '" + it->first + "' assigned twice");
    assigned[it->second] = builder.expr(a.items[1]);
  }
  for (std::size_t i = 0; i < p.arity; ++i) {
    if (!assigned[i]) fail(step, "field '" + p.field_names[i] + "' is not assigned");
    p.step.push_back(*assigned[i]);
  }

  const SNode& output = section(root, 3, "output");
  if (output.items.size() != 2) fail(output, "output takes one expression");
  p.output = builder.expr(output.items[1]);

  require_valid(p);
  return p;
}

std::string pretty_print(const Program& p) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < p.arity; ++i) names.push_back(field_name(p.field_names, i));
  std::ostringstream os;
  os << "(program\n  (state";
  for (std::size_t i = 0; i < p.arity; ++i) {
    os << " (" << names[i] << ' ' << (i < p.init.size() ? p.init[i] : Scalar()) << ')';
  }
  os << ")\n  (step";
  for (std::size_t i = 0; i < p.step.size(); ++i) {
    os << "\n    (" << field_name(names, i) << ' ';
    print_expr(os, p.step[i], names);
    os << ')';
  }
  os << ")\n  (output ";
  print_expr(os, p.output, names);
  os << "))\n";
  return os.str();
}

BoolExpr parse_predicate(std::string_view text) {
  SNode root = Reader(text).read_single();
  static const std::map<std::string, std::size_t, std::less<>> kNoFields;
  return ExprBuilder(kNoFields).boolean(root);
}

InputArray parse_input_array(std::string_view text) {
  InputArray out;
  for (const SNode& atom : Reader(text).read_atoms()) {
    auto s = parse_scalar(atom.atom);
    if (!s) fail(atom, "expected a scalar, got '" + atom.atom + "'");
    out.push_back(*s);
  }
  return out;
}

std::string format_expr(const Expr& e, std::span<const std::string> field_names) {
  std::ostringstream os;
  print_expr(os, e, field_names);
  return os.str();
}

std::string format_bool(const BoolExpr& b, std::span<const std::string> field_names) {
  std::ostringstream os;
  print_bool(os, b, field_names);
  return os.str();
}

}  // namespace grassp
