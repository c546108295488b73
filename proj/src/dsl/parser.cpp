#include <cctype>
#include <map>

#include "flagrank/dsl/dsl.hpp"
#include "flagrank/errors.hpp"
#include "parser_internal.hpp"

namespace flagrank::dsl {

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names = {"growth", "classify", "flag", "symbol",
                                                 "branch", "scan",     "lift"};
  return names;
}

namespace detail {

namespace {

bool is_keyword(const std::string& s) {
  static const char* const words[] = {"chart", "field", "form", "dist", "point",
                                      "task",  "ann",   "span", "d"};
  for (const char* w : words) {
    if (s == w) return true;
  }
  return false;
}

}  // namespace

std::vector<Token> tokenize(const ModelSource& src) {
  std::vector<Token> out;
  const std::string& t = src.text;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (t[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto ident_len = [&](std::size_t from) {
    std::size_t j = from;
    while (j < t.size() && (std::isalnum(static_cast<unsigned char>(t[j])) || t[j] == '_')) ++j;
    return j - from;
  };
  while (i < t.size()) {
    const char c = t[i];
    if (c == '#') {
      while (i < t.size() && t[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    SourcePos pos{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t n = ident_len(i);
      out.push_back({Token::Ident, t.substr(i, n), pos});
      advance(n);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 0;
      while (i + n < t.size() && std::isdigit(static_cast<unsigned char>(t[i + n]))) ++n;
      if (i + n < t.size() && (std::isalpha(static_cast<unsigned char>(t[i + n])) || t[i + n] == '_')) {
        throw ParseError(ErrorKind::SyntaxError, "malformed number", src.origin, line, col + n);
      }
      out.push_back({Token::Number, t.substr(i, n), pos});
      advance(n);
    } else if (c == '@') {
      std::size_t n = ident_len(i + 1);
      if (n == 0 || std::isdigit(static_cast<unsigned char>(t[i + 1]))) {
        throw ParseError(ErrorKind::SyntaxError, "expected a variable name after '@'", src.origin,
                         line, col + 1);
      }
      out.push_back({Token::AtIdent, t.substr(i + 1, n), pos});
      advance(n + 1);
    } else if (std::string_view("()[],=+-*/^;").find(c) != std::string_view::npos) {
      out.push_back({Token::Punct, std::string(1, c), pos});
      advance(1);
    } else {
      std::string shown = (static_cast<unsigned char>(c) < 0x80) ? std::string(1, c) : "non-ASCII byte";
      throw ParseError(ErrorKind::SyntaxError, "unexpected character '" + shown + "'", src.origin,
                       line, col);
    }
  }
  out.push_back({Token::End, "", {line, col}});
  return out;
}

Parser::Parser(const ModelSource& src) : src_(src), toks_(tokenize(src)) { ast_.origin = src.origin; }

const Token& Parser::peek(std::size_t ahead) const {
  return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
}

const Token& Parser::next() {
  const Token& t = toks_[pos_];
  if (pos_ + 1 < toks_.size()) ++pos_;
  return t;
}

bool Parser::at_punct(char c) const { return peek().kind == Token::Punct && peek().text[0] == c; }

bool Parser::at_word(std::string_view w) const { return peek().kind == Token::Ident && peek().text == w; }

void Parser::fail(ErrorKind kind, const std::string& msg, SourcePos pos) const {
  throw ParseError(kind, msg, src_.origin, pos.line, pos.column);
}

std::string Parser::describe(const Token& t) {
  switch (t.kind) {
    case Token::End: return "end of input";
    case Token::AtIdent: return "'@" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

void Parser::expect_punct(char c) {
  if (!at_punct(c)) {
    fail(ErrorKind::SyntaxError, std::string("expected '") + c + "', found " + describe(peek()),
         peek().pos);
  }
  next();
}

std::string Parser::expect_name(const char* what) {
  const Token& t = peek();
  if (t.kind != Token::Ident) {
    fail(ErrorKind::SyntaxError, std::string("expected ") + what + ", found " + describe(t), t.pos);
  }
  if (is_keyword(t.text)) {
    fail(ErrorKind::SyntaxError, "'" + t.text + "' is a reserved word", t.pos);
  }
  return next().text;
}

void Parser::declare(const std::string& name, Symbol sym, SourcePos pos) {
  if (!symbols_.emplace(name, sym).second) {
    fail(ErrorKind::SyntaxError, "'" + name + "' is already defined", pos);
  }
}

void Parser::declare_chart(const std::string& name, const std::vector<std::string>& vars,
                           SourcePos pos) {
  if (ast_.chart) {
    fail(ErrorKind::InconsistentChart,
         "a model has a single chart; '" + ast_.chart->name + "' is already declared", pos);
  }
  declare(name, {SymKind::Chart, 0}, pos);
  for (std::size_t i = 0; i < vars.size(); ++i) declare(vars[i], {SymKind::Variable, i}, pos);
  ast_.chart = ChartDecl{name, vars, pos};
  chart_ = make_chart(name, vars);
}

ModelAst Parser::parse_model() {
  while (peek().kind != Token::End) {
    if (at_punct(';')) {
      next();
      continue;
    }
    const Token& kw = peek();
    if (kw.kind != Token::Ident) {
      fail(ErrorKind::SyntaxError, "expected a statement, found " + describe(kw), kw.pos);
    }
    if (kw.text == "chart") {
      parse_chart();
    } else if (kw.text == "field") {
      parse_field();
    } else if (kw.text == "form") {
      parse_form();
    } else if (kw.text == "dist") {
      parse_dist();
    } else if (kw.text == "point") {
      parse_point_decl();
    } else if (kw.text == "task") {
      parse_task();
    } else {
      fail(ErrorKind::SyntaxError,
           "expected 'chart', 'field', 'form', 'dist', 'point' or 'task', found " + describe(kw),
           kw.pos);
    }
  }
  return std::move(ast_);
}

void Parser::parse_chart() {
  SourcePos pos = next().pos;
  std::string name = expect_name("a chart name");
  expect_punct('(');
  std::vector<std::string> vars;
  std::vector<SourcePos> var_pos;
  do {
    var_pos.push_back(peek().pos);
    vars.push_back(expect_name("a variable name"));
  } while (at_punct(',') && (next(), true));
  expect_punct(')');
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (vars[i] == vars[j]) fail(ErrorKind::SyntaxError, "duplicate variable '" + vars[i] + "'", var_pos[i]);
    }
  }
  declare_chart(name, vars, pos);
}

void Parser::parse_field() {
  SourcePos pos = next().pos;
  SourcePos name_pos = peek().pos;
  std::string name = expect_name("a field name");
  expect_punct('=');
  ExprPtr e = parse_expr();
  if (e->type != ExprType::Vector) fail(ErrorKind::TypeError, "field '" + name + "' must be a vector expression", e->pos);
  declare(name, {SymKind::Field, ast_.fields.size()}, name_pos);
  ast_.fields.push_back({name, e, pos});
}

void Parser::parse_form() {
  SourcePos pos = next().pos;
  SourcePos name_pos = peek().pos;
  std::string name = expect_name("a form name");
  expect_punct('=');
  ExprPtr e = parse_expr();
  if (e->type != ExprType::Form) fail(ErrorKind::TypeError, "form '" + name + "' must be a one-form expression", e->pos);
  declare(name, {SymKind::Form, ast_.forms.size()}, name_pos);
  ast_.forms.push_back({name, e, pos});
}

void Parser::parse_dist() {
  SourcePos pos = next().pos;
  SourcePos name_pos = peek().pos;
  std::string name = expect_name("a distribution name");
  expect_punct('=');
  const Token& kind_tok = peek();
  DistKind kind;
  if (at_word("ann")) {
    kind = DistKind::Ann;
  } else if (at_word("span")) {
    kind = DistKind::Span;
  } else {
    fail(ErrorKind::SyntaxError, "expected 'ann' or 'span', found " + describe(kind_tok), kind_tok.pos);
  }
  next();
  expect_punct('(');
  std::vector<std::string> members;
  do {
    const Token& t = peek();
    if (t.kind != Token::Ident) fail(ErrorKind::SyntaxError, "expected a name, found " + describe(t), t.pos);
    auto it = symbols_.find(t.text);
    if (it == symbols_.end()) fail(ErrorKind::UnknownIdentifier, "unknown identifier '" + t.text + "'", t.pos);
    SymKind want = kind == DistKind::Ann ? SymKind::Form : SymKind::Field;
    if (it->second.kind != want) {
      fail(ErrorKind::TypeError,
           "'" + t.text + "' is not a " + (kind == DistKind::Ann ? "form" : "field"), t.pos);
    }
    members.push_back(next().text);
  } while (at_punct(',') && (next(), true));
  expect_punct(')');
  declare(name, {SymKind::Dist, ast_.dists.size()}, name_pos);
  ast_.dists.push_back({name, kind, members, pos});
}

void Parser::parse_point_decl() {
  SourcePos pos = next().pos;
  SourcePos name_pos = peek().pos;
  std::string name = expect_name("a point name");
  expect_punct('=');
  std::vector<ExprPtr> coords = parse_coordinates();
  declare(name, {SymKind::Point, ast_.points.size()}, name_pos);
  ast_.points.push_back({name, std::move(coords), pos});
}

std::vector<ExprPtr> Parser::parse_coordinates() {
  SourcePos open = peek().pos;
  if (!chart_) fail(ErrorKind::UnknownIdentifier, "point declared before any chart", open);
  expect_punct('(');
  std::vector<ExprPtr> coords;
  do {
    ExprPtr e = parse_expr();
    if (e->type != ExprType::Scalar || depends_on_variables(*e)) {
      fail(ErrorKind::TypeError, "point coordinates must be rational constants", e->pos);
    }
    coords.push_back(std::move(e));
  } while (at_punct(',') && (next(), true));
  expect_punct(')');
  if (coords.size() != chart_->dimension()) {
    fail(ErrorKind::ArityError,
         "point has " + std::to_string(coords.size()) + " coordinates, chart '" + chart_->name() +
             "' has dimension " + std::to_string(chart_->dimension()),
         open);
  }
  return coords;
}

void Parser::parse_task() {
  SourcePos pos = next().pos;
  const Token& t = peek();
  if (t.kind != Token::Ident) fail(ErrorKind::SyntaxError, "expected a task name, found " + describe(t), t.pos);
  bool known = false;
  for (const auto& n : task_names()) known = known || n == t.text;
  if (!known) fail(ErrorKind::UnknownIdentifier, "unknown task '" + t.text + "'", t.pos);
  TaskDecl task{next().text, {}, pos};
  if (at_punct('(')) {
    next();
    if (!at_punct(')')) {
      do {
        TaskArg arg;
        if (peek().kind == Token::Ident && peek(1).kind == Token::Punct && peek(1).text == "=") {
          arg.key = next().text;
          next();
        }
        bool negative = false;
        if (at_punct('-')) {
          negative = true;
          next();
        }
        const Token& v = peek();
        if (v.kind == Token::Number || (!negative && v.kind == Token::Ident)) {
          arg.value = (negative ? "-" : "") + next().text;
        } else {
          fail(ErrorKind::SyntaxError, "expected a task argument, found " + describe(v), v.pos);
        }
        task.args.push_back(std::move(arg));
      } while (at_punct(',') && (next(), true));
    }
    expect_punct(')');
  }
  ast_.tasks.push_back(std::move(task));
}

bool Parser::depends_on_variables(const Expr& e) {
  if (e.op == Expr::Op::Variable) return true;
  for (const auto& a : e.args) {
    if (depends_on_variables(*a)) return true;
  }
  return false;
}

namespace {

ExprPtr node(Expr::Op op, ExprType type, SourcePos pos, std::vector<ExprPtr> args = {}) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->type = type;
  e->pos = pos;
  e->args = std::move(args);
  return e;
}

const char* type_name(ExprType t) {
  switch (t) {
    case ExprType::Scalar: return "scalar";
    case ExprType::Vector: return "vector field";
    case ExprType::Form: return "one-form";
  }
  return "?";
}

}  // namespace

ExprPtr Parser::parse_expr() {
  ExprPtr lhs = parse_term();
  while (at_punct('+') || at_punct('-')) {
    const Token& op = next();
    ExprPtr rhs = parse_term();
    if (lhs->type != rhs->type) {
      fail(ErrorKind::TypeError,
           std::string("cannot ") + (op.text == "+" ? "add" : "subtract") + " a " +
               type_name(rhs->type) + " and a " + type_name(lhs->type),
           op.pos);
    }
    ExprType t = lhs->type;
    lhs = node(op.text == "+" ? Expr::Op::Add : Expr::Op::Sub, t, lhs->pos, {lhs, rhs});
  }
  return lhs;
}

ExprPtr Parser::parse_term() {
  ExprPtr lhs = parse_unary();
  while (at_punct('*') || at_punct('/')) {
    const Token& op = next();
    ExprPtr rhs = parse_unary();
    if (op.text == "*") {
      ExprType t;
      if (lhs->type == ExprType::Scalar) {
        t = rhs->type;
      } else if (rhs->type == ExprType::Scalar) {
        t = lhs->type;
      } else {
        fail(ErrorKind::TypeError,
             std::string("cannot multiply a ") + type_name(lhs->type) + " by a " + type_name(rhs->type),
             op.pos);
      }
      lhs = node(Expr::Op::Mul, t, lhs->pos, {lhs, rhs});
    } else {
      if (rhs->type != ExprType::Scalar) {
        fail(ErrorKind::TypeError, std::string("cannot divide by a ") + type_name(rhs->type), op.pos);
      }
      ExprType t = lhs->type;
      lhs = node(Expr::Op::Div, t, lhs->pos, {lhs, rhs});
    }
  }
  return lhs;
}

ExprPtr Parser::parse_unary() {
  if (at_punct('-')) {
    SourcePos pos = next().pos;
    ExprPtr inner = parse_unary();
    ExprType t = inner->type;
    return node(Expr::Op::Neg, t, pos, {inner});
  }
  if (at_punct('+')) {
    next();
    return parse_unary();
  }
  return parse_power();
}

ExprPtr Parser::parse_power() {
  ExprPtr base = parse_atom();
  if (!at_punct('^')) return base;
  SourcePos op = next().pos;
  if (base->type != ExprType::Scalar) {
    fail(ErrorKind::TypeError, std::string("cannot raise a ") + type_name(base->type) + " to a power", op);
  }
  bool negative = false;
  if (at_punct('-')) {
    negative = true;
    next();
  }
  const Token& t = peek();
  if (t.kind != Token::Number) {
    fail(ErrorKind::SyntaxError, "expected an integer exponent, found " + describe(t), t.pos);
  }
  if (t.text.size() > 6) fail(ErrorKind::SyntaxError, "exponent too large", t.pos);
  long k = std::stol(next().text);
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::Pow;
  e->type = ExprType::Scalar;
  e->pos = base->pos;
  e->exponent = negative ? -k : k;
  e->args = {base};
  return e;
}

ExprPtr Parser::parse_atom() {
  const Token& t = peek();
  switch (t.kind) {
    case Token::Number: {
      auto e = std::make_shared<Expr>();
      e->op = Expr::Op::Number;
      e->type = ExprType::Scalar;
      e->pos = t.pos;
      e->number = mpz_class(t.text);
      next();
      return e;
    }
    case Token::AtIdent: {
      auto it = symbols_.find(t.text);
      if (it == symbols_.end() || it->second.kind != SymKind::Variable) {
        fail(ErrorKind::UnknownIdentifier, "'" + t.text + "' is not a chart variable", t.pos);
      }
      auto e = std::make_shared<Expr>();
      e->op = Expr::Op::Coordinate;
      e->type = ExprType::Vector;
      e->pos = t.pos;
      e->index = it->second.index;
      next();
      return e;
    }
    case Token::Ident: {
      if (t.text == "d" && peek(1).kind == Token::Punct && peek(1).text == "(") {
        SourcePos pos = next().pos;
        next();
        const Token& v = peek();
        if (v.kind != Token::Ident) {
          fail(ErrorKind::SyntaxError, "expected a variable inside d(...), found " + describe(v), v.pos);
        }
        auto it = symbols_.find(v.text);
        if (it == symbols_.end() || it->second.kind != SymKind::Variable) {
          fail(ErrorKind::UnknownIdentifier, "'" + v.text + "' is not a chart variable", v.pos);
        }
        next();
        if (at_punct(',')) fail(ErrorKind::ArityError, "d(...) takes exactly one variable", peek().pos);
        expect_punct(')');
        auto e = std::make_shared<Expr>();
        e->op = Expr::Op::Differential;
        e->type = ExprType::Form;
        e->pos = pos;
        e->index = it->second.index;
        return e;
      }
      if (is_keyword(t.text)) {
        fail(ErrorKind::SyntaxError, "unexpected " + describe(t) + " in expression", t.pos);
      }
      auto it = symbols_.find(t.text);
      if (it == symbols_.end()) {
        fail(ErrorKind::UnknownIdentifier, "unknown identifier '" + t.text + "'", t.pos);
      }
      auto e = std::make_shared<Expr>();
      e->pos = t.pos;
      e->index = it->second.index;
      switch (it->second.kind) {
        case SymKind::Variable:
          e->op = Expr::Op::Variable;
          e->type = ExprType::Scalar;
          break;
        case SymKind::Field:
          e->op = Expr::Op::FieldRef;
          e->type = ExprType::Vector;
          break;
        case SymKind::Form:
          e->op = Expr::Op::FormRef;
          e->type = ExprType::Form;
          break;
        default:
          fail(ErrorKind::TypeError, "'" + t.text + "' cannot be used in an expression", t.pos);
      }
      next();
      return e;
    }
    case Token::Punct:
      if (t.text == "(") {
        next();
        ExprPtr inner = parse_expr();
        expect_punct(')');
        return inner;
      }
      if (t.text == "[") {
        SourcePos pos = next().pos;
        ExprPtr a = parse_expr();
        expect_punct(',');
        ExprPtr b = parse_expr();
        expect_punct(']');
        if (a->type != ExprType::Vector || b->type != ExprType::Vector) {
          fail(ErrorKind::TypeError, "Lie bracket needs two vector fields", pos);
        }
        return node(Expr::Op::Bracket, ExprType::Vector, pos, {a, b});
      }
      break;
    case Token::End:
      break;
  }
  fail(ErrorKind::SyntaxError, "expected an expression, found " + describe(t), t.pos);
  return nullptr;  // unreachable
}

void Parser::expect_end() {
  if (peek().kind != Token::End) {
    fail(ErrorKind::SyntaxError, "unexpected " + describe(peek()), peek().pos);
  }
}

}  // namespace detail

ModelAst parse(const ModelSource& source) {
  detail::Parser p(source);
  return p.parse_model();
}

}  // namespace flagrank::dsl
