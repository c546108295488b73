#pragma once

#include <map>
#include <string>
#include <vector>

#include "flagrank/dsl/dsl.hpp"
#include "flagrank/errors.hpp"

namespace flagrank::dsl::detail {

struct Token {
  enum Kind { Ident, Number, AtIdent, Punct, End };
  Kind kind;
  std::string text;
  SourcePos pos;
};

std::vector<Token> tokenize(const ModelSource& src);

enum class SymKind { Chart, Variable, Field, Form, Dist, Point };

struct Symbol {
  SymKind kind;
  std::size_t index;
};

class Parser {
 public:
  explicit Parser(const ModelSource& src);

  ModelAst parse_model();

  // Used by the single-expression entry points.
  void declare_chart(const std::string& name, const std::vector<std::string>& vars, SourcePos pos);
  ExprPtr parse_expr();
  std::vector<ExprPtr> parse_coordinates();
  void expect_end();

 private:
  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at_punct(char c) const;
  bool at_word(std::string_view w) const;
  [[noreturn]] void fail(ErrorKind kind, const std::string& msg, SourcePos pos) const;
  static std::string describe(const Token& t);
  void expect_punct(char c);
  std::string expect_name(const char* what);
  void declare(const std::string& name, Symbol sym, SourcePos pos);
  static bool depends_on_variables(const Expr& e);

  void parse_chart();
  void parse_field();
  void parse_form();
  void parse_dist();
  void parse_point_decl();
  void parse_task();

  ExprPtr parse_term();
  ExprPtr parse_unary();
  ExprPtr parse_power();
  ExprPtr parse_atom();

  const ModelSource& src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ModelAst ast_;
  ChartPtr chart_;
  std::map<std::string, Symbol, std::less<>> symbols_;
};

/// Evaluates a typed expression. Field/form references index into the
/// already-realized lists. Arithmetic failures (division by zero) become
/// ParseErrors at the node's position.
struct Evaluator {
  ChartPtr chart;
  std::string origin;
  const std::vector<VectorField>* fields = nullptr;
  const std::vector<OneForm>* forms = nullptr;

  RatFunc scalar(const Expr& e) const;
  VectorField vector(const Expr& e) const;
  OneForm form(const Expr& e) const;
};

}  // namespace flagrank::dsl::detail
