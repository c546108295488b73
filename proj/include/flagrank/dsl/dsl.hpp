#pragma once

// Model-definition language (`.dist` files).
//
//   chart M(t, u, v, u1, u2, v1)
//   form w1 = d(u) - u1*d(t)
//   field T = @t + u1*@u + u2*@u1 + v1*@v
//   dist D = ann(w1, w2, w3)          # or span(X, Y, Z)
//   point p = (0, 1/2, 0, 0, 0, 0)
//   task branch
//
// Expressions are typed: scalars (rational functions of the chart
// variables), vector fields (`@x` atoms) and one-forms (`d(x)` atoms).
// Scalars multiply fields and forms; `^` takes an integer exponent;
// `[X, Y]` is the Lie bracket of two vector expressions.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flagrank/distribution/distribution.hpp"

namespace flagrank::dsl {

struct ModelSource {
  std::string text;
  std::string origin = "<stdin>";
};

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

enum class ExprType { Scalar, Vector, Form };

struct Expr {
  enum class Op {
    Number, Variable, Coordinate, Differential, FieldRef, FormRef,
    Neg, Add, Sub, Mul, Div, Pow, Bracket
  };
  Op op;
  ExprType type;
  SourcePos pos;
  mpz_class number;       // Number
  std::size_t index = 0;  // Variable / Coordinate / Differential / *Ref (declaration index)
  long exponent = 0;      // Pow
  std::vector<std::shared_ptr<const Expr>> args;
};
using ExprPtr = std::shared_ptr<const Expr>;

struct ChartDecl {
  std::string name;
  std::vector<std::string> variables;
  SourcePos pos;
};

struct FieldDecl {
  std::string name;
  ExprPtr expr;
  SourcePos pos;
};

struct FormDecl {
  std::string name;
  ExprPtr expr;
  SourcePos pos;
};

enum class DistKind { Span, Ann };

struct DistDecl {
  std::string name;
  DistKind kind;
  std::vector<std::string> members;
  SourcePos pos;
};

struct PointDecl {
  std::string name;
  std::vector<ExprPtr> coords;
  SourcePos pos;
};

struct TaskArg {
  std::string key;  // empty for positional arguments
  std::string value;
  bool operator==(const TaskArg&) const = default;
};

struct TaskDecl {
  std::string name;
  std::vector<TaskArg> args;
  SourcePos pos;
};

/// Parsed model with every identifier resolved and every expression typed.
struct ModelAst {
  std::string origin;
  std::optional<ChartDecl> chart;
  std::vector<FieldDecl> fields;
  std::vector<FormDecl> forms;
  std::vector<DistDecl> dists;
  std::vector<PointDecl> points;
  std::vector<TaskDecl> tasks;
};

/// Known task names, in canonical order.
const std::vector<std::string>& task_names();

/// Throws ParseError (SyntaxError, UnknownIdentifier, ArityError, TypeError)
/// carrying the position of the offending token.
ModelAst parse(const ModelSource& source);

template <class T>
struct Named {
  std::string name;
  T value;
};

struct NamedDist {
  std::string name;
  DistKind kind;
  std::vector<std::string> members;
  Distribution dist;
};

struct Model {
  std::string origin;
  ChartPtr chart;  // null when the source declares no chart
  std::vector<Named<VectorField>> fields;
  std::vector<Named<OneForm>> forms;
  std::vector<NamedDist> dists;
  std::vector<Named<PointQ>> points;
  std::vector<TaskDecl> tasks;

  const VectorField* field(std::string_view name) const;
  const OneForm* form(std::string_view name) const;
  const NamedDist* dist(std::string_view name) const;
  const PointQ* point(std::string_view name) const;
};

/// Realizes all objects. `ann(...)` distributions go through an exact kernel
/// solve; `span(...)` frames must be generically independent
/// (ParseError with kind DegenerateFrame / DependentForms otherwise).
Model elaborate(const ModelAst& ast);

Model load(const ModelSource& source);

/// Canonical text; `load(print(m))` reproduces `m` structurally.
std::string print(const Model& model);

bool structurally_equal(const Model& a, const Model& b);

/// Parses a single scalar expression over `chart` (convenience for tests,
/// the CLI and model parameters).
RatFunc parse_scalar(const ChartPtr& chart, const std::string& text);

/// Parses `(q1, q2, ...)` into a point of `chart`.
PointQ parse_point(const ChartPtr& chart, const std::string& text);

}  // namespace flagrank::dsl
