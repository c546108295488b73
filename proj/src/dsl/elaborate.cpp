#include "flagrank/dsl/dsl.hpp"
#include "flagrank/errors.hpp"
#include "parser_internal.hpp"

namespace flagrank::dsl {

namespace detail {

namespace {

[[noreturn]] void rethrow_at(const Error& e, const std::string& origin, SourcePos pos) {
  throw ParseError(e.kind(), e.what(), origin, pos.line, pos.column);
}

template <class F>
auto guarded(const std::string& origin, SourcePos pos, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    rethrow_at(e, origin, pos);
  }
}

}  // namespace

RatFunc Evaluator::scalar(const Expr& e) const {
  using Op = Expr::Op;
  switch (e.op) {
    case Op::Number: return RatFunc(chart, mpq_class(e.number));
    case Op::Variable: return RatFunc::variable(chart, e.index);
    case Op::Neg: return -scalar(*e.args[0]);
    case Op::Add: return scalar(*e.args[0]) + scalar(*e.args[1]);
    case Op::Sub: return scalar(*e.args[0]) - scalar(*e.args[1]);
    case Op::Mul: return scalar(*e.args[0]) * scalar(*e.args[1]);
    case Op::Div: {
      RatFunc a = scalar(*e.args[0]);
      RatFunc b = scalar(*e.args[1]);
      return guarded(origin, e.args[1]->pos, [&] { return a / b; });
    }
    case Op::Pow: {
      RatFunc b = scalar(*e.args[0]);
      return guarded(origin, e.pos, [&] { return b.pow(static_cast<int>(e.exponent)); });
    }
    default: break;
  }
  throw ParseError(ErrorKind::Internal, "expression is not a scalar", origin, e.pos.line, e.pos.column);
}

VectorField Evaluator::vector(const Expr& e) const {
  using Op = Expr::Op;
  switch (e.op) {
    case Op::Coordinate: return VectorField::coordinate(chart, e.index);
    case Op::FieldRef: return fields->at(e.index);
    case Op::Neg: return -vector(*e.args[0]);
    case Op::Add: return vector(*e.args[0]) + vector(*e.args[1]);
    case Op::Sub: return vector(*e.args[0]) - vector(*e.args[1]);
    case Op::Mul:
      if (e.args[0]->type == ExprType::Scalar) return scalar(*e.args[0]) * vector(*e.args[1]);
      return scalar(*e.args[1]) * vector(*e.args[0]);
    case Op::Div: {
      RatFunc d = scalar(*e.args[1]);
      RatFunc inv = guarded(origin, e.args[1]->pos, [&] { return d.inverse(); });
      return inv * vector(*e.args[0]);
    }
    case Op::Bracket: return lie_bracket(vector(*e.args[0]), vector(*e.args[1]));
    default: break;
  }
  throw ParseError(ErrorKind::Internal, "expression is not a vector field", origin, e.pos.line,
                   e.pos.column);
}

OneForm Evaluator::form(const Expr& e) const {
  using Op = Expr::Op;
  switch (e.op) {
    case Op::Differential: return OneForm::differential(chart, e.index);
    case Op::FormRef: return forms->at(e.index);
    case Op::Neg: return -form(*e.args[0]);
    case Op::Add: return form(*e.args[0]) + form(*e.args[1]);
    case Op::Sub: return form(*e.args[0]) - form(*e.args[1]);
    case Op::Mul:
      if (e.args[0]->type == ExprType::Scalar) return scalar(*e.args[0]) * form(*e.args[1]);
      return scalar(*e.args[1]) * form(*e.args[0]);
    case Op::Div: {
      RatFunc d = scalar(*e.args[1]);
      RatFunc inv = guarded(origin, e.args[1]->pos, [&] { return d.inverse(); });
      return inv * form(*e.args[0]);
    }
    default: break;
  }
  throw ParseError(ErrorKind::Internal, "expression is not a one-form", origin, e.pos.line,
                   e.pos.column);
}

}  // namespace detail

Model elaborate(const ModelAst& ast) {
  Model m;
  m.origin = ast.origin;
  if (ast.chart) m.chart = make_chart(ast.chart->name, ast.chart->variables);

  std::vector<VectorField> fields;
  std::vector<OneForm> forms;
  detail::Evaluator ev{m.chart, ast.origin, &fields, &forms};

  for (const auto& f : ast.fields) {
    fields.push_back(ev.vector(*f.expr));
    m.fields.push_back({f.name, fields.back()});
  }
  for (const auto& f : ast.forms) {
    forms.push_back(ev.form(*f.expr));
    m.forms.push_back({f.name, forms.back()});
  }
  for (const auto& d : ast.dists) {
    Distribution dist = detail::guarded(ast.origin, d.pos, [&] {
      if (d.kind == DistKind::Ann) {
        std::vector<OneForm> ws;
        for (const auto& n : d.members) ws.push_back(*m.form(n));
        return annihilator_frame(ws);
      }
      std::vector<VectorField> xs;
      for (const auto& n : d.members) xs.push_back(*m.field(n));
      return Distribution::from_frame(m.chart, xs);
    });
    m.dists.push_back({d.name, d.kind, d.members, std::move(dist)});
  }
  for (const auto& p : ast.points) {
    std::vector<mpq_class> coords;
    for (const auto& c : p.coords) coords.push_back(ev.scalar(*c).constant_value());
    m.points.push_back({p.name, PointQ(m.chart, std::move(coords))});
  }
  for (const auto& t : ast.tasks) m.tasks.push_back(t);
  return m;
}

Model load(const ModelSource& source) { return elaborate(parse(source)); }

namespace {

template <class T>
const T* find_named(const std::vector<Named<T>>& items, std::string_view name) {
  for (const auto& it : items) {
    if (it.name == name) return &it.value;
  }
  return nullptr;
}

}  // namespace

const VectorField* Model::field(std::string_view name) const { return find_named(fields, name); }
const OneForm* Model::form(std::string_view name) const { return find_named(forms, name); }
const PointQ* Model::point(std::string_view name) const { return find_named(points, name); }

const NamedDist* Model::dist(std::string_view name) const {
  for (const auto& d : dists) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

RatFunc parse_scalar(const ChartPtr& chart, const std::string& text) {
  ModelSource src{text, "<expression>"};
  detail::Parser p(src);
  p.declare_chart(chart->name(), chart->variables(), {});
  ExprPtr e = p.parse_expr();
  p.expect_end();
  if (e->type != ExprType::Scalar) {
    throw ParseError(ErrorKind::TypeError, "expected a scalar expression", src.origin, e->pos.line,
                     e->pos.column);
  }
  detail::Evaluator ev{chart, src.origin, nullptr, nullptr};
  return ev.scalar(*e);
}

PointQ parse_point(const ChartPtr& chart, const std::string& text) {
  ModelSource src{text, "<point>"};
  detail::Parser p(src);
  p.declare_chart(chart->name(), chart->variables(), {});
  auto coords = p.parse_coordinates();
  p.expect_end();
  detail::Evaluator ev{chart, src.origin, nullptr, nullptr};
  std::vector<mpq_class> values;
  for (const auto& c : coords) values.push_back(ev.scalar(*c).constant_value());
  return PointQ(chart, std::move(values));
}

}  // namespace flagrank::dsl
