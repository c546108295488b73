#pragma once

#include <string>
#include <vector>

#include "flagrank/dsl/dsl.hpp"
#include "generators.hpp"

namespace flagrank::testing {

inline dsl::Model model(const std::string& text) { return dsl::load({text, "test.dist"}); }

/// Field written in DSL syntax on `chart_decl`, e.g. field("chart M(x, y)", "x*@y").
inline VectorField field(const std::string& chart_decl, const std::string& expr) {
  return *model(chart_decl + "\nfield F = " + expr + "\n").field("F");
}

/// Distribution spanned by fields written in DSL syntax.
inline Distribution span_of(const std::string& chart_decl, const std::vector<std::string>& exprs) {
  std::string text = chart_decl + "\n";
  std::string names;
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    text += "field F" + std::to_string(i) + " = " + exprs[i] + "\n";
    names += (i ? ", F" : "F") + std::to_string(i);
  }
  return model(text + "dist D = span(" + names + ")\n").dist("D")->dist;
}

/// Frame multiplied by a random unipotent matrix with polynomial entries and
/// then by a random invertible constant matrix; the span is unchanged.
inline std::vector<VectorField> scramble(Gen& g, const std::vector<VectorField>& frame) {
  const ChartPtr& c = frame.at(0).chart();
  std::size_t n = frame.size();
  std::vector<VectorField> out = frame;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out[i] = out[i] + RatFunc(g.polynomial(c, 2, 1)) * out[j];
    }
  }
  while (true) {
    std::vector<VectorQ> rows(n, VectorQ(n));
    for (auto& r : rows) {
      for (auto& q : r) q = g.rational(3, 2);
    }
    if (rank_rational(rows) != n) continue;
    std::vector<VectorField> mixed;
    for (std::size_t i = 0; i < n; ++i) {
      VectorField acc = VectorField::zero(c);
      for (std::size_t j = 0; j < n; ++j) acc = acc + RatFunc(c, rows[i][j]) * out[j];
      mixed.push_back(acc);
    }
    return mixed;
  }
}

}  // namespace flagrank::testing
