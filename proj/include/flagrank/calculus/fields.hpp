#pragma once

#include <string>
#include <vector>

#include "flagrank/algebra/matrix.hpp"

namespace flagrank {

/// Vector field sum_i X^i d/dx_i with rational-function coefficients.
class VectorField {
 public:
  VectorField(ChartPtr chart, VectorRF coefficients);

  static VectorField zero(const ChartPtr& chart);
  static VectorField coordinate(const ChartPtr& chart, std::size_t index);
  static VectorField coordinate(const ChartPtr& chart, std::string_view name);

  const ChartPtr& chart() const noexcept { return chart_; }
  const VectorRF& coefficients() const noexcept { return coeffs_; }
  const RatFunc& operator[](std::size_t i) const { return coeffs_.at(i); }
  std::size_t size() const noexcept { return coeffs_.size(); }
  bool is_zero() const;

  /// Directional derivative X(f).
  RatFunc apply(const RatFunc& f) const;

  VectorField operator-() const;
  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const RatFunc& f, const VectorField& x);

  VectorQ evaluate(const PointQ& p) const;

  /// DSL text, e.g. `@t + u1*@u`.
  std::string to_string() const;

  friend bool operator==(const VectorField& a, const VectorField& b) {
    return same_chart(a.chart_, b.chart_) && a.coeffs_ == b.coeffs_;
  }

 private:
  ChartPtr chart_;
  VectorRF coeffs_;
};

/// One-form sum_i w_i dx_i.
class OneForm {
 public:
  OneForm(ChartPtr chart, VectorRF coefficients);

  static OneForm differential(const ChartPtr& chart, std::size_t index);
  static OneForm differential(const ChartPtr& chart, std::string_view name);

  const ChartPtr& chart() const noexcept { return chart_; }
  const VectorRF& coefficients() const noexcept { return coeffs_; }
  const RatFunc& operator[](std::size_t i) const { return coeffs_.at(i); }
  std::size_t size() const noexcept { return coeffs_.size(); }

  OneForm operator-() const;
  friend OneForm operator+(const OneForm& a, const OneForm& b);
  friend OneForm operator-(const OneForm& a, const OneForm& b);
  friend OneForm operator*(const RatFunc& f, const OneForm& w);

  /// DSL text, e.g. `d(u) - u1*d(t)`.
  std::string to_string() const;

  friend bool operator==(const OneForm& a, const OneForm& b) {
    return same_chart(a.chart_, b.chart_) && a.coeffs_ == b.coeffs_;
  }

 private:
  ChartPtr chart_;
  VectorRF coeffs_;
};

/// [X,Y]^i = sum_j (X^j d_j Y^i - Y^j d_j X^i).
VectorField lie_bracket(const VectorField& x, const VectorField& y);

/// w(X) = sum_i w_i X^i.
RatFunc pairing(const OneForm& w, const VectorField& x);

/// Scale to a primitive polynomial direction (same span, nicer printing).
VectorField primitive(const VectorField& x);

/// Re-express on a chart that contains this chart's variables.
VectorField embed(const VectorField& x, const ChartPtr& target);

}  // namespace flagrank
