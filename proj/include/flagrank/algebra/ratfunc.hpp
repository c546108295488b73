#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "flagrank/algebra/chart.hpp"
#include "flagrank/algebra/polynomial.hpp"

namespace flagrank {

/// A point of a chart with exact rational coordinates.
struct PointQ {
  ChartPtr chart;
  std::vector<mpq_class> coords;

  PointQ(ChartPtr c, std::vector<mpq_class> values);
  static PointQ origin(ChartPtr c);
  std::string to_string() const;  // "(0, 1/2, ...)"
};

/// Exact rational function: a reduced fraction of integer polynomials.
///
/// Canonical form: gcd(num, den) = 1 including integer content, the leading
/// coefficient of the denominator is positive, and zero is 0/1. Equal
/// functions therefore compare equal structurally regardless of how they
/// were built.
class RatFunc {
 public:
  explicit RatFunc(ChartPtr chart);  // zero
  RatFunc(ChartPtr chart, const mpq_class& value);
  explicit RatFunc(Polynomial numerator);
  RatFunc(Polynomial numerator, Polynomial denominator);

  static RatFunc variable(const ChartPtr& chart, std::size_t index);
  static RatFunc variable(const ChartPtr& chart, std::string_view name);

  const ChartPtr& chart() const noexcept { return num_.chart(); }
  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const noexcept { return den_.is_one(); }
  mpq_class constant_value() const;
  std::vector<bool> support() const;

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }

  RatFunc inverse() const;
  RatFunc pow(int exponent) const;
  RatFunc derivative(std::size_t var) const;
  RatFunc derivative(std::string_view var) const;

  /// Exact value at `p`; Error(PoleAtPoint) where the denominator vanishes.
  mpq_class evaluate(const PointQ& p) const;
  mpq_class evaluate(const std::vector<mpq_class>& coords) const;

  RatFunc embed(ChartPtr target, const std::vector<std::size_t>& index_map) const;

  /// Sign of the numerator's leading coefficient; used for pretty printing.
  int leading_sign() const { return num_.leading_sign(); }

  /// Canonical text: graded-lex terms, `^` powers, `*` products,
  /// parenthesized multi-term numerators/denominators.
  std::string to_string() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

 private:
  struct Reduced {};
  RatFunc(Polynomial numerator, Polynomial denominator, Reduced);
  void reduce();

  Polynomial num_;
  Polynomial den_;
};

/// Partial derivative as a free function (chart-checked by name).
RatFunc partial_derivative(const RatFunc& f, std::string_view var);

/// Substitute `values[i]` for variable i of f's chart; values live on
/// another chart.
RatFunc substitute(const RatFunc& f, const std::vector<RatFunc>& values);

}  // namespace flagrank
