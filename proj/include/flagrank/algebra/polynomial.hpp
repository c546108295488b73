#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flagrank/algebra/chart.hpp"

namespace flagrank {

using Exponents = std::vector<std::uint32_t>;

struct Term {
  Exponents exps;
  mpz_class coeff;
};

/// Graded-lexicographic comparison over the chart's variable order:
/// negative if a < b, zero if equal, positive if a > b.
int grlex_compare(const Exponents& a, const Exponents& b);

/// Sparse polynomial with arbitrary-precision integer coefficients.
/// Terms are kept sorted by decreasing grlex order without zero coefficients,
/// so equal polynomials have identical representations.
class Polynomial {
 public:
  explicit Polynomial(ChartPtr chart);
  Polynomial(ChartPtr chart, const mpz_class& constant);

  static Polynomial variable(ChartPtr chart, std::size_t index);
  static Polynomial monomial(ChartPtr chart, Exponents exps, mpz_class coeff);
  static Polynomial from_terms(ChartPtr chart, std::vector<Term> terms);

  const ChartPtr& chart() const noexcept { return chart_; }
  std::size_t nvars() const noexcept { return chart_->dimension(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_one() const noexcept;
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  const Term& leading() const { return terms_.front(); }
  int leading_sign() const;

  /// Positive gcd of the coefficients (zero for the zero polynomial).
  mpz_class content() const;
  mpz_class constant_value() const;
  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  std::vector<bool> support() const;
  bool depends_on(std::size_t var) const;

  /// Coefficient of var^power, as a polynomial free of `var`.
  Polynomial coefficient_in(std::size_t var, unsigned power) const;
  Polynomial leading_coeff_in(std::size_t var) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  Polynomial scaled(const mpz_class& factor) const;
  Polynomial divided_by_integer(const mpz_class& divisor) const;
  Polynomial times_variable_power(std::size_t var, unsigned power) const;
  Polynomial pow(unsigned exponent) const;
  Polynomial derivative(std::size_t var) const;

  std::optional<Polynomial> try_divide(const Polynomial& divisor) const;
  /// Exact quotient; Error(Internal) if `divisor` does not divide.
  Polynomial divide_exact(const Polynomial& divisor) const;

  mpq_class evaluate(const std::vector<mpq_class>& point) const;

  /// Same polynomial with positive leading coefficient.
  Polynomial with_positive_leading() const;

  /// Re-express on `target`; variable i of this chart becomes variable
  /// index_map[i] of the target.
  Polynomial embed(ChartPtr target, const std::vector<std::size_t>& index_map) const;

  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  Polynomial(ChartPtr chart, std::vector<Term> sorted_terms, bool);
  static void canonicalize(std::vector<Term>& terms);

  ChartPtr chart_;
  std::vector<Term> terms_;
};

/// Greatest common divisor in Z[x1..xn], with positive leading coefficient.
/// gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace flagrank
