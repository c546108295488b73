#include "flagrank/algebra/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "flagrank/errors.hpp"

namespace flagrank {

int grlex_compare(const Exponents& a, const Exponents& b) {
  std::uint64_t da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  std::uint64_t db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

namespace {

bool grlex_greater(const Term& a, const Term& b) {
  return grlex_compare(a.exps, b.exps) > 0;
}

}  // namespace

Polynomial::Polynomial(ChartPtr chart) : chart_(std::move(chart)) {
  if (!chart_) throw Error(ErrorKind::InvalidArgument, "polynomial without chart");
}

Polynomial::Polynomial(ChartPtr chart, const mpz_class& constant)
    : Polynomial(std::move(chart)) {
  if (constant != 0) terms_.push_back(Term{Exponents(nvars(), 0), constant});
}

Polynomial::Polynomial(ChartPtr chart, std::vector<Term> sorted_terms, bool)
    : chart_(std::move(chart)), terms_(std::move(sorted_terms)) {}

void Polynomial::canonicalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), grlex_greater);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exps == t.exps) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms = std::move(out);
}

Polynomial Polynomial::variable(ChartPtr chart, std::size_t index) {
  Exponents e(chart->dimension(), 0);
  e.at(index) = 1;
  return monomial(std::move(chart), std::move(e), 1);
}

Polynomial Polynomial::monomial(ChartPtr chart, Exponents exps, mpz_class coeff) {
  if (exps.size() != chart->dimension()) {
    throw Error(ErrorKind::InvalidArgument, "exponent vector length mismatch");
  }
  std::vector<Term> t;
  if (coeff != 0) t.push_back(Term{std::move(exps), std::move(coeff)});
  return Polynomial(std::move(chart), std::move(t), true);
}

Polynomial Polynomial::from_terms(ChartPtr chart, std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.exps.size() != chart->dimension()) {
      throw Error(ErrorKind::InvalidArgument, "exponent vector length mismatch");
    }
  }
  canonicalize(terms);
  return Polynomial(std::move(chart), std::move(terms), true);
}

bool Polynomial::is_constant() const noexcept {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  return std::all_of(terms_[0].exps.begin(), terms_[0].exps.end(),
                     [](std::uint32_t e) { return e == 0; });
}

bool Polynomial::is_one() const noexcept {
  return is_constant() && !terms_.empty() && terms_[0].coeff == 1;
}

int Polynomial::leading_sign() const {
  if (terms_.empty()) return 0;
  return sgn(terms_.front().coeff);
}

mpz_class Polynomial::content() const {
  mpz_class g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

mpz_class Polynomial::constant_value() const {
  if (!is_constant()) throw Error(ErrorKind::Internal, "polynomial is not constant");
  return terms_.empty() ? mpz_class(0) : terms_[0].coeff;
}

unsigned Polynomial::total_degree() const {
  if (terms_.empty()) return 0;
  const auto& e = terms_.front().exps;
  return std::accumulate(e.begin(), e.end(), 0u);
}

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exps[var]);
  return d;
}

std::vector<bool> Polynomial::support() const {
  std::vector<bool> s(nvars(), false);
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
      if (t.exps[i] != 0) s[i] = true;
    }
  }
  return s;
}

bool Polynomial::depends_on(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [var](const Term& t) { return t.exps[var] != 0; });
}

Polynomial Polynomial::coefficient_in(std::size_t var, unsigned power) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exps[var] == power) {
      Term c = t;
      c.exps[var] = 0;
      out.push_back(std::move(c));
    }
  }
  // Removing a variable's exponent can reorder terms, so re-sort.
  return from_terms(chart_, std::move(out));
}

Polynomial Polynomial::leading_coeff_in(std::size_t var) const {
  return coefficient_in(var, degree_in(var));
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_chart(chart_, other.chart_);
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    return *this;
  }
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < other.terms_.size()) {
    if (j == other.terms_.size()) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size()) {
      out.push_back(other.terms_[j++]);
    } else {
      int c = grlex_compare(terms_[i].exps, other.terms_[j].exps);
      if (c > 0) {
        out.push_back(std::move(terms_[i++]));
      } else if (c < 0) {
        out.push_back(other.terms_[j++]);
      } else {
        mpz_class s = terms_[i].coeff + other.terms_[j].coeff;
        if (s != 0) out.push_back(Term{std::move(terms_[i].exps), std::move(s)});
        ++i;
        ++j;
      }
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  return *this += -other;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_chart(a.chart_, b.chart_);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.chart_);
  if (a.is_constant()) return b.scaled(a.terms_[0].coeff);
  if (b.is_constant()) return a.scaled(b.terms_[0].coeff);
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  const std::size_t n = a.nvars();
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      Term p{Exponents(n), s.coeff * t.coeff};
      for (std::size_t k = 0; k < n; ++k) p.exps[k] = s.exps[k] + t.exps[k];
      prod.push_back(std::move(p));
    }
  }
  Polynomial::canonicalize(prod);
  return Polynomial(a.chart_, std::move(prod), true);
}

Polynomial Polynomial::scaled(const mpz_class& factor) const {
  if (factor == 0) return Polynomial(chart_);
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= factor;
  return r;
}

Polynomial Polynomial::divided_by_integer(const mpz_class& divisor) const {
  if (divisor == 0) throw Error(ErrorKind::DivisionByZero, "integer division by zero");
  Polynomial r = *this;
  for (auto& t : r.terms_) {
    if (!mpz_divisible_p(t.coeff.get_mpz_t(), divisor.get_mpz_t())) {
      throw Error(ErrorKind::Internal, "inexact integer division of polynomial");
    }
    mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), divisor.get_mpz_t());
  }
  return r;
}

Polynomial Polynomial::times_variable_power(std::size_t var, unsigned power) const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.exps[var] += power;
  // Uniform shift preserves grlex order.
  return r;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result(chart_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars()) throw Error(ErrorKind::UnknownVariable, "variable index out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exps[var] == 0) continue;
    Term d = t;
    d.coeff *= t.exps[var];
    d.exps[var] -= 1;
    out.push_back(std::move(d));
  }
  return from_terms(chart_, std::move(out));
}

namespace {

bool monomial_divides(const Exponents& d, const Exponents& e) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > e[i]) return false;
  }
  return true;
}

}  // namespace

std::optional<Polynomial> Polynomial::try_divide(const Polynomial& divisor) const {
  require_same_chart(chart_, divisor.chart_);
  if (divisor.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (is_zero()) return Polynomial(chart_);
  if (divisor.is_constant()) {
    const mpz_class& c = divisor.terms_[0].coeff;
    Polynomial r = *this;
    for (auto& t : r.terms_) {
      if (!mpz_divisible_p(t.coeff.get_mpz_t(), c.get_mpz_t())) return std::nullopt;
      mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
    }
    return r;
  }
  if (total_degree() < divisor.total_degree()) return std::nullopt;
  const std::size_t n = nvars();
  const Term& lead = divisor.terms_.front();
  std::vector<Term> quotient;
  Polynomial rem = *this;
  while (!rem.is_zero()) {
    const Term& r = rem.terms_.front();
    if (!monomial_divides(lead.exps, r.exps)) return std::nullopt;
    if (!mpz_divisible_p(r.coeff.get_mpz_t(), lead.coeff.get_mpz_t())) return std::nullopt;
    Term q{Exponents(n), 0};
    for (std::size_t k = 0; k < n; ++k) q.exps[k] = r.exps[k] - lead.exps[k];
    mpz_divexact(q.coeff.get_mpz_t(), r.coeff.get_mpz_t(), lead.coeff.get_mpz_t());
    Polynomial step = monomial(chart_, q.exps, q.coeff) * divisor;
    quotient.push_back(std::move(q));
    rem -= step;
  }
  return from_terms(chart_, std::move(quotient));
}

Polynomial Polynomial::divide_exact(const Polynomial& divisor) const {
  auto q = try_divide(divisor);
  if (!q) throw Error(ErrorKind::Internal, "inexact polynomial division");
  return std::move(*q);
}

mpq_class Polynomial::evaluate(const std::vector<mpq_class>& point) const {
  if (point.size() != nvars()) {
    throw Error(ErrorKind::ChartMismatch, "point dimension does not match chart");
  }
  mpq_class sum = 0;
  mpq_class power;
  for (const auto& t : terms_) {
    mpq_class term = t.coeff;
    for (std::size_t k = 0; k < t.exps.size(); ++k) {
      if (t.exps[k] == 0) continue;
      mpz_pow_ui(power.get_num_mpz_t(), point[k].get_num_mpz_t(), t.exps[k]);
      mpz_pow_ui(power.get_den_mpz_t(), point[k].get_den_mpz_t(), t.exps[k]);
      term *= power;
    }
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::with_positive_leading() const {
  return leading_sign() < 0 ? -*this : *this;
}

Polynomial Polynomial::embed(ChartPtr target, const std::vector<std::size_t>& index_map) const {
  if (index_map.size() != nvars()) {
    throw Error(ErrorKind::InvalidArgument, "embedding map has wrong length");
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term m{Exponents(target->dimension(), 0), t.coeff};
    for (std::size_t k = 0; k < t.exps.size(); ++k) {
      if (t.exps[k] == 0) continue;
      if (index_map[k] >= target->dimension()) {
        throw Error(ErrorKind::InvalidArgument, "embedding index out of range");
      }
      m.exps[index_map[k]] += t.exps[k];
    }
    out.push_back(std::move(m));
  }
  return from_terms(std::move(target), std::move(out));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    mpz_class mag = abs(t.coeff);
    bool negative = t.coeff < 0;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool has_vars = false;
    std::ostringstream mono;
    for (std::size_t k = 0; k < t.exps.size(); ++k) {
      if (t.exps[k] == 0) continue;
      if (has_vars) mono << "*";
      mono << chart_->variable(k);
      if (t.exps[k] > 1) mono << "^" << t.exps[k];
      has_vars = true;
    }
    if (!has_vars) {
      os << mag.get_str();
    } else if (mag == 1) {
      os << mono.str();
    } else {
      os << mag.get_str() << "*" << mono.str();
    }
  }
  return os.str();
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!same_chart(a.chart_, b.chart_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].coeff != b.terms_[i].coeff || a.terms_[i].exps != b.terms_[i].exps) {
      return false;
    }
  }
  return true;
}

}  // namespace flagrank
