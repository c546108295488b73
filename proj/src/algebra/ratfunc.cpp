#include "flagrank/algebra/ratfunc.hpp"

#include <map>
#include <sstream>

#include "flagrank/errors.hpp"

namespace flagrank {

PointQ::PointQ(ChartPtr c, std::vector<mpq_class> values)
    : chart(std::move(c)), coords(std::move(values)) {
  if (!chart || coords.size() != chart->dimension()) {
    throw Error(ErrorKind::ArityError, "point has wrong number of coordinates");
  }
  for (auto& q : coords) q.canonicalize();
}

PointQ PointQ::origin(ChartPtr c) {
  std::vector<mpq_class> zeros(c->dimension(), 0);
  return PointQ(std::move(c), std::move(zeros));
}

std::string PointQ::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ", ";
    s += coords[i].get_str();
  }
  return s + ")";
}

RatFunc::RatFunc(ChartPtr chart) : num_(chart), den_(chart, 1) {}

RatFunc::RatFunc(ChartPtr chart, const mpq_class& value)
    : num_(chart, value.get_num()), den_(chart, value.get_den()) {}

RatFunc::RatFunc(Polynomial numerator)
    : num_(std::move(numerator)), den_(num_.chart(), 1) {}

RatFunc::RatFunc(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  require_same_chart(num_.chart(), den_.chart());
  reduce();
}

RatFunc::RatFunc(Polynomial numerator, Polynomial denominator, Reduced)
    : num_(std::move(numerator)), den_(std::move(denominator)) {}

void RatFunc::reduce() {
  if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by the zero function");
  if (num_.is_zero()) {
    den_ = Polynomial(num_.chart(), 1);
    return;
  }
  if (den_.is_one()) return;
  if (den_.is_constant()) {
    mpz_class g = num_.content();
    mpz_class d = den_.constant_value();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    if (d < 0) g = -g;
    if (g != 1) {
      num_ = num_.divided_by_integer(g);
      den_ = den_.divided_by_integer(g);
    }
    return;
  }
  Polynomial g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_.divide_exact(g);
    den_ = den_.divide_exact(g);
  }
  if (den_.leading_sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

RatFunc RatFunc::variable(const ChartPtr& chart, std::size_t index) {
  return RatFunc(Polynomial::variable(chart, index));
}

RatFunc RatFunc::variable(const ChartPtr& chart, std::string_view name) {
  return variable(chart, chart->require_index(name));
}

mpq_class RatFunc::constant_value() const {
  if (!is_constant()) throw Error(ErrorKind::Internal, "rational function is not constant");
  mpq_class q(num_.constant_value(), den_.constant_value());
  q.canonicalize();
  return q;
}

std::vector<bool> RatFunc::support() const {
  auto s = num_.support();
  auto t = den_.support();
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = s[i] || t[i];
  return s;
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Reduced{}); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_.is_one() && b.den_.is_one()) {
    return RatFunc(a.num_ + b.num_, a.den_, RatFunc::Reduced{});
  }
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  Polynomial g = gcd(a.den_, b.den_);
  if (g.is_one()) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  Polynomial ad = a.den_.divide_exact(g);
  Polynomial bd = b.den_.divide_exact(g);
  return RatFunc(a.num_ * bd + b.num_ * ad, a.den_ * bd);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  require_same_chart(a.chart(), b.chart());
  if (a.is_zero() || b.is_zero()) return RatFunc(a.chart());
  if (a.den_.is_one() && b.den_.is_one()) {
    return RatFunc(a.num_ * b.num_, a.den_, RatFunc::Reduced{});
  }
  Polynomial g1 = gcd(a.num_, b.den_);
  Polynomial g2 = gcd(b.num_, a.den_);
  Polynomial n1 = g1.is_one() ? a.num_ : a.num_.divide_exact(g1);
  Polynomial d2 = g1.is_one() ? b.den_ : b.den_.divide_exact(g1);
  Polynomial n2 = g2.is_one() ? b.num_ : b.num_.divide_exact(g2);
  Polynomial d1 = g2.is_one() ? a.den_ : a.den_.divide_exact(g2);
  // Both denominators already have positive leading coefficients, and so
  // does their product.
  return RatFunc(n1 * n2, d1 * d2, RatFunc::Reduced{});
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "division by the zero function");
  if (num_.leading_sign() < 0) return RatFunc(-den_, -num_, Reduced{});
  return RatFunc(den_, num_, Reduced{});
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::pow(int exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  return RatFunc(num_.pow(static_cast<unsigned>(exponent)),
                 den_.pow(static_cast<unsigned>(exponent)), Reduced{});
}

RatFunc RatFunc::derivative(std::size_t var) const {
  if (var >= chart()->dimension()) {
    throw Error(ErrorKind::UnknownVariable, "variable index out of range");
  }
  if (den_.is_one()) return RatFunc(num_.derivative(var), den_, Reduced{});
  Polynomial dn = num_.derivative(var);
  Polynomial dd = den_.derivative(var);
  if (dd.is_zero()) return RatFunc(dn, den_);
  return RatFunc(dn * den_ - num_ * dd, den_ * den_);
}

RatFunc RatFunc::derivative(std::string_view var) const {
  return derivative(chart()->require_index(var));
}

mpq_class RatFunc::evaluate(const std::vector<mpq_class>& coords) const {
  mpq_class d = den_.evaluate(coords);
  if (d == 0) throw Error(ErrorKind::PoleAtPoint, "denominator " + den_.to_string() + " vanishes");
  mpq_class n = num_.evaluate(coords);
  return n / d;
}

mpq_class RatFunc::evaluate(const PointQ& p) const {
  require_same_chart(chart(), p.chart);
  return evaluate(p.coords);
}

RatFunc RatFunc::embed(ChartPtr target, const std::vector<std::size_t>& index_map) const {
  return RatFunc(num_.embed(target, index_map), den_.embed(target, index_map), Reduced{});
}

std::string RatFunc::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.terms().size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  if (d.find_first_of(" *") != std::string::npos) d = "(" + d + ")";
  return n + "/" + d;
}

RatFunc partial_derivative(const RatFunc& f, std::string_view var) {
  return f.derivative(var);
}

namespace {

RatFunc substitute_poly(const Polynomial& p, const std::vector<RatFunc>& values,
                        const ChartPtr& target) {
  std::map<std::pair<std::size_t, std::uint32_t>, RatFunc> powers;
  auto power_of = [&](std::size_t k, std::uint32_t e) -> const RatFunc& {
    auto key = std::make_pair(k, e);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, values[k].pow(static_cast<int>(e))).first;
    return it->second;
  };
  RatFunc sum(target);
  for (const auto& t : p.terms()) {
    RatFunc term(target, mpq_class(t.coeff));
    for (std::size_t k = 0; k < t.exps.size(); ++k) {
      if (t.exps[k] != 0) term *= power_of(k, t.exps[k]);
    }
    sum += term;
  }
  return sum;
}

}  // namespace

RatFunc substitute(const RatFunc& f, const std::vector<RatFunc>& values) {
  if (values.size() != f.chart()->dimension()) {
    throw Error(ErrorKind::ArityError, "substitution needs one value per variable");
  }
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "empty substitution");
  const ChartPtr& target = values.front().chart();
  for (const auto& v : values) require_same_chart(target, v.chart());
  RatFunc n = substitute_poly(f.numerator(), values, target);
  RatFunc d = substitute_poly(f.denominator(), values, target);
  return n / d;
}

}  // namespace flagrank
