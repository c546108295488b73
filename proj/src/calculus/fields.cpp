#include "flagrank/calculus/fields.hpp"

#include "flagrank/errors.hpp"

namespace flagrank {

namespace {

void check_coefficients(const ChartPtr& chart, const VectorRF& coeffs) {
  if (!chart) throw Error(ErrorKind::InvalidArgument, "field without chart");
  if (coeffs.size() != chart->dimension()) {
    throw Error(ErrorKind::ArityError, "coefficient count " + std::to_string(coeffs.size()) +
                                           " does not match chart dimension " +
                                           std::to_string(chart->dimension()));
  }
  for (const auto& c : coeffs) require_same_chart(chart, c.chart());
}

std::string combination_text(const ChartPtr& chart, const VectorRF& coeffs,
                             const std::vector<std::string>& atoms) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const RatFunc& c = coeffs[i];
    if (c.is_zero()) continue;
    const bool negative = c.leading_sign() < 0;
    const RatFunc m = negative ? -c : c;
    std::string body;
    if (m.is_one()) {
      body = atoms[i];
    } else {
      std::string s = m.to_string();
      if (m.is_polynomial() && m.numerator().terms().size() > 1) s = "(" + s + ")";
      body = s + "*" + atoms[i];
    }
    if (out.empty()) {
      out = negative ? "-" + body : body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  if (out.empty()) out = "0*" + atoms.at(0);
  (void)chart;
  return out;
}

}  // namespace

VectorField::VectorField(ChartPtr chart, VectorRF coefficients)
    : chart_(std::move(chart)), coeffs_(std::move(coefficients)) {
  check_coefficients(chart_, coeffs_);
}

VectorField VectorField::zero(const ChartPtr& chart) {
  return VectorField(chart, VectorRF(chart->dimension(), RatFunc(chart)));
}

VectorField VectorField::coordinate(const ChartPtr& chart, std::size_t index) {
  VectorRF c(chart->dimension(), RatFunc(chart));
  c.at(index) = RatFunc(chart, 1);
  return VectorField(chart, std::move(c));
}

VectorField VectorField::coordinate(const ChartPtr& chart, std::string_view name) {
  return coordinate(chart, chart->require_index(name));
}

bool VectorField::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

RatFunc VectorField::apply(const RatFunc& f) const {
  require_same_chart(chart_, f.chart());
  RatFunc sum(chart_);
  const auto support = f.support();
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j].is_zero() || !support[j]) continue;
    sum += coeffs_[j] * f.derivative(j);
  }
  return sum;
}

VectorField VectorField::operator-() const {
  VectorRF c;
  c.reserve(coeffs_.size());
  for (const auto& e : coeffs_) c.push_back(-e);
  return VectorField(chart_, std::move(c));
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  require_same_chart(a.chart_, b.chart_);
  VectorRF c;
  c.reserve(a.coeffs_.size());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c.push_back(a.coeffs_[i] + b.coeffs_[i]);
  return VectorField(a.chart_, std::move(c));
}

VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-b); }

VectorField operator*(const RatFunc& f, const VectorField& x) {
  require_same_chart(f.chart(), x.chart_);
  VectorRF c;
  c.reserve(x.coeffs_.size());
  for (const auto& e : x.coeffs_) c.push_back(f * e);
  return VectorField(x.chart_, std::move(c));
}

VectorQ VectorField::evaluate(const PointQ& p) const {
  require_same_chart(chart_, p.chart);
  VectorQ out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.evaluate(p.coords));
  return out;
}

std::string VectorField::to_string() const {
  std::vector<std::string> atoms;
  for (const auto& v : chart_->variables()) atoms.push_back("@" + v);
  return combination_text(chart_, coeffs_, atoms);
}

OneForm::OneForm(ChartPtr chart, VectorRF coefficients)
    : chart_(std::move(chart)), coeffs_(std::move(coefficients)) {
  check_coefficients(chart_, coeffs_);
}

OneForm OneForm::differential(const ChartPtr& chart, std::size_t index) {
  VectorRF c(chart->dimension(), RatFunc(chart));
  c.at(index) = RatFunc(chart, 1);
  return OneForm(chart, std::move(c));
}

OneForm OneForm::differential(const ChartPtr& chart, std::string_view name) {
  return differential(chart, chart->require_index(name));
}

OneForm OneForm::operator-() const {
  VectorRF c;
  for (const auto& e : coeffs_) c.push_back(-e);
  return OneForm(chart_, std::move(c));
}

OneForm operator+(const OneForm& a, const OneForm& b) {
  require_same_chart(a.chart_, b.chart_);
  VectorRF c;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c.push_back(a.coeffs_[i] + b.coeffs_[i]);
  return OneForm(a.chart_, std::move(c));
}

OneForm operator-(const OneForm& a, const OneForm& b) { return a + (-b); }

OneForm operator*(const RatFunc& f, const OneForm& w) {
  require_same_chart(f.chart(), w.chart_);
  VectorRF c;
  for (const auto& e : w.coeffs_) c.push_back(f * e);
  return OneForm(w.chart_, std::move(c));
}

std::string OneForm::to_string() const {
  std::vector<std::string> atoms;
  for (const auto& v : chart_->variables()) atoms.push_back("d(" + v + ")");
  return combination_text(chart_, coeffs_, atoms);
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart(), y.chart());
  const ChartPtr& chart = x.chart();
  const std::size_t n = chart->dimension();
  VectorRF out(n, RatFunc(chart));
  for (std::size_t i = 0; i < n; ++i) {
    RatFunc v = x.apply(y[i]);
    v -= y.apply(x[i]);
    out[i] = std::move(v);
  }
  return VectorField(chart, std::move(out));
}

RatFunc pairing(const OneForm& w, const VectorField& x) {
  require_same_chart(w.chart(), x.chart());
  RatFunc sum(w.chart());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].is_zero() || x[i].is_zero()) continue;
    sum += w[i] * x[i];
  }
  return sum;
}

VectorField primitive(const VectorField& x) {
  if (x.is_zero()) return x;
  return VectorField(x.chart(), primitive_vector(x.coefficients()));
}

VectorField embed(const VectorField& x, const ChartPtr& target) {
  std::vector<std::size_t> map;
  for (const auto& v : x.chart()->variables()) map.push_back(target->require_index(v));
  VectorRF c(target->dimension(), RatFunc(target));
  for (std::size_t i = 0; i < x.size(); ++i) c[map[i]] = x[i].embed(target, map);
  return VectorField(target, std::move(c));
}

}  // namespace flagrank
