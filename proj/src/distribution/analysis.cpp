#include "flagrank/distribution/analysis.hpp"

#include <sstream>

#include "flagrank/errors.hpp"

namespace flagrank {

bool GrowthVector::is(std::initializer_list<std::size_t> expected) const {
  return ranks == std::vector<std::size_t>(expected);
}

std::string GrowthVector::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < ranks.size(); ++i) os << (i ? "," : "") << ranks[i];
  os << ")";
  return os.str();
}

DerivedFlag derived_flag(const Distribution& d) {
  DerivedFlag flag;
  flag.steps.push_back(d);
  flag.generators.push_back(d.frame());
  flag.growth.ranks.push_back(d.rank());
  while (flag.steps.back().rank() < d.dimension()) {
    const Distribution& prev = flag.steps.back();
    std::vector<VectorField> gens = prev.frame();
    for (const auto& x : d.frame()) {
      for (const auto& y : prev.frame()) gens.push_back(lie_bracket(x, y));
    }
    Distribution next = Distribution::span(d.chart(), gens);
    if (next.rank() == prev.rank()) break;
    flag.growth.ranks.push_back(next.rank());
    flag.steps.push_back(std::move(next));
    flag.generators.push_back(std::move(gens));
  }
  return flag;
}

GrowthVector DerivedFlag::growth_at(const PointQ& p) const {
  GrowthVector g;
  for (const auto& gens : generators) {
    if (gens.empty()) {
      g.ranks.push_back(0);
      continue;
    }
    std::vector<VectorQ> rows;
    rows.reserve(gens.size());
    for (const auto& v : gens) rows.push_back(v.evaluate(p));
    g.ranks.push_back(rank_rational(std::move(rows)));
  }
  return g;
}

bool frobenius_integrable(const Distribution& b) {
  const auto& f = b.frame();
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      if (!b.contains(lie_bracket(f[i], f[j]))) return false;
    }
  }
  return true;
}

Distribution cauchy_characteristic(const Distribution& b) {
  const ChartPtr& chart = b.chart();
  const auto& f = b.frame();
  const auto& ann = b.annihilator();
  if (f.empty()) return b;
  if (ann.empty()) return b;  // B = TM
  // Row (j, l): w_l([b_i, b_j]) as a function of the column index i.
  std::vector<VectorRF> rows;
  std::vector<std::vector<VectorField>> brackets(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      brackets[i].push_back(i == j ? VectorField::zero(chart) : lie_bracket(f[i], f[j]));
    }
  }
  for (std::size_t j = 0; j < f.size(); ++j) {
    for (const auto& w : ann) {
      VectorRF row;
      for (std::size_t i = 0; i < f.size(); ++i) row.push_back(pairing(w, brackets[i][j]));
      rows.push_back(std::move(row));
    }
  }
  std::vector<VectorField> gens;
  for (const auto& k : kernel_basis(MatrixRF::from_rows(chart, rows))) {
    VectorField v = VectorField::zero(chart);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!k[i].is_zero()) v = v + k[i] * f[i];
    }
    gens.push_back(primitive(v));
  }
  return Distribution::span(chart, gens);
}

namespace {

void require_rank35(const Distribution& d) {
  if (d.rank() != 3) {
    throw Error(ErrorKind::NotRank35, "distribution has rank " + std::to_string(d.rank()) +
                                          ", expected 3");
  }
  Distribution d5 = bracket(d, d);
  if (d5.rank() != 5) {
    throw Error(ErrorKind::NotRank35,
                "[D,D] has rank " + std::to_string(d5.rank()) + ", expected 5");
  }
}

}  // namespace

VectorRF square_root_bivector(const Distribution& d) {
  require_rank35(d);
  const auto& f = d.frame();
  const std::vector<VectorField> br = {lie_bracket(f[0], f[1]), lie_bracket(f[0], f[2]),
                                       lie_bracket(f[1], f[2])};
  std::vector<VectorRF> rows;
  for (const auto& w : d.annihilator()) {
    VectorRF row;
    for (const auto& b : br) row.push_back(pairing(w, b));
    rows.push_back(std::move(row));
  }
  auto kernel = kernel_basis(MatrixRF::from_rows(d.chart(), rows));
  if (kernel.size() != 1) {
    throw Error(ErrorKind::Internal, "square-root kernel is not one-dimensional");
  }
  return kernel.front();
}

Distribution square_root_d2(const Distribution& d) {
  const VectorRF beta = square_root_bivector(d);
  const auto& f = d.frame();
  const RatFunc& a = beta[0];
  const RatFunc& b = beta[1];
  const RatFunc& c = beta[2];
  // Interior products of a f0^f1 + b f0^f2 + c f1^f2 with the dual coframe.
  const std::vector<VectorField> contractions = {
      a * f[1] + b * f[2],
      -(a * f[0]) + c * f[2],
      -(b * f[0]) - c * f[1],
  };
  std::vector<VectorField> gens;
  for (const auto& v : contractions) {
    if (!v.is_zero()) gens.push_back(primitive(v));
  }
  Distribution e = Distribution::span(d.chart(), gens);
  if (e.rank() != 2) throw Error(ErrorKind::Internal, "kernel bivector is not decomposable");
  if (!d.contains(lie_bracket(e.frame()[0], e.frame()[1]))) {
    throw Error(ErrorKind::Internal, "square root is not closed modulo D");
  }
  return e;
}

}  // namespace flagrank
