#include "flagrank/parabolic/parabolic.hpp"

#include "flagrank/errors.hpp"

namespace flagrank {

std::string_view to_string(FlagBranch b) {
  return b == FlagBranch::Degenerate ? "Degenerate" : "NonDegenerate";
}

std::string_view to_string(SymbolClass c) { return c == SymbolClass::g0 ? "g0" : "g1"; }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Theorem1: return "Theorem1";
    case Verdict::Theorem2: return "Theorem2";
    case Verdict::Theorem3: return "Theorem3";
    case Verdict::OpenBranch: return "OpenBranch";
  }
  return "?";
}

const Distribution& ParabolicFlag::at(int k) const {
  switch (k) {
    case 1: return d1;
    case 2: return d2;
    case 3: return d3;
    case 4: return d4;
    case 5: return d5;
  }
  throw Error(ErrorKind::InvalidArgument, "flag index out of range");
}

namespace {

Distribution combination_span(const ChartPtr& chart, const std::vector<VectorRF>& kernel,
                              const std::vector<VectorField>& basis) {
  std::vector<VectorField> gens;
  for (const auto& k : kernel) {
    VectorField v = VectorField::zero(chart);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (!k[i].is_zero()) v = v + k[i] * basis[i];
    }
    gens.push_back(primitive(v));
  }
  return Distribution::span(chart, gens);
}

/// Kernel of v -> [x, v] mod target over the frame of `source`.
Distribution bracket_kernel(const VectorField& x, const Distribution& source,
                            const Distribution& target) {
  const ChartPtr& chart = source.chart();
  std::vector<VectorField> brackets;
  for (const auto& b : source.frame()) brackets.push_back(lie_bracket(x, b));
  std::vector<VectorRF> rows;
  for (const auto& w : target.annihilator()) {
    VectorRF row;
    for (const auto& br : brackets) row.push_back(pairing(w, br));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return source;
  return combination_span(chart, kernel_basis(MatrixRF::from_rows(chart, rows)), source.frame());
}

void require_rank(const Distribution& d, std::size_t r, const char* what) {
  if (d.rank() != r) {
    throw Error(ErrorKind::RankUnexpected, std::string(what) + " has rank " +
                                               std::to_string(d.rank()) + ", expected " +
                                               std::to_string(r));
  }
}

/// Frame with X1 spanning d1. Input frame fields of D are preferred as
/// representatives so reported constants refer to the user's fields.
AdaptedFrame rebase(const Distribution& d, const AdaptedFrame& fr, const Distribution& d1,
                    const Distribution& d2) {
  std::vector<VectorField> pool;
  for (const auto& f : d.frame()) {
    if (d2.contains(f)) pool.push_back(f);
  }
  pool.push_back(fr.x1);
  pool.push_back(fr.x2);
  VectorField x1 = d1.frame()[0];
  for (const auto& f : pool) {
    if (d1.contains(f)) {
      x1 = f;
      break;
    }
  }
  for (const auto& cand : pool) {
    if (!d1.contains(cand)) {
      AdaptedFrame out = adapted_frame_with(d, x1, cand, fr.y);
      out.notes = fr.notes;
      out.notes.push_back("X1 spans D1");
      return out;
    }
  }
  throw Error(ErrorKind::Internal, "D2 frame lies in D1");
}

}  // namespace

ParabolicFlag parabolic_flag(const Distribution& d, PointClass cls) {
  if (!is_parabolic(cls)) {
    throw Error(ErrorKind::NotParabolic,
                "distribution is " + std::string(to_string(cls)) + ", not parabolic");
  }
  DoubrovForm form = doubrov_form(d);
  const AdaptedFrame& fr = form.frame;
  const ChartPtr& chart = d.chart();
  Distribution d2 = Distribution::from_frame(chart, {fr.x1, fr.x2});
  Distribution d5 = fr.d5();
  Distribution d1 = d2, d4 = d5;
  FlagBranch branch;
  if (cls == PointClass::ParabolicDeg) {
    branch = FlagBranch::Degenerate;
    d4 = bracket_kernel(fr.y, d5, d5);
    require_rank(d4, 4, "D4");
    d1 = bracket_kernel(fr.y, d2, d4);
    require_rank(d1, 1, "D1");
  } else {
    branch = FlagBranch::NonDegenerate;
    auto radical = kernel_basis(MatrixRF::from_rows(chart, {{form.a11, form.a12}, {form.a21, form.a22}}));
    if (radical.size() != 1) {
      throw Error(ErrorKind::RankUnexpected, "Doubrov form does not have rank 1");
    }
    d1 = combination_span(chart, radical, {fr.x1, fr.x2});
    require_rank(d1, 1, "D1");
    d4 = bracket(d1, d);
    require_rank(d4, 4, "D4");
  }
  if (!d2.contains(d1) || !d4.contains(d) || !d5.contains(d4)) {
    throw Error(ErrorKind::RankUnexpected, "flag is not nested");
  }
  AdaptedFrame frame = rebase(d, fr, d1, d2);
  return ParabolicFlag{d1, d2, d, d4, d5, branch, cls, std::move(frame)};
}

ParabolicFlag parabolic_flag(const Distribution& d) {
  return parabolic_flag(d, classify_generic(d));
}

std::vector<RelationCheck> verify_flag_relations(const ParabolicFlag& f) {
  const Distribution tm = Distribution::tangent(f.d3.chart());
  auto target = [&](int k) -> const Distribution& { return k == 6 ? tm : f.at(k); };
  auto check = [&](int a, int b, int t) {
    auto name = [](int k) { return k == 6 ? std::string("TM") : "D" + std::to_string(k); };
    std::string rel = "[" + name(a) + "," + name(b) + "]=" + name(t);
    return RelationCheck{rel, bracket(f.at(a), f.at(b)).same_span(target(t))};
  };
  std::vector<RelationCheck> out = {check(1, 2, 2), check(1, 3, 4), check(1, 4, 4)};
  if (f.branch == FlagBranch::NonDegenerate) {
    for (auto c : {check(1, 5, 5), check(2, 3, 5), check(2, 4, 5), check(2, 5, 6)}) out.push_back(c);
  } else {
    for (auto c : {check(4, 4, 5), check(2, 4, 5), check(2, 5, 5), check(5, 5, 6)}) out.push_back(c);
  }
  return out;
}

bool all_hold(const std::vector<RelationCheck>& checks) {
  for (const auto& c : checks) {
    if (!c.holds) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Symbol algebra

std::string SymbolAlgebra::label(std::size_t i) { return "e" + std::to_string(weights.at(i)); }

SymbolAlgebra::Vec SymbolAlgebra::bracket(const Vec& a, const Vec& b) const {
  Vec out;
  for (auto& x : out) x = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < 6; ++j) {
      if (b[j] == 0) continue;
      for (std::size_t k = 0; k < 6; ++k) out[k] += a[i] * b[j] * c[i][j][k];
    }
  }
  return out;
}

bool SymbolAlgebra::antisymmetric() const {
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      for (std::size_t k = 0; k < 6; ++k) {
        if (c[i][j][k] != -c[j][i][k]) return false;
      }
    }
  }
  return true;
}

bool SymbolAlgebra::jacobi() const {
  auto unit = [](std::size_t i) {
    Vec v;
    for (auto& x : v) x = 0;
    v[i] = 1;
    return v;
  };
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = 0; b < 6; ++b) {
      for (std::size_t k = 0; k < 6; ++k) {
        Vec ea = unit(a), eb = unit(b), ek = unit(k);
        Vec s1 = bracket(ea, bracket(eb, ek));
        Vec s2 = bracket(eb, bracket(ek, ea));
        Vec s3 = bracket(ek, bracket(ea, eb));
        for (std::size_t i = 0; i < 6; ++i) {
          if (s1[i] + s2[i] + s3[i] != 0) return false;
        }
      }
    }
  }
  return true;
}

bool SymbolAlgebra::graded() const {
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      for (std::size_t k = 0; k < 6; ++k) {
        if (c[i][j][k] != 0 && weights[k] != weights[i] + weights[j]) return false;
      }
    }
  }
  return true;
}

namespace {

struct SymbolFrame {
  std::array<VectorField, 6> e;
};

SymbolFrame symbol_frame(const ParabolicFlag& f) {
  if (f.branch != FlagBranch::NonDegenerate) {
    throw Error(ErrorKind::NotParabolicNonDeg, "symbol algebra needs a non-degenerate parabolic flag");
  }
  const AdaptedFrame& fr = f.frame;
  VectorField e4 = lie_bracket(fr.x1, fr.y);
  VectorField e5 = lie_bracket(fr.x2, fr.y);
  VectorField e7 = lie_bracket(fr.x2, e5);
  return SymbolFrame{{fr.x1, fr.x2, fr.y, e4, e5, e7}};
}

}  // namespace

RatFunc symbol_d_generic(const ParabolicFlag& flag) {
  SymbolFrame sf = symbol_frame(flag);
  const OneForm& w = flag.d5.annihilator().at(0);
  RatFunc we7 = pairing(w, sf.e[5]);
  if (we7.is_zero()) throw Error(ErrorKind::RankUnexpected, "[X2,[X2,Y]] lies in D5");
  return pairing(w, lie_bracket(sf.e[2], sf.e[3])) / we7;
}

SymbolClass symbol_class_generic(const ParabolicFlag& flag) {
  return symbol_d_generic(flag).is_zero() ? SymbolClass::g0 : SymbolClass::g1;
}

SymbolAlgebra symbol_algebra_at(const ParabolicFlag& flag, const PointQ& p) {
  SymbolFrame sf = symbol_frame(flag);
  std::vector<VectorQ> basis;
  for (const auto& f : sf.e) basis.push_back(f.evaluate(p));
  if (rank_rational(basis) != 6) {
    throw Error(ErrorKind::FrameDegenerateAtPoint,
                "symbol basis is not a frame at " + p.to_string());
  }
  const auto& w = SymbolAlgebra::weights;
  SymbolAlgebra s{p, {}, 0, 0, SymbolClass::g0, {}};
  for (auto& row : s.c) {
    for (auto& v : row) {
      for (auto& x : v) x = 0;
    }
  }
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) {
      const int target = w[i] + w[j];
      if (target > 7) continue;  // lands in weight > 7, which is zero
      VectorQ v = lie_bracket(sf.e[i], sf.e[j]).evaluate(p);
      auto coords = solve_rational(basis, v);
      if (!coords) throw Error(ErrorKind::Internal, "bracket outside a full basis");
      for (std::size_t k = 0; k < 6; ++k) {
        if ((*coords)[k] == 0) continue;
        if (w[k] > target) {
          s.violations.push_back("[" + SymbolAlgebra::label(i) + "," + SymbolAlgebra::label(j) +
                                 "] has a component on " + SymbolAlgebra::label(k));
        } else if (w[k] == target) {
          s.c[i][j][k] = (*coords)[k];
          s.c[j][i][k] = -(*coords)[k];
        }
      }
    }
  }
  s.raw_d = s.c[2][3][5];
  if (s.raw_d != 0) {
    // Y -> Y/d rescales e3, e4, e5, e7 by the same factor.
    const mpq_class alpha = 1 / s.raw_d;
    const std::array<mpq_class, 6> scale = {1, 1, alpha, alpha, alpha, alpha};
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        for (std::size_t k = 0; k < 6; ++k) {
          if (s.c[i][j][k] != 0) s.c[i][j][k] *= scale[i] * scale[j] / scale[k];
        }
      }
    }
    s.cls = SymbolClass::g1;
  }
  s.d = s.c[2][3][5];
  return s;
}

SymbolAlgebra symbol_algebra_at(const Distribution& d, const PointQ& p) {
  ParabolicFlag flag = parabolic_flag(d);
  if (flag.branch != FlagBranch::NonDegenerate) {
    throw Error(ErrorKind::NotParabolicNonDeg, "distribution is degenerate parabolic");
  }
  return symbol_algebra_at(flag, p);
}

bool d4_bracket_in_d5(const ParabolicFlag& flag) {
  return flag.d5.contains(bracket(flag.d4, flag.d4));
}

// ---------------------------------------------------------------------------
// Upstairs reduced-pair data

Distribution e_subdistribution(const ParabolicFlag& flag, const std::optional<VectorField>& transverse) {
  if (flag.branch != FlagBranch::NonDegenerate) {
    throw Error(ErrorKind::NotParabolicNonDeg, "E is defined for the non-degenerate branch");
  }
  VectorField x = transverse ? *transverse : flag.frame.x2;
  if (!flag.d2.contains(x) || flag.d1.contains(x)) {
    throw Error(ErrorKind::InvalidArgument, "section must lie in D2 and be transverse to D1");
  }
  Distribution e = bracket_kernel(x, flag.d4, flag.d4);
  require_rank(e, 3, "E");
  if (!e.contains(flag.d2) || !flag.d4.contains(e)) {
    throw Error(ErrorKind::RankUnexpected, "E is not between D2 and D4");
  }
  return e;
}

bool b2_integrable(const ParabolicFlag& flag) { return frobenius_integrable(e_subdistribution(flag)); }

bool b2_integrable(const Distribution& d) { return b2_integrable(parabolic_flag(d)); }

ConstancyReport e_growth_scan(const Distribution& e, const SampleSpec& spec) {
  ConstancyReport r;
  DerivedFlag df = derived_flag(e);
  r.generic = df.growth;
  std::vector<GrowthVector> values;
  auto outcome = sample_points(e.chart(), spec, [&](const PointQ& p) {
    values.push_back(df.growth_at(p));
    return true;
  });
  r.skipped = outcome.skipped;
  for (std::size_t i = 0; i < values.size(); ++i) {
    r.constant = r.constant && values[i] == r.generic;
    r.samples.emplace_back(outcome.accepted[i], values[i]);
  }
  return r;
}

bool completely_nondegenerate(const ParabolicFlag& flag, const SampleSpec& spec) {
  return e_growth_scan(e_subdistribution(flag), spec).constant;
}

BranchReport branch_classify(const Distribution& d, const SampleSpec& spec) {
  PointClass cls = classify_generic(d);
  if (!is_parabolic(cls)) {
    throw Error(ErrorKind::NotParabolic,
                "distribution is " + std::string(to_string(cls)) + ", not parabolic");
  }
  ParabolicFlag flag = parabolic_flag(d, cls);
  BranchReport r{cls, flag, verify_flag_relations(flag), Verdict::Theorem1, {}, {}, {}, {}, {}, {}, {}, {}};
  if (flag.branch == FlagBranch::Degenerate) return r;

  r.d_generic = symbol_d_generic(flag);
  r.symbol = r.d_generic->is_zero() ? SymbolClass::g0 : SymbolClass::g1;
  r.d4_bracket_in_d5 = d4_bracket_in_d5(flag);
  r.e = e_subdistribution(flag);
  r.b2_integrable = frobenius_integrable(*r.e);
  r.e_growth = e_growth_scan(*r.e, spec);
  r.completely_nondegenerate = r.e_growth->constant;
  if (!*r.b2_integrable) {
    r.verdict = Verdict::Theorem2;
    r.equation_type = *r.symbol == SymbolClass::g0;
  } else {
    r.verdict = *r.symbol == SymbolClass::g0 ? Verdict::Theorem3 : Verdict::OpenBranch;
  }
  return r;
}

}  // namespace flagrank
