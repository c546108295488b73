#include "flagrank/classify/doubrov.hpp"

#include "flagrank/errors.hpp"

namespace flagrank {

std::string_view to_string(PointClass c) {
  switch (c) {
    case PointClass::Elliptic: return "Elliptic";
    case PointClass::Hyperbolic: return "Hyperbolic";
    case PointClass::ParabolicNonDeg: return "ParabolicNonDeg";
    case PointClass::ParabolicDeg: return "ParabolicDeg";
  }
  return "?";
}

bool is_parabolic(PointClass c) {
  return c == PointClass::ParabolicNonDeg || c == PointClass::ParabolicDeg;
}

Distribution AdaptedFrame::d5() const {
  return Distribution::from_frame(x1.chart(), {x1, x2, y, y1, y2});
}

DerivedFlag require_growth356(const Distribution& d) {
  DerivedFlag flag = derived_flag(d);
  if (!flag.growth.is({3, 5, 6})) {
    throw Error(ErrorKind::NotGrowth356,
                "growth vector is " + flag.growth.to_string() + ", expected (3,5,6)");
  }
  return flag;
}

namespace {

/// v(0) lies outside the span of the frame values at the origin, and
/// that frame is a basis there.
bool transverse_at_origin(const Distribution& d, const VectorField& v) {
  PointQ origin(d.chart(), std::vector<mpq_class>(d.dimension(), 0));
  try {
    std::vector<VectorQ> rows;
    for (const auto& f : d.frame()) rows.push_back(f.evaluate(origin));
    if (rank_rational(rows) != d.rank()) return false;
    rows.push_back(v.evaluate(origin));
    return rank_rational(std::move(rows)) == d.rank() + 1;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::PoleAtPoint) return false;
    throw;
  }
}

/// First candidate outside `d`, preferring ones transverse at the origin.
std::optional<std::size_t> pick_transverse(const Distribution& d,
                                           const std::vector<VectorField>& candidates) {
  std::optional<std::size_t> fallback;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (d.contains(candidates[i])) continue;
    if (transverse_at_origin(d, candidates[i])) return i;
    if (!fallback) fallback = i;
  }
  return fallback;
}

AdaptedFrame complete_frame(const Distribution& d, VectorField x1, VectorField x2, VectorField y,
                            const std::optional<VectorField>& z, std::vector<std::string> notes) {
  VectorField y1 = lie_bracket(y, x1);
  VectorField y2 = lie_bracket(y, x2);
  Distribution d5 = Distribution::span(d.chart(), {x1, x2, y, y1, y2});
  if (d5.rank() != 5) {
    throw Error(ErrorKind::NotGrowth356, "span(X1,X2,Y,[Y,X1],[Y,X2]) has rank " +
                                             std::to_string(d5.rank()) + ", expected 5");
  }
  VectorField zf = VectorField::zero(d.chart());
  if (z) {
    if (d5.contains(*z)) throw Error(ErrorKind::InvalidArgument, "Z lies in [D,D]");
    zf = *z;
  } else {
    std::vector<VectorField> coords;
    for (std::size_t i = 0; i < d.dimension(); ++i) coords.push_back(VectorField::coordinate(d.chart(), i));
    auto i = pick_transverse(d5, coords);
    if (!i) throw Error(ErrorKind::Internal, "no coordinate direction complements [D,D]");
    zf = coords[*i];
    notes.push_back("Z = @" + d.chart()->variable(*i));
  }
  return AdaptedFrame{std::move(x1), std::move(x2), std::move(y), std::move(y1),
                      std::move(y2), std::move(zf), std::move(notes)};
}

}  // namespace

AdaptedFrame adapted_frame(const Distribution& d) {
  require_growth356(d);
  Distribution d2 = square_root_d2(d);
  // Basis of D2: input frame fields lying in D2 first, then the computed frame.
  std::vector<VectorField> basis;
  for (const auto& f : d.frame()) {
    if (d2.contains(f)) basis.push_back(f);
  }
  for (const auto& f : d2.frame()) basis.push_back(f);
  Distribution picked = Distribution::span(d.chart(), basis);
  std::vector<std::string> notes = {"X1, X2: basis of the square root D2"};
  auto y = pick_transverse(d2, d.frame());
  if (!y) throw Error(ErrorKind::Internal, "D is contained in its square root");
  notes.push_back("Y: frame field " + std::to_string(*y + 1) + " of D");
  return complete_frame(d, picked.frame()[0], picked.frame()[1], d.frame()[*y], std::nullopt,
                        std::move(notes));
}

AdaptedFrame adapted_frame_with(const Distribution& d, const VectorField& x1,
                                const VectorField& x2, const VectorField& y,
                                const std::optional<VectorField>& z) {
  require_growth356(d);
  Distribution d2 = square_root_d2(d);
  Distribution given = Distribution::span(d.chart(), {x1, x2});
  if (given.rank() != 2 || !given.same_span(d2)) {
    throw Error(ErrorKind::InvalidArgument, "X1, X2 do not span the square root D2");
  }
  if (!d.contains(y) || d2.contains(y)) {
    throw Error(ErrorKind::InvalidArgument, "Y must lie in D and outside D2");
  }
  return complete_frame(d, x1, x2, y, z, {"caller-supplied X1, X2, Y"});
}

std::array<mpq_class, 3> DoubrovForm::at(const PointQ& p) const {
  std::vector<VectorQ> rows;
  for (const auto& f : frame.fields()) rows.push_back(f.evaluate(p));
  if (rank_rational(std::move(rows)) != 6) {
    throw Error(ErrorKind::FrameDegenerateAtPoint,
                "adapted frame is not a basis at " + p.to_string());
  }
  return {a11.evaluate(p), a12.evaluate(p), a22.evaluate(p)};
}

DoubrovForm doubrov_form(const Distribution& d, const AdaptedFrame& fr) {
  (void)d;
  Distribution d5 = fr.d5();
  const OneForm& w = d5.annihilator().at(0);
  RatFunc wz = pairing(w, fr.z);
  auto coeff = [&](const VectorField& x, const VectorField& y) {
    return pairing(w, lie_bracket(x, y)) / wz;
  };
  DoubrovForm f{coeff(fr.x1, fr.y1), coeff(fr.x1, fr.y2), coeff(fr.x2, fr.y1), coeff(fr.x2, fr.y2), fr};
  if (f.a12 != f.a21) {
    throw Error(ErrorKind::SymmetryViolated,
                "a12 = " + f.a12.to_string() + " differs from a21 = " + f.a21.to_string());
  }
  return f;
}

DoubrovForm doubrov_form(const Distribution& d) { return doubrov_form(d, adapted_frame(d)); }

PointClass classify_matrix(const mpq_class& a11, const mpq_class& a12, const mpq_class& a22) {
  if (a11 == 0 && a12 == 0 && a22 == 0) return PointClass::ParabolicDeg;
  mpq_class det = a11 * a22 - a12 * a12;
  if (det == 0) return PointClass::ParabolicNonDeg;
  return det > 0 ? PointClass::Elliptic : PointClass::Hyperbolic;
}

PointClass classify_at(const DoubrovForm& form, const PointQ& p) {
  auto a = form.at(p);
  return classify_matrix(a[0], a[1], a[2]);
}

PointClass classify_at(const Distribution& d, const PointQ& p) {
  return classify_at(doubrov_form(d), p);
}

PointClass classify_generic(const DoubrovForm& form) {
  if (form.a11.is_zero() && form.a12.is_zero() && form.a22.is_zero()) {
    return PointClass::ParabolicDeg;
  }
  RatFunc det = form.a11 * form.a22 - form.a12 * form.a12;
  if (det.is_zero()) return PointClass::ParabolicNonDeg;
  PointSampler sampler(det.chart(), 0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    PointQ p = sampler.next();
    try {
      mpq_class v = det.evaluate(p);
      if (v != 0) return v > 0 ? PointClass::Elliptic : PointClass::Hyperbolic;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PoleAtPoint) throw;
    }
  }
  throw Error(ErrorKind::SampleBudgetExhausted, "no sample point with nonzero determinant");
}

PointClass classify_generic(const Distribution& d) { return classify_generic(doubrov_form(d)); }

RegularityReport regularity_scan(const DoubrovForm& form, const SampleSpec& spec) {
  RegularityReport report;
  report.generic = classify_generic(form);
  std::vector<std::array<mpq_class, 3>> values;
  auto outcome = sample_points(form.frame.x1.chart(), spec, [&](const PointQ& p) {
    values.push_back(form.at(p));
    return true;
  });
  report.skipped = outcome.skipped;
  for (std::size_t i = 0; i < outcome.accepted.size(); ++i) {
    const auto& a = values[i];
    PointClass c = classify_matrix(a[0], a[1], a[2]);
    report.regular = report.regular && c == report.generic;
    report.points.push_back({outcome.indices[i], outcome.accepted[i], a, c});
  }
  return report;
}

RegularityReport regularity_scan(const Distribution& d, const SampleSpec& spec) {
  return regularity_scan(doubrov_form(d), spec);
}

}  // namespace flagrank
