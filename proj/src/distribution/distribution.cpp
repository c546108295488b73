#include "flagrank/distribution/distribution.hpp"

#include "flagrank/errors.hpp"

namespace flagrank {

namespace {

std::vector<OneForm> annihilating_forms(const ChartPtr& chart,
                                        const std::vector<VectorField>& frame) {
  std::vector<OneForm> forms;
  const std::size_t n = chart->dimension();
  if (frame.empty()) {
    for (std::size_t i = 0; i < n; ++i) forms.push_back(OneForm::differential(chart, i));
    return forms;
  }
  std::vector<VectorRF> rows;
  rows.reserve(frame.size());
  for (const auto& f : frame) rows.push_back(f.coefficients());
  for (auto& k : kernel_basis(MatrixRF::from_rows(chart, rows))) {
    forms.emplace_back(chart, std::move(k));
  }
  return forms;
}

}  // namespace

Distribution Distribution::build(const ChartPtr& chart, std::vector<VectorField> frame) {
  auto impl = std::make_shared<Impl>();
  impl->chart = chart;
  impl->annihilator = annihilating_forms(chart, frame);
  impl->frame = std::move(frame);
  if (impl->annihilator.size() + impl->frame.size() != chart->dimension()) {
    throw Error(ErrorKind::Internal, "annihilator size inconsistent with frame rank");
  }
  return Distribution(std::move(impl));
}

Distribution Distribution::span(const ChartPtr& chart, const std::vector<VectorField>& generators) {
  std::vector<VectorField> nonzero;
  for (const auto& g : generators) {
    require_same_chart(chart, g.chart());
    if (!g.is_zero()) nonzero.push_back(g);
  }
  if (nonzero.empty()) return build(chart, {});
  std::vector<VectorRF> cols;
  cols.reserve(nonzero.size());
  for (const auto& g : nonzero) cols.push_back(g.coefficients());
  auto picked = independent_columns(MatrixRF::from_columns(chart, chart->dimension(), cols));
  std::vector<VectorField> frame;
  frame.reserve(picked.size());
  for (auto i : picked) frame.push_back(nonzero[i]);
  return build(chart, std::move(frame));
}

Distribution Distribution::from_frame(const ChartPtr& chart, const std::vector<VectorField>& frame) {
  Distribution d = span(chart, frame);
  if (d.rank() != frame.size()) {
    throw Error(ErrorKind::DegenerateFrame,
                "frame of " + std::to_string(frame.size()) + " fields has generic rank " +
                    std::to_string(d.rank()));
  }
  return build(chart, frame);
}

Distribution Distribution::tangent(const ChartPtr& chart) {
  std::vector<VectorField> frame;
  for (std::size_t i = 0; i < chart->dimension(); ++i) {
    frame.push_back(VectorField::coordinate(chart, i));
  }
  return build(chart, std::move(frame));
}

bool Distribution::contains(const VectorField& v) const {
  require_same_chart(chart(), v.chart());
  for (const auto& w : annihilator()) {
    if (!pairing(w, v).is_zero()) return false;
  }
  return true;
}

bool Distribution::contains(const Distribution& other) const {
  for (const auto& f : other.frame()) {
    if (!contains(f)) return false;
  }
  return true;
}

bool Distribution::same_span(const Distribution& other) const {
  return rank() == other.rank() && contains(other);
}

VectorRF Distribution::quotient_coordinates(const VectorField& v) const {
  VectorRF out;
  out.reserve(annihilator().size());
  for (const auto& w : annihilator()) out.push_back(pairing(w, v));
  return out;
}

std::optional<VectorRF> Distribution::coordinates(const VectorField& v) const {
  if (!contains(v)) return std::nullopt;
  if (rank() == 0) return VectorRF{};
  return solve_in_span(v.coefficients(), frame_matrix());
}

MatrixRF Distribution::frame_matrix() const {
  std::vector<VectorRF> cols;
  for (const auto& f : frame()) cols.push_back(f.coefficients());
  return MatrixRF::from_columns(chart(), dimension(), cols);
}

std::size_t Distribution::rank_at(const PointQ& p) const {
  if (rank() == 0) return 0;
  return flagrank::rank_at(frame_matrix(), p);
}

Distribution operator+(const Distribution& a, const Distribution& b) {
  require_same_chart(a.chart(), b.chart());
  if (a.contains(b)) return a;
  std::vector<VectorField> gens = a.frame();
  gens.insert(gens.end(), b.frame().begin(), b.frame().end());
  return Distribution::span(a.chart(), gens);
}

Distribution bracket(const Distribution& a, const Distribution& b) {
  require_same_chart(a.chart(), b.chart());
  Distribution acc = a + b;
  std::vector<VectorField> gens = acc.frame();
  const std::size_t before = gens.size();
  for (const auto& x : a.frame()) {
    for (const auto& y : b.frame()) {
      VectorField br = lie_bracket(x, y);
      if (!acc.contains(br)) gens.push_back(std::move(br));
    }
  }
  if (gens.size() == before) return acc;
  return Distribution::span(a.chart(), gens);
}

Distribution annihilator_frame(const std::vector<OneForm>& forms) {
  if (forms.empty()) throw Error(ErrorKind::InvalidArgument, "annihilator of no forms");
  const ChartPtr& chart = forms.front().chart();
  std::vector<VectorRF> rows;
  for (const auto& w : forms) {
    require_same_chart(chart, w.chart());
    rows.push_back(w.coefficients());
  }
  MatrixRF m = MatrixRF::from_rows(chart, rows);
  if (rank_generic(m) != forms.size()) {
    throw Error(ErrorKind::DependentForms, "annihilating forms are generically dependent");
  }
  std::vector<VectorField> frame;
  for (auto& k : kernel_basis(m)) frame.emplace_back(chart, std::move(k));
  for (const auto& x : frame) {
    for (const auto& w : forms) {
      if (!pairing(w, x).is_zero()) {
        throw Error(ErrorKind::Internal, "annihilator frame does not annihilate");
      }
    }
  }
  return Distribution::from_frame(chart, frame);
}

}  // namespace flagrank
