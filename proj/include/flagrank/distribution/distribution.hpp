#pragma once

#include <memory>
#include <vector>

#include "flagrank/calculus/fields.hpp"

namespace flagrank {

/// A distribution given by a generically independent frame. Immutable; the
/// frame and its annihilating one-forms are shared between copies.
///
/// Membership tests are exact over the function field: v lies in D iff every
/// annihilating form of D kills v.
class Distribution {
 public:
  /// Span of arbitrary generators; keeps the leftmost independent subset.
  static Distribution span(const ChartPtr& chart, const std::vector<VectorField>& generators);
  /// Frame that must already be independent (else Error(DegenerateFrame)).
  static Distribution from_frame(const ChartPtr& chart, const std::vector<VectorField>& frame);
  static Distribution tangent(const ChartPtr& chart);

  const ChartPtr& chart() const noexcept { return impl_->chart; }
  const std::vector<VectorField>& frame() const noexcept { return impl_->frame; }
  std::size_t rank() const noexcept { return impl_->frame.size(); }
  std::size_t dimension() const noexcept { return impl_->chart->dimension(); }
  const std::vector<OneForm>& annihilator() const noexcept { return impl_->annihilator; }

  bool contains(const VectorField& v) const;
  bool contains(const Distribution& other) const;
  bool same_span(const Distribution& other) const;

  /// Pairings of v with the annihilator: coordinates of v mod D.
  VectorRF quotient_coordinates(const VectorField& v) const;

  /// Coordinates of v in this frame, or nullopt when v is not in D.
  std::optional<VectorRF> coordinates(const VectorField& v) const;

  /// Matrix whose columns are the frame fields.
  MatrixRF frame_matrix() const;
  std::size_t rank_at(const PointQ& p) const;

 private:
  struct Impl {
    ChartPtr chart;
    std::vector<VectorField> frame;
    std::vector<OneForm> annihilator;
  };
  explicit Distribution(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static Distribution build(const ChartPtr& chart, std::vector<VectorField> frame);

  std::shared_ptr<const Impl> impl_;
};

Distribution operator+(const Distribution& a, const Distribution& b);

/// [A,B] as a distribution: A + B + span of the frame brackets.
Distribution bracket(const Distribution& a, const Distribution& b);

/// Distribution annihilated by the given one-forms.
/// Error(DependentForms) unless the forms are generically independent.
Distribution annihilator_frame(const std::vector<OneForm>& forms);

}  // namespace flagrank
