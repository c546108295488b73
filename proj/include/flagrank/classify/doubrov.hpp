#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flagrank/classify/sampler.hpp"
#include "flagrank/distribution/analysis.hpp"

namespace flagrank {

enum class PointClass { Elliptic, Hyperbolic, ParabolicNonDeg, ParabolicDeg };

std::string_view to_string(PointClass c);
bool is_parabolic(PointClass c);

/// Frame (X1, X2, Y, Y1, Y2, Z) of a (3,5,6)-distribution D: X1, X2 span the
/// square root D2, Y completes them to a frame of D, Yi = [Y, Xi], and Z
/// completes [D,D] = span(X1, X2, Y, Y1, Y2) to a frame of TM.
struct AdaptedFrame {
  VectorField x1, x2, y, y1, y2, z;
  std::vector<std::string> notes;

  std::vector<VectorField> fields() const { return {x1, x2, y, y1, y2, z}; }
  /// span(X1, X2, Y, Y1, Y2) = [D, D].
  Distribution d5() const;
};

/// Error(NotGrowth356) unless D has generic growth vector (3,5,6).
DerivedFlag require_growth356(const Distribution& d);

/// Deterministic choices. (X1, X2): frame fields of D lying in D2, topped up
/// from the computed frame of D2. Y: the first frame field of D that is
/// outside D2 at the origin, else the first outside D2 generically. Z: the
/// first coordinate direction outside [D,D] at the origin, else the first
/// outside generically.
AdaptedFrame adapted_frame(const Distribution& d);

/// Adapted frame from caller-chosen X1, X2, Y (and optionally Z); validates
/// the choices and derives Y1, Y2.
AdaptedFrame adapted_frame_with(const Distribution& d, const VectorField& x1,
                                const VectorField& x2, const VectorField& y,
                                const std::optional<VectorField>& z = std::nullopt);

/// [Xi, Yj] = a_ij Z mod [D,D].
struct DoubrovForm {
  RatFunc a11, a12, a21, a22;
  AdaptedFrame frame;

  /// (a11, a12, a22) at p. Error(PoleAtPoint) on poles and
  /// Error(FrameDegenerateAtPoint) where the adapted frame is not a basis.
  std::array<mpq_class, 3> at(const PointQ& p) const;
};

DoubrovForm doubrov_form(const Distribution& d, const AdaptedFrame& fr);
DoubrovForm doubrov_form(const Distribution& d);

/// Class of a symmetric 2x2 form; insensitive to overall scale.
PointClass classify_matrix(const mpq_class& a11, const mpq_class& a12, const mpq_class& a22);

PointClass classify_at(const DoubrovForm& form, const PointQ& p);
PointClass classify_at(const Distribution& d, const PointQ& p);

/// Class over the function field. Rank 0 and rank 1 are decided exactly; for
/// rank 2 the sign of the determinant is read at the first sample point
/// (seed 0) where it is defined and nonzero.
PointClass classify_generic(const DoubrovForm& form);
PointClass classify_generic(const Distribution& d);

struct PointReport {
  std::size_t index;  // candidate number in the sampler sequence
  PointQ point;
  std::array<mpq_class, 3> form;
  PointClass cls;
};

struct RegularityReport {
  std::vector<PointReport> points;
  std::size_t skipped = 0;
  PointClass generic;
  bool regular = true;
};

/// Seeded scan; skips poles and points where the adapted frame degenerates.
RegularityReport regularity_scan(const Distribution& d, const SampleSpec& spec);
RegularityReport regularity_scan(const DoubrovForm& form, const SampleSpec& spec);

}  // namespace flagrank
