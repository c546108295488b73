#pragma once

#include <string>
#include <vector>

#include "flagrank/distribution/distribution.hpp"

namespace flagrank {

struct GrowthVector {
  std::vector<std::size_t> ranks;

  bool operator==(const GrowthVector&) const = default;
  bool is(std::initializer_list<std::size_t> expected) const;
  std::string to_string() const;  // "(3,5,6)"
};

/// D = D^1 ⊂ D^2 ⊂ ... with D^{k+1} = D^k + [D, D^k], up to stabilization.
struct DerivedFlag {
  std::vector<Distribution> steps;
  /// All generators of each step (frame of the previous step plus the new
  /// brackets); pointwise ranks are taken over these.
  std::vector<std::vector<VectorField>> generators;
  GrowthVector growth;

  /// Ranks of the steps at `p`. Error(PoleAtPoint) on poles.
  GrowthVector growth_at(const PointQ& p) const;
};

DerivedFlag derived_flag(const Distribution& d);

bool frobenius_integrable(const Distribution& b);

/// Kernel of v -> [v, B] mod B, computed over the function field.
Distribution cauchy_characteristic(const Distribution& b);

/// Unique rank-2 subdistribution E of a (3,5,...) distribution with
/// [E,E] ⊂ D: the kernel of Λ²D -> [D,D]/D, whose single bivector is split
/// by interior products. Error(NotRank35) if rank D != 3 or rk[D,D] != 5.
Distribution square_root_d2(const Distribution& d);

/// Coefficients (a, b, c) of the kernel bivector a f0^f1 + b f0^f2 + c f1^f2
/// over the frame (f0, f1, f2) of D. Exposed for tests.
VectorRF square_root_bivector(const Distribution& d);

}  // namespace flagrank
