#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "flagrank/classify/doubrov.hpp"

namespace flagrank {

enum class FlagBranch { Degenerate, NonDegenerate };

std::string_view to_string(FlagBranch b);

/// D1 ⊂ D2 ⊂ D3 = D ⊂ D4 ⊂ D5 = [D,D] of a parabolic (3,5,6)-distribution,
/// with an adapted frame whose X1 spans D1.
struct ParabolicFlag {
  Distribution d1, d2, d3, d4, d5;
  FlagBranch branch;
  PointClass point_class;
  AdaptedFrame frame;

  const Distribution& at(int k) const;  // k = 1..5
};

/// Error(NotParabolic) for elliptic or hyperbolic classes.
ParabolicFlag parabolic_flag(const Distribution& d, PointClass cls);
ParabolicFlag parabolic_flag(const Distribution& d);

struct RelationCheck {
  std::string relation;
  bool holds;
};

/// Span identities the flag must satisfy: [D1,D2]=D2, [D1,D3]=D4,
/// [D1,D4]=D4 in both branches, plus [D1,D5]=D5, [D2,D3]=D5, [D2,D4]=D5,
/// [D2,D5]=TM (non-degenerate) or [D4,D4]=D5, [D2,D4]=D5, [D2,D5]=D5,
/// [D5,D5]=TM (degenerate).
std::vector<RelationCheck> verify_flag_relations(const ParabolicFlag& flag);
bool all_hold(const std::vector<RelationCheck>& checks);

enum class SymbolClass { g0, g1 };

std::string_view to_string(SymbolClass c);

/// Graded nilpotentization at a point in the basis e1, e2, e3, e4, e5, e7
/// (weights 1, 2, 3, 4, 5, 7) with representatives
///   e1 = X1 (spans D1), e2 = X2, e3 = Y, e4 = [X1, Y], e5 = [X2, Y],
///   e7 = [X2, [X2, Y]].
/// Y is rescaled so that d ∈ {0, 1}.
struct SymbolAlgebra {
  static constexpr std::array<int, 6> weights = {1, 2, 3, 4, 5, 7};
  using Vec = std::array<mpq_class, 6>;

  PointQ point;
  /// c[i][j][k]: coefficient of basis element k in [e_i, e_j] (normalized basis).
  std::array<std::array<Vec, 6>, 6> c;
  mpq_class raw_d;
  mpq_class d;
  SymbolClass cls;
  /// Bracket components that leave the filtration (higher weight than
  /// allowed) or land in the empty weight 6; empty for a consistent flag.
  std::vector<std::string> violations;

  Vec bracket(const Vec& a, const Vec& b) const;
  bool antisymmetric() const;
  bool jacobi() const;
  /// Every nonzero constant sits on the weight w_i + w_j.
  bool graded() const;
  static std::string label(std::size_t i);  // "e1" ... "e5", "e7"
};

/// Error(NotParabolicNonDeg) unless the flag is non-degenerate;
/// Error(FrameDegenerateAtPoint) / Error(PoleAtPoint) at bad points.
SymbolAlgebra symbol_algebra_at(const ParabolicFlag& flag, const PointQ& p);
SymbolAlgebra symbol_algebra_at(const Distribution& d, const PointQ& p);

/// Coefficient of e7 in [e3, e4] over the function field (before rescaling).
RatFunc symbol_d_generic(const ParabolicFlag& flag);
SymbolClass symbol_class_generic(const ParabolicFlag& flag);

/// [D4, D4] ⊆ D5; equivalent to symbol class g0.
bool d4_bracket_in_d5(const ParabolicFlag& flag);

/// E = {v ∈ D4 : [X, v] ∈ D4} for a section X of D2 transverse to D1
/// (default: the flag frame's X2). Error(RankUnexpected) unless
/// rank E = 3 and D2 ⊆ E ⊆ D4.
Distribution e_subdistribution(const ParabolicFlag& flag,
                               const std::optional<VectorField>& transverse = std::nullopt);

bool b2_integrable(const ParabolicFlag& flag);
bool b2_integrable(const Distribution& d);

struct ConstancyReport {
  GrowthVector generic;
  std::vector<std::pair<PointQ, GrowthVector>> samples;
  std::size_t skipped = 0;
  bool constant = true;
};

/// Pointwise derived-flag ranks of E at seeded samples against the generic
/// ranks.
ConstancyReport e_growth_scan(const Distribution& e, const SampleSpec& spec);
bool completely_nondegenerate(const ParabolicFlag& flag, const SampleSpec& spec);

enum class Verdict { Theorem1, Theorem2, Theorem3, OpenBranch };

std::string_view to_string(Verdict v);

struct BranchReport {
  PointClass point_class;
  ParabolicFlag flag;
  std::vector<RelationCheck> relations;
  Verdict verdict;

  // Non-degenerate branch only.
  std::optional<SymbolClass> symbol;
  std::optional<RatFunc> d_generic;
  std::optional<Distribution> e;
  std::optional<bool> b2_integrable;
  std::optional<ConstancyReport> e_growth;
  std::optional<bool> completely_nondegenerate;
  std::optional<bool> d4_bracket_in_d5;
  std::optional<bool> equation_type;  // Theorem2 only
};

/// Error(NotParabolic) for elliptic / hyperbolic input.
BranchReport branch_classify(const Distribution& d, const SampleSpec& spec = {});

}  // namespace flagrank
