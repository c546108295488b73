#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flagrank/dsl/dsl.hpp"
#include "flagrank/errors.hpp"
#include "flagrank/parabolic/parabolic.hpp"

namespace flagrank::models {

/// Golden invariants a catalog model must reproduce. For lift models they
/// describe the lifted distribution.
struct Expected {
  std::optional<ErrorKind> error;  // the model is a negative example
  std::string growth = "(3,5,6)";
  PointClass point_class = PointClass::ParabolicNonDeg;
  bool regular = true;
  std::optional<Verdict> verdict;
  std::optional<SymbolClass> symbol;
  std::optional<bool> b2_integrable;
  std::optional<bool> equation_type;
  std::optional<bool> completely_nondegenerate;
};

struct ModelSpec {
  std::string name;
  std::string description;
  std::string source;  // `.dist` text
  bool lift = false;   // the main distribution is a pair (B1, B3) to lift
  Expected expected;
};

/// Stable list, in documentation order.
const std::vector<ModelSpec>& catalog_list();

/// Error(UnknownModel) for names not in the catalog.
const ModelSpec& find_model(std::string_view name);

/// `.dist` text of a catalog model.
std::string emit(std::string_view name);

dsl::Model load_model(std::string_view name);

/// Main distribution of a loaded model: the last declared `dist`.
const Distribution& main_distribution(const dsl::Model& m);

// Cartan distribution of the mixed jet space on (t,u,v,u1,u2,v1).
Distribution model_j21();

/// du1 - u2 dx, du2 - z dx, du3 + F y dx + z dy on (u1,u2,u3,x,y,z).
/// F may use only x, u1, u2, z (matched by name; Error(BadParameterSupport)
/// otherwise).
Distribution model_eq3(const RatFunc& f);
Distribution model_eq5();

/// du1 - u2 dx, du2 - z dx, du3 - (F(x,u1,u2,z,u3+yz) - y u3 - y^2 z) dx + z dy.
/// F may use x, u1, u2, z and w, where w stands for u3 + y z.
Distribution model_eq4(const RatFunc& f);
Distribution model_eq6();

/// Frame Dx, Dy, @u_xx on (x,y,u,u_x,u_xx,v).
Distribution model_g1_flat();

Distribution model_elliptic_demo();
Distribution model_hyperbolic_demo();
/// Form proportional to diag(1, y): elliptic for y > 0, hyperbolic for y < 0.
Distribution model_mixed_signature_demo();

std::string eq3_source(const RatFunc& f);
std::string eq4_source(const RatFunc& f);

// Lift of a rank-1 / rank-3 pair (B1, B3) on N to span(@s, X, Z + s Y).

struct LiftCheck {
  bool independent = false;
  std::size_t rank_b1_b3 = 0;     // rank [B1, B3], must be 4
  std::size_t rank_b1_b1_b3 = 0;  // rank [B1, [B1, B3]], must be dim N
  bool ok = false;
};

LiftCheck lift_preconditions(const VectorField& x, const VectorField& y, const VectorField& z);

/// Error(LiftPreconditionFailed) unless the preconditions hold. The fiber
/// coordinate is `s` (or `s1`, `s2`, ... if taken).
Distribution lift_pair(const VectorField& x, const VectorField& y, const VectorField& z);

/// Lift of the first three frame fields of a rank-3 distribution.
Distribution lift_distribution(const Distribution& b3);

}  // namespace flagrank::models
