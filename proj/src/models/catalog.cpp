#include "flagrank/models/catalog.hpp"


namespace flagrank::models {

namespace {

const char* const kJ21 = R"(chart M(t, u, v, u1, u2, v1)
form w1 = d(u) - u1*d(t)
form w2 = d(u1) - u2*d(t)
form w3 = d(v) - v1*d(t)
dist D = ann(w1, w2, w3)
)";

const char* const kG1Flat = R"(chart M(x, y, u, u_x, u_xx, v)
field Dx = @x + u_x*@u + u_xx*@u_x
field Dy = @y + 1/2*u_xx^2*@u + u_xx*@v
field U = @u_xx
dist D = span(Dx, Dy, U)
)";

std::string demo_source(const std::string& z_coefficient) {
  return "chart M(x1, x2, y, y1, y2, z)\n"
         "field X1 = @x1\n"
         "field X2 = @x2\n"
         "field Y = @y + x1*@y1 + x2*@y2 + " + z_coefficient + "*@z\n"
         "dist D = span(X1, X2, Y)\n";
}

const char* const kJetChart = "chart N(x, phi0, phi1, phi2, phi3)\n";

ChartPtr eq_chart() { return make_chart("M", {"u1", "u2", "u3", "x", "y", "z"}); }

/// Maps F (any chart) onto `target` by variable name. `allowed` lists the
/// admissible names and their images.
RatFunc transplant(const RatFunc& f, const std::vector<std::pair<std::string, RatFunc>>& allowed,
                   const ChartPtr& target) {
  const ChartPtr& src = f.chart();
  const std::vector<bool> used = f.support();
  std::vector<RatFunc> values;
  std::string names;
  for (const auto& a : allowed) names += (names.empty() ? "" : ", ") + a.first;
  for (std::size_t i = 0; i < src->dimension(); ++i) {
    const std::string& v = src->variable(i);
    const RatFunc* image = nullptr;
    for (const auto& a : allowed) {
      if (a.first == v) image = &a.second;
    }
    if (image) {
      values.push_back(*image);
    } else if (used[i]) {
      throw Error(ErrorKind::BadParameterSupport,
                  "parameter function depends on '" + v + "'; allowed variables: " + names);
    } else {
      values.emplace_back(target);
    }
  }
  return substitute(f, values);
}

std::string forms_source(const ChartPtr& chart, const std::vector<OneForm>& forms) {
  std::string out = "chart " + chart->name() + "(";
  for (std::size_t i = 0; i < chart->dimension(); ++i) out += (i ? ", " : "") + chart->variable(i);
  out += ")\n";
  std::string names;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    std::string n = "w" + std::to_string(i + 1);
    out += "form " + n + " = " + forms[i].to_string() + "\n";
    names += (i ? ", " : "") + n;
  }
  out += "dist D = ann(" + names + ")\n";
  return out;
}

std::vector<OneForm> eq_common_forms(const ChartPtr& c) {
  auto v = [&](const char* n) { return RatFunc::variable(c, n); };
  auto dd = [&](const char* n) { return OneForm::differential(c, n); };
  return {dd("u1") - v("u2") * dd("x"), dd("u2") - v("z") * dd("x")};
}

std::vector<std::pair<std::string, RatFunc>> eq_params(const ChartPtr& c, bool with_w) {
  std::vector<std::pair<std::string, RatFunc>> p;
  for (const char* n : {"x", "u1", "u2", "z"}) p.emplace_back(n, RatFunc::variable(c, n));
  if (with_w) p.emplace_back("w", RatFunc::variable(c, "u3") + RatFunc::variable(c, "y") * RatFunc::variable(c, "z"));
  return p;
}

Expected parabolic(Verdict v, std::optional<SymbolClass> s, std::optional<bool> b2,
                   std::optional<bool> eq_type) {
  Expected e;
  e.point_class = PointClass::ParabolicNonDeg;
  e.verdict = v;
  e.symbol = s;
  e.b2_integrable = b2;
  e.equation_type = eq_type;
  e.completely_nondegenerate = true;
  return e;
}

std::string canonical(const std::string& name, const std::string& description,
                      const std::string& raw) {
  return "# " + name + ": " + description + "\n" + dsl::print(dsl::load({raw, name}));
}

std::vector<ModelSpec> build_catalog() {
  std::vector<ModelSpec> out;
  auto add = [&](std::string name, std::string description, const std::string& raw, bool lift,
                 Expected e) {
    std::string text = canonical(name, description, raw);
    out.push_back({std::move(name), std::move(description), std::move(text), lift, std::move(e)});
  };

  {
    Expected e;
    e.point_class = PointClass::ParabolicDeg;
    e.verdict = Verdict::Theorem1;
    add("j21", "Cartan distribution of the mixed jet space J^{2,1}(R,R^2)",
        std::string(kJ21) + "task growth\ntask classify\ntask branch\n", false, e);
  }
  const ChartPtr c = eq_chart();
  add("eq5", "flat model with symbol g0 (integrable B2 family, F = 0)",
      eq3_source(RatFunc(c)) + "task growth\ntask branch\n", false,
      parabolic(Verdict::Theorem3, SymbolClass::g0, true, std::nullopt));
  add("eq3_u2", "integrable B2 family with F = u2",
      eq3_source(RatFunc::variable(c, "u2")) + "task branch\n", false,
      parabolic(Verdict::Theorem3, SymbolClass::g0, true, std::nullopt));
  add("eq6", "non-integrable B2 family with F = 0 (fourth-order equation model)",
      eq4_source(RatFunc(c)) + "task growth\ntask branch\n", false,
      parabolic(Verdict::Theorem2, SymbolClass::g0, false, true));
  add("eq4_z", "non-integrable B2 family with F = z",
      eq4_source(RatFunc::variable(c, "z")) + "task branch\n", false,
      parabolic(Verdict::Theorem2, SymbolClass::g0, false, true));
  add("g1_flat", "flat model with symbol g1 on the jet-style chart (x,y,u,u_x,u_xx,v)",
      std::string(kG1Flat) + "task growth\ntask symbol\ntask branch\n", false,
      parabolic(Verdict::OpenBranch, SymbolClass::g1, true, std::nullopt));
  {
    Expected e;
    e.point_class = PointClass::Elliptic;
    add("elliptic_demo", "demonstration frame with form diag(1,1)",
        demo_source("1/2*(x1^2 + x2^2)") + "task growth\ntask classify\n", false, e);
    e.point_class = PointClass::Hyperbolic;
    add("hyperbolic_demo", "demonstration frame with form diag(1,-1)",
        demo_source("1/2*(x1^2 - x2^2)") + "task growth\ntask classify\n", false, e);
    e.point_class = PointClass::Hyperbolic;
    e.regular = false;
    add("mixed_signature_demo", "form proportional to diag(1,y); signature changes across y = 0",
        demo_source("1/2*(x1^2 + y*x2^2)") + "task growth\ntask scan\n", false, e);
  }
  add("lift_j3", "lift of (total derivative, span(total derivative, @phi3, @phi2)) on J^3",
      std::string(kJetChart) +
          "field X = @x + phi1*@phi0 + phi2*@phi1 + phi3*@phi2\n"
          "field Y = @phi3\nfield Z = @phi2\ndist B3 = span(X, Y, Z)\ntask lift\n",
      true, parabolic(Verdict::Theorem2, SymbolClass::g0, false, true));
  {
    Expected e;
    e.error = ErrorKind::LiftPreconditionFailed;
    add("lift_j3_bad", "pair with B1 = @phi3, rejected by the lift preconditions",
        std::string(kJetChart) +
            "field V = @phi3\nfield X = @x + phi1*@phi0 + phi2*@phi1 + phi3*@phi2\n"
            "field Z = @phi2\ndist B3 = span(V, X, Z)\ntask lift\n",
        true, e);
  }
  add("lift_eq5", "lift of the reduced pair of eq5 on (x,u1,u2,z,w)",
      "chart N(x, u1, u2, z, w)\nfield X = @x + u2*@u1 + z*@u2\nfield Y = @w\nfield Z = @z\n"
      "dist B3 = span(X, Y, Z)\ntask lift\n",
      true, parabolic(Verdict::Theorem3, SymbolClass::g0, true, std::nullopt));
  {
    Expected e = parabolic(Verdict::Theorem2, SymbolClass::g0, false, true);
    e.completely_nondegenerate = false;
    add("lift_interpolated", "lift of a pair whose B2 is integrable exactly along x = 0",
        "chart N(x, u1, u2, z, w)\nfield X = @x + u2*@u1 + z*@u2 + x*w*@z\nfield Y = @w\n"
        "field Z = @z\ndist B3 = span(X, Y, Z)\ntask lift\n",
        true, e);
  }
  return out;
}

}  // namespace

const std::vector<ModelSpec>& catalog_list() {
  static const std::vector<ModelSpec> list = build_catalog();
  return list;
}

const ModelSpec& find_model(std::string_view name) {
  for (const auto& m : catalog_list()) {
    if (m.name == name) return m;
  }
  throw Error(ErrorKind::UnknownModel, "unknown model '" + std::string(name) + "'");
}

std::string emit(std::string_view name) { return find_model(name).source; }

dsl::Model load_model(std::string_view name) {
  const ModelSpec& m = find_model(name);
  return dsl::load({m.source, m.name + ".dist"});
}

const Distribution& main_distribution(const dsl::Model& m) {
  if (m.dists.empty()) throw Error(ErrorKind::InvalidArgument, "model declares no distribution");
  return m.dists.back().dist;
}

namespace {

Distribution main_of(const std::string& text) {
  dsl::Model m = dsl::load({text, "<model>"});
  return main_distribution(m);
}

}  // namespace

std::string eq3_source(const RatFunc& f) {
  ChartPtr c = eq_chart();
  RatFunc ff = transplant(f, eq_params(c, false), c);
  auto forms = eq_common_forms(c);
  RatFunc y = RatFunc::variable(c, "y"), z = RatFunc::variable(c, "z");
  forms.push_back(OneForm::differential(c, "u3") + (ff * y) * OneForm::differential(c, "x") +
                  z * OneForm::differential(c, "y"));
  return forms_source(c, forms);
}

std::string eq4_source(const RatFunc& f) {
  ChartPtr c = eq_chart();
  RatFunc ff = transplant(f, eq_params(c, true), c);
  auto forms = eq_common_forms(c);
  RatFunc y = RatFunc::variable(c, "y"), z = RatFunc::variable(c, "z"), u3 = RatFunc::variable(c, "u3");
  RatFunc g = ff - y * u3 - y * y * z;
  forms.push_back(OneForm::differential(c, "u3") - g * OneForm::differential(c, "x") +
                  z * OneForm::differential(c, "y"));
  return forms_source(c, forms);
}

Distribution model_j21() { return main_of(kJ21); }
Distribution model_eq3(const RatFunc& f) { return main_of(eq3_source(f)); }
Distribution model_eq5() { return model_eq3(RatFunc(eq_chart())); }
Distribution model_eq4(const RatFunc& f) { return main_of(eq4_source(f)); }
Distribution model_eq6() { return model_eq4(RatFunc(eq_chart())); }
Distribution model_g1_flat() { return main_of(kG1Flat); }
Distribution model_elliptic_demo() { return main_of(demo_source("1/2*(x1^2 + x2^2)")); }
Distribution model_hyperbolic_demo() { return main_of(demo_source("1/2*(x1^2 - x2^2)")); }
Distribution model_mixed_signature_demo() { return main_of(demo_source("1/2*(x1^2 + y*x2^2)")); }

LiftCheck lift_preconditions(const VectorField& x, const VectorField& y, const VectorField& z) {
  require_same_chart(x.chart(), y.chart());
  require_same_chart(x.chart(), z.chart());
  const ChartPtr& chart = x.chart();
  LiftCheck r;
  Distribution b3 = Distribution::span(chart, {x, y, z});
  r.independent = b3.rank() == 3;
  if (!r.independent) return r;
  Distribution b1 = Distribution::from_frame(chart, {x});
  Distribution b4 = bracket(b1, b3);
  r.rank_b1_b3 = b4.rank();
  r.rank_b1_b1_b3 = bracket(b1, b4).rank();
  r.ok = r.rank_b1_b3 == 4 && r.rank_b1_b1_b3 == chart->dimension();
  return r;
}

Distribution lift_pair(const VectorField& x, const VectorField& y, const VectorField& z) {
  LiftCheck check = lift_preconditions(x, y, z);
  if (!check.ok) {
    std::string why = !check.independent
                          ? "X, Y, Z are dependent"
                          : "rank [B1,B3] = " + std::to_string(check.rank_b1_b3) +
                                " (need 4), rank [B1,[B1,B3]] = " + std::to_string(check.rank_b1_b1_b3) +
                                " (need " + std::to_string(x.chart()->dimension()) + ")";
    throw Error(ErrorKind::LiftPreconditionFailed, "lift preconditions fail: " + why);
  }
  const ChartPtr& base = x.chart();
  std::string s = "s";
  for (int k = 1; base->index_of(s).has_value(); ++k) s = "s" + std::to_string(k);
  ChartPtr ext = extend_chart(base, {s});
  VectorField xs = embed(x, ext), ys = embed(y, ext), zs = embed(z, ext);
  VectorField ds = VectorField::coordinate(ext, s);
  return Distribution::from_frame(ext, {ds, xs, zs + RatFunc::variable(ext, s) * ys});
}

Distribution lift_distribution(const Distribution& b3) {
  if (b3.rank() != 3) {
    throw Error(ErrorKind::LiftPreconditionFailed,
                "lift needs a rank-3 distribution, got rank " + std::to_string(b3.rank()));
  }
  return lift_pair(b3.frame()[0], b3.frame()[1], b3.frame()[2]);
}

}  // namespace flagrank::models
