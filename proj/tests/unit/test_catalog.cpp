#include <doctest.h>

#include "flagrank/errors.hpp"
#include "flagrank/models/catalog.hpp"
#include "flagrank/report/report.hpp"
#include "fixtures.hpp"

using namespace flagrank;
using flagrank::testing::Gen;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Internal;
}

std::string joined(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += s + "\n";
  return out;
}

std::vector<std::string> check_model(const models::ModelSpec& spec, const dsl::Model& m) {
  auto out = report::analyze(m, report::expectation_tasks(spec), {}, spec.name);
  return report::compare_expected(spec.expected, out.json);
}

// Random polynomial in the admissible parameter variables.
RatFunc random_parameter(Gen& g, const std::vector<std::string>& vars) {
  auto c = make_chart("P", vars);
  return RatFunc(g.nonzero_polynomial(c, 3, 2));
}

}  // namespace

TEST_CASE("every catalog model reproduces its expected report") {
  for (const auto& spec : models::catalog_list()) {
    CAPTURE(spec.name);
    auto diffs = check_model(spec, models::load_model(spec.name));
    CHECK_MESSAGE(diffs.empty(), joined(diffs));
  }
}

TEST_CASE("catalog lookup") {
  CHECK(models::catalog_list().size() >= 12u);
  CHECK(models::find_model("eq5").name == "eq5");
  CHECK(kind_of([] { (void)models::find_model("nosuch"); }) == ErrorKind::UnknownModel);
  CHECK(kind_of([] { (void)models::emit("nosuch"); }) == ErrorKind::UnknownModel);
}

TEST_CASE("emitted sources load back to the same model") {
  for (const auto& spec : models::catalog_list()) {
    CAPTURE(spec.name);
    dsl::Model a = models::load_model(spec.name);
    dsl::Model b = dsl::load({models::emit(spec.name), spec.name + ".dist"});
    CHECK(dsl::structurally_equal(a, b));
    dsl::Model c = dsl::load({dsl::print(a), "printed.dist"});
    CHECK(dsl::structurally_equal(a, c));
    CHECK(check_model(spec, c).empty());
  }
}

TEST_CASE("eq3 family: Theorem3 for arbitrary F") {
  std::vector<RatFunc> fs;
  auto c = make_chart("P", {"x", "u1", "u2", "z"});
  fs.push_back(RatFunc::variable(c, "x") * RatFunc::variable(c, "z") + RatFunc::variable(c, "u1"));
  fs.push_back(RatFunc::variable(c, "u1"));
  Gen g(41);
  for (int i = 0; i < 3; ++i) fs.push_back(random_parameter(g, {"x", "u1", "u2", "z"}));
  for (const RatFunc& f : fs) {
    CAPTURE(f.to_string());
    BranchReport r = branch_classify(models::model_eq3(f));
    CHECK(r.point_class == PointClass::ParabolicNonDeg);
    CHECK(r.verdict == Verdict::Theorem3);
    CHECK(r.symbol == SymbolClass::g0);
    CHECK(r.b2_integrable == true);
    CHECK(all_hold(r.relations));
  }
}

TEST_CASE("eq4 family: Theorem2 of equation type for arbitrary F") {
  std::vector<RatFunc> fs;
  auto c = make_chart("P", {"x", "u1", "u2", "z", "w"});
  fs.push_back(RatFunc::variable(c, "w"));
  fs.push_back(RatFunc::variable(c, "x") * RatFunc::variable(c, "w") + RatFunc::variable(c, "u2"));
  Gen g(43);
  for (int i = 0; i < 3; ++i) fs.push_back(random_parameter(g, {"x", "u1", "u2", "z", "w"}));
  for (const RatFunc& f : fs) {
    CAPTURE(f.to_string());
    BranchReport r = branch_classify(models::model_eq4(f));
    CHECK(r.point_class == PointClass::ParabolicNonDeg);
    CHECK(r.verdict == Verdict::Theorem2);
    CHECK(r.symbol == SymbolClass::g0);
    CHECK(r.b2_integrable == false);
    CHECK(r.equation_type == true);
  }
}

TEST_CASE("eq3 and eq4 reject parameters outside their support") {
  auto c = make_chart("P", {"x", "y", "u3"});
  CHECK(kind_of([&] { (void)models::model_eq3(RatFunc::variable(c, "y")); }) ==
        ErrorKind::BadParameterSupport);
  CHECK(kind_of([&] { (void)models::model_eq4(RatFunc::variable(c, "u3")); }) ==
        ErrorKind::BadParameterSupport);
  // Unused variables of the parameter's own chart are fine.
  CHECK(classify_generic(models::model_eq3(RatFunc::variable(c, "x"))) == PointClass::ParabolicNonDeg);
}

TEST_CASE("eq sources print the parameter in the forms") {
  auto c = make_chart("P", {"x", "u1"});
  dsl::Model m = dsl::load({models::eq3_source(RatFunc::variable(c, "u1")), "eq3.dist"});
  CHECK(models::main_distribution(m).same_span(models::model_eq3(RatFunc::variable(c, "u1"))));
}

TEST_CASE("lift preconditions") {
  auto c = make_chart("N", {"x", "phi0", "phi1", "phi2", "phi3"});
  Distribution good = models::main_distribution(models::load_model("lift_j3"));
  Distribution bad = models::main_distribution(models::load_model("lift_j3_bad"));
  const auto& g = good.frame();
  models::LiftCheck ok = models::lift_preconditions(g[0], g[1], g[2]);
  CHECK(ok.ok);
  CHECK(ok.rank_b1_b3 == 4u);
  CHECK(ok.rank_b1_b1_b3 == 5u);
  const auto& b = bad.frame();
  models::LiftCheck no = models::lift_preconditions(b[0], b[1], b[2]);
  CHECK_FALSE(no.ok);
  CHECK(no.rank_b1_b3 == 3u);
  CHECK(kind_of([&] { (void)models::lift_pair(b[0], b[1], b[2]); }) ==
        ErrorKind::LiftPreconditionFailed);
  Distribution lifted = models::lift_distribution(good);
  CHECK(lifted.chart()->dimension() == 6u);
  CHECK(lifted.chart()->variable(5) == "s");
  CHECK(derived_flag(lifted).growth.is({3, 5, 6}));
}

TEST_CASE("lift of perturbed pairs stays parabolic non-degenerate (property)") {
  Distribution base = models::main_distribution(models::load_model("lift_j3"));
  const ChartPtr& c = base.chart();
  const auto& f = base.frame();
  Gen g(5);
  int lifted = 0;
  for (int i = 0; i < 6; ++i) {
    RatFunc a(g.polynomial(c, 2, 1)), b(c, g.rational()), k(g.polynomial(c, 2, 1));
    VectorField x = f[0];
    VectorField y = f[1] + a * x;
    VectorField z = f[2] + b * y + k * x;
    CAPTURE(i);
    if (!models::lift_preconditions(x, y, z).ok) continue;
    Distribution d = models::lift_pair(x, y, z);
    CHECK(derived_flag(d).growth.is({3, 5, 6}));
    CHECK(classify_generic(d) == PointClass::ParabolicNonDeg);
    ++lifted;
  }
  CHECK(lifted >= 3);
}

TEST_CASE("lifting the reduced pair of eq5 gives its verdict back") {
  BranchReport direct = branch_classify(models::model_eq5());
  Distribution pair = models::main_distribution(models::load_model("lift_eq5"));
  BranchReport viaLift = branch_classify(models::lift_distribution(pair));
  CHECK(viaLift.verdict == direct.verdict);
  CHECK(viaLift.symbol == direct.symbol);
  CHECK(viaLift.b2_integrable == direct.b2_integrable);
}

TEST_CASE("verdicts are invariant under constant frame changes (property)") {
  for (const auto& spec : models::catalog_list()) {
    if (spec.expected.error || !spec.expected.verdict) continue;
    Distribution d = models::main_distribution(models::load_model(spec.name));
    if (spec.lift) d = models::lift_distribution(d);
    BranchReport base = branch_classify(d);
    Gen g(17);
    for (int i = 0; i < 2; ++i) {
      std::vector<VectorField> mixed;
      const auto& f = d.frame();
      std::vector<VectorQ> rows;
      do {
        rows.assign(3, VectorQ(3));
        for (auto& r : rows) {
          for (auto& q : r) q = g.rational(3, 2);
        }
      } while (rank_rational(rows) != 3);
      for (const auto& r : rows) {
        mixed.push_back(RatFunc(d.chart(), r[0]) * f[0] + RatFunc(d.chart(), r[1]) * f[1] +
                        RatFunc(d.chart(), r[2]) * f[2]);
      }
      CAPTURE(spec.name);
      BranchReport other = branch_classify(Distribution::from_frame(d.chart(), mixed));
      CHECK(other.verdict == base.verdict);
      CHECK(other.symbol == base.symbol);
      CHECK(other.point_class == base.point_class);
    }
  }
}

TEST_CASE("report: task arguments, defaults and errors") {
  dsl::Model m = dsl::load({models::emit("eq5") + "point p = (0, 0, 1, 0, 0, 1/2)\n"
                                                  "task scan(samples=5, seed=3)\ntask symbol(point=p)\n",
                            "t.dist"});
  auto out = report::analyze(m, {}, {}, "t");
  REQUIRE_FALSE(out.json.contains("error"));
  CHECK(out.json["results"]["scan"]["points"].size() == 5u);
  CHECK(out.json["results"]["scan"]["seed"] == 3);
  CHECK(out.json["results"]["symbol"]["point"] == "(0, 0, 1, 0, 0, 1/2)");
  CHECK(out.json["results"]["symbol"]["point_source"] == "requested");

  report::Options o;
  o.samples = 2;
  auto over = report::analyze(m, {"scan"}, o, "t");
  CHECK(over.json["results"]["scan"]["points"].size() == 2u);

  auto own = report::analyze(models::load_model("eq5"), {}, {}, "eq5");
  CHECK(own.json["tasks"] == nlohmann::ordered_json({"growth", "branch"}));
  auto dflt = report::analyze(testing::model(models::eq3_source(RatFunc(m.chart, 1))), {}, {}, "x");
  CHECK(dflt.json["tasks"] == nlohmann::ordered_json({"growth", "classify"}));
  CHECK(dflt.exit_code == report::kOk);

  auto neg = report::analyze(models::load_model("elliptic_demo"), {"growth", "branch"}, {}, "e");
  CHECK(neg.exit_code == report::kPrecondition);
  CHECK(neg.json["error"]["kind"] == "NotParabolic");
  CHECK(neg.json["error"]["task"] == "branch");
  CHECK(neg.json["results"].contains("growth"));

  auto bad = report::analyze(models::load_model("eq5"), {"nosuch"}, {}, "eq5");
  CHECK(bad.exit_code == report::kUsage);

  dsl::Model flat = dsl::load({"chart M(a, b, c, x, y, z)\nfield A = @a\nfield B = @b\nfield C = @c\n"
                               "dist D = span(A, B, C)\n",
                               "flat.dist"});
  auto nf = report::analyze(flat, {}, {}, "flat");
  CHECK(nf.exit_code == report::kPrecondition);
  CHECK(nf.json["error"]["kind"] == "NotGrowth356");
  CHECK(nf.json["results"]["growth"]["growth_string"] == "(3)");
}

TEST_CASE("report: explicit evaluation point") {
  report::Options o;
  o.point = "(1, 2, 0, 1/2, -1, 3)";
  auto out = report::analyze(models::load_model("g1_flat"), {"symbol", "classify"}, o, "g1_flat");
  REQUIRE(out.exit_code == report::kOk);
  CHECK(out.json["results"]["symbol"]["point_source"] == "requested");
  CHECK(out.json["results"]["symbol"]["symbol"] == "g1");
  CHECK(out.json["results"]["classify"]["at_point"]["point_class"] == "ParabolicNonDeg");
  o.point = "(1, 2)";
  auto bad = report::analyze(models::load_model("g1_flat"), {"symbol"}, o, "g1_flat");
  CHECK(bad.exit_code != report::kOk);
}

TEST_CASE("report: growth at a singular point") {
  dsl::Model m = testing::model("chart M(x, y, z)\nfield A = @x\nfield B = @y + 1/2*x^2*@z\n"
                                "dist D = span(A, B)\npoint o = (0, 0, 0)\npoint p = (1, 0, 0)\n"
                                "task growth(point=o)\n");
  auto out = report::analyze(m, {}, {}, "martinet");
  CHECK(out.json["results"]["growth"]["at_point"]["growth"] == nlohmann::ordered_json({2, 2}));
  CHECK(out.json["results"]["growth"]["at_point"]["singular"] == true);
  report::Options o;
  o.point = "(1, 0, 0)";
  auto reg = report::analyze(m, {}, o, "martinet");
  CHECK(reg.json["results"]["growth"]["at_point"]["singular"] == false);
}

TEST_CASE("report: output is deterministic") {
  report::Options o;
  o.seed = 9;
  auto a = report::analyze(models::load_model("mixed_signature_demo"), {"scan"}, o, "m");
  auto b = report::analyze(models::load_model("mixed_signature_demo"), {"scan"}, o, "m");
  CHECK(report::render_json(a.json) == report::render_json(b.json));
  CHECK(report::render_text(a.json) == report::render_text(b.json));
  CHECK(a.json["results"]["scan"]["regular"] == false);
}
