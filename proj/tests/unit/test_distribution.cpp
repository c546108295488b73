#include <doctest.h>

#include "flagrank/distribution/analysis.hpp"
#include "flagrank/errors.hpp"
#include "flagrank/models/catalog.hpp"
#include "fixtures.hpp"

using namespace flagrank;
using flagrank::testing::field;
using flagrank::testing::Gen;
using flagrank::testing::model;
using flagrank::testing::span_of;

namespace {

const char* const kXY = "chart M(x, y)";
const char* const kXYZ = "chart M(x, y, z)";
const char* const kJ21 = "chart M(t, u, v, u1, u2, v1)";
const char* const kEq = "chart M(u1, u2, u3, x, y, z)";
const char* const kG1 = "chart M(x, y, u, u_x, u_xx, v)";

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("lie bracket examples") {
  CHECK(lie_bracket(field(kXY, "@x"), field(kXY, "x*@y")) == field(kXY, "@y"));
  CHECK(lie_bracket(field(kXY, "x*@y"), field(kXY, "@x")) == field(kXY, "-@y"));
  CHECK(lie_bracket(field(kJ21, "@u2"), field(kJ21, "@t + u1*@u + u2*@u1 + v1*@v")) ==
        field(kJ21, "@u1"));
  CHECK(lie_bracket(field(kXY, "y*@x"), field(kXY, "y*@x")).is_zero());
  CHECK(lie_bracket(field(kXY, "1/x*@y"), field(kXY, "@x")) == field(kXY, "1/x^2*@y"));
}

TEST_CASE("lie bracket: antisymmetry, Jacobi, Leibniz (property)") {
  auto c = make_chart("M", {"x", "y", "z"});
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    Gen g(seed);
    VectorField a = g.polynomial_field(c), b = g.polynomial_field(c), d = g.polynomial_field(c);
    RatFunc f = g.ratfunc(c);
    CAPTURE(seed);
    CHECK(lie_bracket(a, b) == -lie_bracket(b, a));
    VectorField jac = lie_bracket(a, lie_bracket(b, d)) + lie_bracket(b, lie_bracket(d, a)) +
                      lie_bracket(d, lie_bracket(a, b));
    CHECK(jac.is_zero());
    CHECK(lie_bracket(a, f * b) == a.apply(f) * b + f * lie_bracket(a, b));
  }
}

TEST_CASE("pairing and one-forms") {
  auto m = model(std::string(kJ21) + "\nform w = d(u) - u1*d(t)\nfield T = @t + u1*@u\n");
  CHECK(pairing(*m.form("w"), *m.field("T")).is_zero());
  CHECK(pairing(*m.form("w"), field(kJ21, "@t")) == -RatFunc::variable(m.chart, "u1"));
  CHECK(m.form("w")->to_string() == "-u1*d(t) + d(u)");
}

TEST_CASE("annihilator frame of the mixed jet space") {
  Distribution d = models::model_j21();
  CHECK(d.rank() == 3u);
  CHECK(d.contains(field(kJ21, "@t + u1*@u + v1*@v + u2*@u1")));
  CHECK(d.contains(field(kJ21, "@u2")));
  CHECK(d.contains(field(kJ21, "@v1")));
  CHECK_FALSE(d.contains(field(kJ21, "@u1")));
  for (const auto& w : d.annihilator()) {
    for (const auto& f : d.frame()) CHECK(pairing(w, f).is_zero());
  }
}

TEST_CASE("annihilator frame of eq5") {
  Distribution d = models::model_eq5();
  CHECK(d.rank() == 3u);
  CHECK(d.contains(field(kEq, "@x + u2*@u1 + z*@u2")));
  CHECK(d.contains(field(kEq, "@y - z*@u3")));
  CHECK(d.contains(field(kEq, "@z")));
}

TEST_CASE("growth vectors") {
  CHECK(derived_flag(models::model_j21()).growth.to_string() == "(3,5,6)");
  CHECK(derived_flag(models::model_eq5()).growth.is({3, 5, 6}));
  CHECK(derived_flag(models::model_eq6()).growth.is({3, 5, 6}));
  CHECK(derived_flag(models::model_g1_flat()).growth.is({3, 5, 6}));
  auto contact = model("chart M(x, y, z)\nform w = d(z) - y*d(x)\ndist D = ann(w)\n");
  CHECK(derived_flag(contact.dist("D")->dist).growth.is({2, 3}));
  CHECK(derived_flag(span_of(kXYZ, {"@x", "@y"})).growth.is({2}));
  auto engel = model("chart M(x, y, z, w)\nform a = d(z) - y*d(x)\nform b = d(w) - z*d(x)\n"
                     "dist D = ann(a, b)\n");
  CHECK(derived_flag(engel.dist("D")->dist).growth.is({2, 3, 4}));
}

TEST_CASE("pointwise growth never exceeds the generic growth (property)") {
  Distribution d = models::model_eq6();
  DerivedFlag f = derived_flag(d);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Gen g(seed);
    GrowthVector at = f.growth_at(g.point(d.chart()));
    REQUIRE(at.ranks.size() == f.growth.ranks.size());
    for (std::size_t i = 0; i < at.ranks.size(); ++i) CHECK(at.ranks[i] <= f.growth.ranks[i]);
  }
  // Martinet: [@x, @y + x^2/2 @z] = x @z vanishes along x = 0.
  Distribution martinet = span_of(kXYZ, {"@x", "@y + 1/2*x^2*@z"});
  DerivedFlag g = derived_flag(martinet);
  CHECK(g.growth.is({2, 3}));
  CHECK(g.growth_at(PointQ::origin(martinet.chart())).is({2, 2}));
}

TEST_CASE("frobenius integrability") {
  CHECK(frobenius_integrable(span_of(kXYZ, {"@x", "@y"})));
  CHECK_FALSE(frobenius_integrable(span_of(kXYZ, {"@x + y*@z", "@y"})));
  CHECK(frobenius_integrable(span_of(kXYZ, {"@x + y*@z", "@y + x*@z"})));
  CHECK_FALSE(frobenius_integrable(models::model_j21()));
}

TEST_CASE("cauchy characteristics") {
  auto m = model("chart M(x, y, z, w)\nform a = d(z) - y*d(x)\ndist D = ann(a)\n");
  Distribution ch = cauchy_characteristic(m.dist("D")->dist);
  CHECK(ch.rank() == 1u);
  CHECK(ch.contains(field("chart M(x, y, z, w)", "@w")));
  // Integrable distributions are their own characteristic.
  Distribution flat = span_of(kXYZ, {"@x", "@y"});
  CHECK(cauchy_characteristic(flat).same_span(flat));
  auto contact = model("chart M(x, y, z)\nform a = d(z) - y*d(x)\ndist D = ann(a)\n");
  CHECK(cauchy_characteristic(contact.dist("D")->dist).rank() == 0u);
  CHECK(cauchy_characteristic(models::model_j21()).rank() == 0u);
}

TEST_CASE("square root D2 examples") {
  Distribution j21 = square_root_d2(models::model_j21());
  CHECK(j21.same_span(Distribution::span(j21.chart(), {field(kJ21, "@u2"), field(kJ21, "@v1")})));

  Distribution eq6 = square_root_d2(models::model_eq6());
  CHECK(eq6.same_span(Distribution::span(
      eq6.chart(), {field(kEq, "@y - z*@u3"),
                    field(kEq, "@x + u2*@u1 + z*@u2 - (y*u3 + y^2*z)*@u3 + (u3 + y*z)*@z")})));

  Distribution g1 = square_root_d2(models::model_g1_flat());
  CHECK(g1.same_span(Distribution::span(
      g1.chart(), {field(kG1, "@x + u_x*@u + u_xx*@u_x"), field(kG1, "@y + 1/2*u_xx^2*@u + u_xx*@v")})));

  // Defining property: [D2, D2] stays inside D.
  for (const Distribution& d :
       {models::model_j21(), models::model_eq5(), models::model_eq6(), models::model_g1_flat()}) {
    Distribution r = square_root_d2(d);
    CHECK(d.contains(bracket(r, r)));
    CHECK(d.contains(r));
  }
}

TEST_CASE("square root bivector is the kernel of the bracket map") {
  Distribution d = models::model_eq6();
  VectorRF b = square_root_bivector(d);
  REQUIRE(b.size() == 3u);
  const auto& f = d.frame();
  VectorField combo = b[0] * lie_bracket(f[0], f[1]) + b[1] * lie_bracket(f[0], f[2]) +
                      b[2] * lie_bracket(f[1], f[2]);
  CHECK(d.contains(combo));
  CHECK_FALSE((b[0].is_zero() && b[1].is_zero() && b[2].is_zero()));
}

TEST_CASE("square root requires a (3,5) distribution") {
  Distribution flat = span_of("chart M(x, y, z, a, b, c)", {"@x", "@y", "@z"});
  CHECK(kind_of([&] { (void)square_root_d2(flat); }) == ErrorKind::NotRank35);
}

TEST_CASE("growth and square root are invariant under frame changes (property)") {
  std::vector<Distribution> inputs = {models::model_j21(), models::model_eq5(),
                                      models::model_eq6(), models::model_g1_flat()};
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Gen g(seed);
    for (const Distribution& d : inputs) {
      Distribution e = Distribution::from_frame(d.chart(), testing::scramble(g, d.frame()));
      CAPTURE(seed);
      CHECK(e.same_span(d));
      CHECK(derived_flag(e).growth == derived_flag(d).growth);
      CHECK(square_root_d2(e).same_span(square_root_d2(d)));
    }
  }
}

TEST_CASE("span, sum and bracket of distributions") {
  auto c = make_chart("M", {"x", "y", "z"});
  Distribution a = Distribution::span(c, {field("chart M(x, y, z)", "@x"),
                                          field("chart M(x, y, z)", "2*@x"),
                                          field("chart M(x, y, z)", "@y + x*@z")});
  CHECK(a.rank() == 2u);
  CHECK(kind_of([&] {
          (void)Distribution::from_frame(c, {field("chart M(x, y, z)", "@x"),
                                             field("chart M(x, y, z)", "x*@x")});
        }) == ErrorKind::DegenerateFrame);
  CHECK(bracket(a, a).same_span(Distribution::tangent(c)));
  auto b = Distribution::span(c, {field("chart M(x, y, z)", "@z")});
  CHECK((a + b).rank() == 3u);
  CHECK(a.coordinates(field("chart M(x, y, z)", "3*@x + @y + x*@z")).has_value());
  CHECK_FALSE(a.coordinates(field("chart M(x, y, z)", "@z")).has_value());
}
