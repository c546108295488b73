#include <doctest.h>

#include "flagrank/dsl/dsl.hpp"
#include "flagrank/errors.hpp"

using namespace flagrank;
using namespace flagrank::dsl;

namespace {

Model load_text(const std::string& text) { return load({text, "test.dist"}); }

ParseError parse_failure(const std::string& text) {
  try {
    (void)load_text(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for: " << text);
  throw std::logic_error("unreachable");
}

const char* const kJ21 = R"(
# mixed jet space J^{2,1}
chart M(t,u,v,u1,u2,v1)
form w1 = d(u) - u1*d(t)
form w2 = d(u1) - u2*d(t)
form w3 = d(v) - v1*d(t)
dist D = ann(w1, w2, w3)
)";

}  // namespace

TEST_CASE("form coefficients follow the chart order") {
  auto m = load_text("chart M(t,u,v,u1,u2,v1)  form w1 = d(u) - u1*d(t)");
  REQUIRE(m.forms.size() == 1);
  const OneForm& w = m.forms[0].value;
  auto u1 = RatFunc::variable(m.chart, "u1");
  CHECK(w[0] == -u1);
  CHECK(w[1].is_one());
  for (std::size_t i = 2; i < 6; ++i) CHECK(w[i].is_zero());
}

TEST_CASE("coordinate fields") {
  auto m = load_text("chart M(x,u1,u2)\nfield X = @x + u2*@u1");
  const VectorField& x = m.fields[0].value;
  CHECK(x[0].is_one());
  CHECK(x[1] == RatFunc::variable(m.chart, "u2"));
  CHECK(x[2].is_zero());
  CHECK(x.to_string() == "@x + u2*@u1");
}

TEST_CASE("annihilator distribution has rank 3 and is killed by its forms") {
  auto m = load_text(kJ21);
  const auto* d = m.dist("D");
  REQUIRE(d != nullptr);
  CHECK(d->dist.rank() == 3);
  for (const auto& f : d->dist.frame()) {
    for (const auto& w : m.forms) CHECK(pairing(w.value, f).is_zero());
  }
  MatrixRF frame = d->dist.frame_matrix();
  CHECK(rank_generic(frame) == 3);
}

TEST_CASE("degenerate span is rejected") {
  auto e = parse_failure("chart M(x,y)\nfield A = @x\nfield B = @x\ndist D = span(A, B)");
  CHECK(e.kind() == ErrorKind::DegenerateFrame);
  CHECK(e.line() == 4);
}

TEST_CASE("dependent forms are rejected") {
  auto e = parse_failure("chart M(x,y)\nform a = d(x)\nform b = 2*d(x)\ndist D = ann(a, b)");
  CHECK(e.kind() == ErrorKind::DependentForms);
}

TEST_CASE("empty task list is valid") {
  auto m = load_text("chart M(x)\nfield X = @x\ndist D = span(X)");
  CHECK(m.tasks.empty());
  CHECK(m.dists.size() == 1);
}

TEST_CASE("expression syntax") {
  auto c = make_chart("M", {"x", "y", "z"});
  auto x = RatFunc::variable(c, "x"), y = RatFunc::variable(c, "y"), z = RatFunc::variable(c, "z");
  CHECK(parse_scalar(c, "-x^2") == -(x * x));
  CHECK(parse_scalar(c, "x^-1") == x.inverse());
  CHECK(parse_scalar(c, "1/2*x + y/(3*z)") == RatFunc(c, mpq_class(1, 2)) * x + y / (RatFunc(c, 3) * z));
  CHECK(parse_scalar(c, "(x + 1)*(x - 1)") == x * x - RatFunc(c, 1));
  CHECK(parse_scalar(c, "2*-y") == RatFunc(c, -2) * y);
  CHECK(parse_point(c, "(0, 1/2, -3)").coords == std::vector<mpq_class>{0, mpq_class(1, 2), -3});
}

TEST_CASE("lie bracket expressions") {
  auto m = load_text("chart M(x,y)\nfield A = @x\nfield B = x*@y\nfield C = [A, B]");
  CHECK(m.field("C")->to_string() == "@y");
}

TEST_CASE("errors carry positions") {
  struct Case {
    const char* text;
    ErrorKind kind;
    std::size_t line, column;
  };
  const Case cases[] = {
      {"chart M(x,y)\nfield X = @x +", ErrorKind::SyntaxError, 2, 15},
      {"chart M(x,y)\nfield X = @q", ErrorKind::UnknownIdentifier, 2, 11},
      {"chart M(x,y)\nfield X = w*@x", ErrorKind::UnknownIdentifier, 2, 11},
      {"chart M(x,y)\npoint p = (1, 2, 3)", ErrorKind::ArityError, 2, 11},
      {"chart M(x,y)\nfield X = @x + d(y)", ErrorKind::TypeError, 2, 14},
      {"chart M(x,y)\nfield X = @x*@y", ErrorKind::TypeError, 2, 13},
      {"chart M(x,y)\nform w = d(x)/d(y)", ErrorKind::TypeError, 2, 14},
      {"chart M(x,y)\nfield X = x", ErrorKind::TypeError, 2, 11},
      {"chart M(x,y)\nfield X = @x\ndist D = ann(X)", ErrorKind::TypeError, 3, 14},
      {"chart M(x,y)\ntask frobnicate", ErrorKind::UnknownIdentifier, 2, 6},
      {"chart M(x,y)\nchart N(z)", ErrorKind::InconsistentChart, 2, 1},
      {"chart M(x,x)", ErrorKind::SyntaxError, 1, 11},
      {"chart M(x,y)\nfield X = 1/0*@x", ErrorKind::DivisionByZero, 2, 13},
      {"chart M(x,y)\nfield X = @x $", ErrorKind::SyntaxError, 2, 14},
      {"chart M(x,y)\npoint p = (x, 0)", ErrorKind::TypeError, 2, 12},
      {"chart M(x,y)\nform w = d(x, y)", ErrorKind::ArityError, 2, 13},
      {"field X = @x", ErrorKind::UnknownIdentifier, 1, 11},
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    auto e = parse_failure(c.text);
    CHECK(e.kind() == c.kind);
    CHECK(e.line() == c.line);
    CHECK(e.column() == c.column);
    CHECK(std::string(e.what()).rfind("test.dist:", 0) == 0);
  }
}

TEST_CASE("every parse error position lies inside the source (property)") {
  const std::string base = "chart M(x,y,z)\nfield X = @x + y^2*@z/(x+1)\nform w = d(z) - y*d(x)\n";
  // Truncations and single-character corruptions of a valid source.
  for (std::size_t cut = 0; cut <= base.size(); ++cut) {
    for (char junk : {'\0', '*', ')', '@', '='}) {
      std::string text = base.substr(0, cut);
      if (junk) text += junk;
      try {
        (void)load_text(text);
      } catch (const ParseError& e) {
        std::size_t lines = 1;
        for (char ch : text) lines += ch == '\n';
        CHECK(e.line() >= 1);
        CHECK(e.line() <= lines);
        CHECK(e.column() >= 1);
      } catch (const Error& e) {
        FAIL("non-positional error: " << e.what());
      }
    }
  }
}

TEST_CASE("print round trip") {
  const std::string src = std::string(kJ21) +
                          "field T = @t + u1*@u + v1*@v + u2*@u1\n"
                          "field H = (t + 1)/(u^2*v)*@u2 - 1/2*@v1\n"
                          "field Z = 0*@t\n"
                          "dist E = span(T, H)\n"
                          "point p = (0, 1/2, -3, 0, 0, 7)\n"
                          "task scan(samples=5, seed=-2)\n"
                          "task branch\n";
  auto m = load_text(src);
  std::string printed = print(m);
  auto again = load_text(printed);
  CHECK(structurally_equal(m, again));
  CHECK(print(again) == printed);
}
