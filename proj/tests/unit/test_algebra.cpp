#include <doctest.h>

#include "flagrank/algebra/matrix.hpp"
#include "flagrank/errors.hpp"
#include "generators.hpp"

using namespace flagrank;
using flagrank::testing::Gen;

namespace {

ChartPtr xyz() { return make_chart("M", {"x", "y", "z"}); }

RatFunc v(const ChartPtr& c, const char* name) { return RatFunc::variable(c, name); }
RatFunc k(const ChartPtr& c, long n, long d = 1) { return RatFunc(c, mpq_class(n, d)); }

}  // namespace

TEST_CASE("chart validation") {
  CHECK_THROWS_AS(make_chart("M", {}), Error);
  CHECK_THROWS_AS(make_chart("M", {"x", "x"}), Error);
  CHECK_THROWS_AS(make_chart("M", {"1x"}), Error);
  auto c = xyz();
  CHECK(c->dimension() == 3);
  CHECK(c->index_of("z") == 2u);
  try {
    (void)c->require_index("w");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownVariable);
  }
}

TEST_CASE("arith: basic identities") {
  auto c = xyz();
  auto x = v(c, "x"), y = v(c, "y"), z = v(c, "z");
  CHECK((x / y + (k(c, 1) - x / y)).is_one());

  auto u2 = x;  // any variable stands in for u2
  CHECK((u2 / z) * z == u2);

  RatFunc q((x * x - k(c, 1)).numerator(),(x - k(c, 1)).numerator());
  CHECK(q == x + k(c, 1));
  CHECK(q.to_string() == "x + 1");

  try {
    (void)(x / RatFunc(c));
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
}

TEST_CASE("canonical form details") {
  auto c = xyz();
  auto x = v(c, "x"), y = v(c, "y");
  // Denominator sign is normalized and integer content removed.
  RatFunc f = (k(c, 2) * x) / (k(c, -4) * y);
  CHECK(f.denominator().leading_sign() > 0);
  CHECK(f.to_string() == "-x/(2*y)");
  CHECK(RatFunc(c).denominator().is_one());
  CHECK((x * x * y - k(c, 3) * y + k(c, 1)).to_string() == "x^2*y - 3*y + 1");
  CHECK(((x + k(c, 1)) / (y * y)).to_string() == "(x + 1)/y^2");
  CHECK((k(c, 1, 2) * x).to_string() == "x/2");
}

TEST_CASE("multivariate gcd") {
  auto c = xyz();
  auto x = v(c, "x").numerator(), y = v(c, "y").numerator(), z = v(c, "z").numerator();
  Polynomial one(c, 1);
  CHECK(gcd(x * x - one, x * x - x.scaled(2) + one) == x - one);
  CHECK(gcd((x + y) * (x - y) * z, (x + y) * (x + y)) == x + y);
  CHECK(gcd(x.scaled(6) * y, y.scaled(4) * z) == y.scaled(2));
  CHECK(gcd(x * y + one, x * z + one).is_one());
  CHECK(gcd(Polynomial(c), -(x + y)) == x + y);
}

TEST_CASE("gcd divides and the cofactors are coprime (property)") {
  auto c = xyz();
  Gen gen(11);
  for (int i = 0; i < 60; ++i) {
    auto a = gen.nonzero_polynomial(c);
    auto b = gen.nonzero_polynomial(c);
    auto g = gen.nonzero_polynomial(c, 2, 1);
    auto ag = a * g, bg = b * g;
    auto d = gcd(ag, bg);
    REQUIRE(ag.try_divide(d).has_value());
    REQUIRE(bg.try_divide(d).has_value());
    CHECK(d.try_divide(g.with_positive_leading()).has_value());
    auto d2 = gcd(ag.divide_exact(d), bg.divide_exact(d));
    CHECK(d2.is_one());
  }
}

TEST_CASE("gcd with higher-degree common factors (property)") {
  auto c = xyz();
  Gen gen(31);
  for (int i = 0; i < 25; ++i) {
    auto a = gen.nonzero_polynomial(c, 4, 4);
    auto b = gen.nonzero_polynomial(c, 3, 2);
    auto g = gen.nonzero_polynomial(c, 3, 3);
    auto d = gcd(a * g, b * g * g);
    CHECK(d.try_divide(g.with_positive_leading()).has_value());
    CHECK(gcd((a * g).divide_exact(d), (b * g * g).divide_exact(d)).is_one());
    CHECK(gcd(b * g * g, a * g) == d);
  }
}

TEST_CASE("field axioms on seeded random triples") {
  auto c = xyz();
  Gen gen(2024);
  for (int i = 0; i < 40; ++i) {
    auto a = gen.ratfunc(c), b = gen.ratfunc(c), d = gen.ratfunc(c);
    CHECK((a + b) + d == a + (b + d));
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * (b + d) == a * b + a * d);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
    if (!a.is_zero()) CHECK((a / a).is_one());
  }
}

TEST_CASE("partial derivative") {
  auto c = xyz();
  auto x = v(c, "x"), y = v(c, "y"), z = v(c, "z");
  CHECK(partial_derivative(x * x * y, "x") == k(c, 2) * x * y);
  CHECK(partial_derivative(z.inverse(), "z") == -(z * z).inverse());
  // y*u3 + y^2*z with x standing in for u3
  CHECK(partial_derivative(y * x + y * y * z, "y") == x + k(c, 2) * y * z);
  try {
    (void)partial_derivative(x, "w");
    FAIL("expected UnknownVariable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownVariable);
  }
}

TEST_CASE("derivative is a derivation (property)") {
  auto c = xyz();
  Gen gen(7);
  for (int i = 0; i < 40; ++i) {
    auto f = gen.ratfunc(c), g = gen.ratfunc(c);
    for (std::size_t var = 0; var < 3; ++var) {
      CHECK((f * g).derivative(var) == f * g.derivative(var) + g * f.derivative(var));
    }
  }
}

TEST_CASE("evaluate") {
  auto c = make_chart("P", {"x", "y"});
  auto x = v(c, "x"), y = v(c, "y");
  CHECK(((x + y) / k(c, 2)).evaluate(PointQ(c, {1, 3})) == 2);
  try {
    (void)x.inverse().evaluate(PointQ::origin(c));
    FAIL("expected PoleAtPoint");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleAtPoint);
  }
  auto m = make_chart("M", {"u1", "u2", "u3", "x", "y", "z"});
  auto expr = v(m, "u3") + v(m, "y") * v(m, "z");
  CHECK(expr.evaluate(PointQ::origin(m)) == 0);
}

TEST_CASE("evaluate commutes with arithmetic away from poles (property)") {
  auto c = xyz();
  Gen gen(99);
  int checked = 0;
  for (int i = 0; i < 80; ++i) {
    auto f = gen.ratfunc(c), g = gen.ratfunc(c);
    auto p = gen.point(c);
    try {
      mpq_class fv = f.evaluate(p), gv = g.evaluate(p);
      CHECK((f + g).evaluate(p) == fv + gv);
      CHECK((f * g).evaluate(p) == fv * gv);
      CHECK((f - g).evaluate(p) == fv - gv);
      ++checked;
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::PoleAtPoint);
    }
  }
  CHECK(checked > 40);
}

TEST_CASE("canonical form is independent of construction order (property)") {
  auto c = xyz();
  Gen gen(5);
  for (int i = 0; i < 40; ++i) {
    auto a = gen.ratfunc(c), b = gen.ratfunc(c), d = gen.nonzero_ratfunc(c);
    RatFunc left = (a + b) / d;
    RatFunc right = a / d + b / d;
    CHECK(left == right);
    CHECK(left.to_string() == right.to_string());
  }
}

TEST_CASE("rank") {
  auto c = xyz();
  auto x = v(c, "x");
  MatrixRF id(c, 3, 3);
  for (std::size_t i = 0; i < 3; ++i) id(i, i) = k(c, 1);
  CHECK(rank_generic(id) == 3);
  auto prop = MatrixRF::from_rows(c, {{k(c, 1), x}, {x, x * x}});
  CHECK(rank_generic(prop) == 1);
  // Generic rank 2, drops at x = 0.
  auto drop = MatrixRF::from_rows(c, {{k(c, 1), k(c, 0)}, {k(c, 0), x}});
  CHECK(rank_generic(drop) == 2);
  CHECK(rank_at(drop, PointQ::origin(c)) == 1);
  CHECK(rank_at(drop, PointQ(c, {1, 0, 0})) == 2);
}

TEST_CASE("rank of the J21 extended frame") {
  auto c = make_chart("M", {"t", "u", "v", "u1", "u2", "v1"});
  auto one = k(c, 1), zero = k(c, 0);
  auto u1 = v(c, "u1"), u2 = v(c, "u2"), v1 = v(c, "v1");
  // columns: T, d/du2, d/dv1, d/du1, d/dv
  std::vector<VectorRF> cols = {
      {one, u1, v1, u2, zero, zero},
      {zero, zero, zero, zero, one, zero},
      {zero, zero, zero, zero, zero, one},
      {zero, zero, zero, one, zero, zero},
      {zero, zero, one, zero, zero, zero},
  };
  CHECK(rank_generic(MatrixRF::from_columns(c, 6, cols)) == 5);
}

TEST_CASE("rank_at never exceeds rank_generic (property)") {
  auto c = xyz();
  Gen gen(31);
  for (int i = 0; i < 20; ++i) {
    MatrixRF m(c, 3, 4);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t col = 0; col < 4; ++col) m(r, col) = RatFunc(gen.polynomial(c, 2, 1));
    auto p = gen.point(c);
    CHECK(rank_at(m, p) <= rank_generic(m));
  }
}

TEST_CASE("kernel basis") {
  auto c = make_chart("M", {"t", "u1"});
  auto u1 = v(c, "u1");
  MatrixRF zero(c, 2, 2);
  CHECK(kernel_basis(zero).size() == 2);
  auto row = MatrixRF::from_rows(c, {{k(c, 1), -u1}});
  auto ker = kernel_basis(row);
  REQUIRE(ker.size() == 1);
  CHECK(ker[0][0] == u1);
  CHECK(ker[0][1].is_one());
}

TEST_CASE("kernel vectors annihilate (property)") {
  auto c = xyz();
  Gen gen(123);
  for (int i = 0; i < 20; ++i) {
    MatrixRF m(c, 2, 4);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t col = 0; col < 4; ++col) m(r, col) = gen.ratfunc(c);
    auto ker = kernel_basis(m);
    CHECK(ker.size() == 4 - rank_generic(m));
    for (const auto& vec : ker) {
      for (std::size_t r = 0; r < 2; ++r) {
        RatFunc s(c);
        for (std::size_t col = 0; col < 4; ++col) s += m(r, col) * vec[col];
        CHECK(s.is_zero());
      }
    }
  }
}

TEST_CASE("solve in span") {
  auto c = xyz();
  auto x = v(c, "x");
  auto frame = MatrixRF::from_columns(c, 3, {{k(c, 1), x, k(c, 0)}, {k(c, 0), k(c, 0), k(c, 1)}});
  auto sol = solve_in_span({k(c, 2), k(c, 2) * x, k(c, 0)}, frame);
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == k(c, 2));
  CHECK((*sol)[1].is_zero());
  CHECK_FALSE(solve_in_span({k(c, 0), k(c, 1), k(c, 0)}, frame).has_value());
}

TEST_CASE("substitution") {
  auto p = make_chart("F", {"a", "b"});
  auto m = xyz();
  auto f = v(p, "a") * v(p, "a") + v(p, "b") / k(p, 2);
  auto r = substitute(f, {v(m, "x") + v(m, "y"), v(m, "z")});
  CHECK(r == (v(m, "x") + v(m, "y")) * (v(m, "x") + v(m, "y")) + v(m, "z") / k(m, 2));
}
