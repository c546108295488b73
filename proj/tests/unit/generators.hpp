#pragma once

// Seeded random generators for property tests. mt19937_64 output is fixed by
// the standard, and we avoid std::uniform_*_distribution so the sequences
// are identical across standard libraries.

#include <random>
#include <vector>

#include "flagrank/algebra/ratfunc.hpp"
#include "flagrank/calculus/fields.hpp"

namespace flagrank::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(rng_() % span);
  }

  Polynomial polynomial(const ChartPtr& chart, int max_terms = 3, unsigned max_degree = 2) {
    std::vector<Term> terms;
    int n = static_cast<int>(integer(1, max_terms));
    for (int i = 0; i < n; ++i) {
      Exponents e(chart->dimension(), 0);
      unsigned budget = static_cast<unsigned>(integer(0, max_degree));
      for (unsigned k = 0; k < budget; ++k) {
        e[static_cast<std::size_t>(integer(0, static_cast<long>(chart->dimension()) - 1))] += 1;
      }
      long c = integer(-4, 4);
      if (c == 0) c = 1;
      terms.push_back(Term{e, c});
    }
    return Polynomial::from_terms(chart, terms);
  }

  Polynomial nonzero_polynomial(const ChartPtr& chart, int max_terms = 3, unsigned max_degree = 2) {
    while (true) {
      auto p = polynomial(chart, max_terms, max_degree);
      if (!p.is_zero()) return p;
    }
  }

  RatFunc ratfunc(const ChartPtr& chart) {
    return RatFunc(polynomial(chart), nonzero_polynomial(chart, 2, 1));
  }

  RatFunc nonzero_ratfunc(const ChartPtr& chart) {
    return RatFunc(nonzero_polynomial(chart), nonzero_polynomial(chart, 2, 1));
  }

  mpq_class rational(long range = 5, long max_den = 4) {
    mpq_class q(integer(-range, range), integer(1, max_den));
    q.canonicalize();
    return q;
  }

  PointQ point(const ChartPtr& chart) {
    std::vector<mpq_class> c;
    for (std::size_t i = 0; i < chart->dimension(); ++i) c.push_back(rational());
    return PointQ(chart, c);
  }

  VectorField polynomial_field(const ChartPtr& chart) {
    VectorRF c;
    for (std::size_t i = 0; i < chart->dimension(); ++i) {
      c.emplace_back(integer(0, 2) == 0 ? Polynomial(chart) : polynomial(chart, 2, 2));
    }
    return VectorField(chart, c);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace flagrank::testing
