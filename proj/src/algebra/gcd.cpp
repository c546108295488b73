// Multivariate gcd over the integers by recursion on the variables:
// content/primitive-part splitting in a main variable, a modular
// coprimality test, then a subresultant pseudo-remainder sequence.

#include <algorithm>
#include <cstdint>
#include <random>

#include "flagrank/algebra/polynomial.hpp"
#include "flagrank/errors.hpp"

namespace flagrank {

namespace {

Polynomial constant(const Polynomial& like, const mpz_class& c) {
  return Polynomial(like.chart(), c);
}

Polynomial monomial_gcd(const Polynomial& mono, const Polynomial& p) {
  const Term& m = mono.leading();
  mpz_class c = p.content();
  mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), m.coeff.get_mpz_t());
  Exponents e = m.exps;
  for (const auto& t : p.terms()) {
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = std::min(e[k], t.exps[k]);
  }
  return Polynomial::monomial(mono.chart(), std::move(e), c);
}

std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var) {
  std::vector<Polynomial> out;
  unsigned d = p.degree_in(var);
  for (unsigned k = 0; k <= d; ++k) {
    Polynomial c = p.coefficient_in(var, k);
    if (!c.is_zero()) out.push_back(std::move(c));
  }
  return out;
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b);

Polynomial content_in(const Polynomial& p, std::size_t var) {
  auto coeffs = coefficients_in(p, var);
  Polynomial g(p.chart());
  for (const auto& c : coeffs) {
    g = gcd_impl(g, c);
    if (g.is_one()) break;
  }
  return g;
}

// lc(b)^(deg a - deg b + 1) * a = q * b + r with deg_var(r) < deg_var(b).
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
  const unsigned db = b.degree_in(var);
  const unsigned e = a.degree_in(var) - db + 1;
  const Polynomial lcb = b.leading_coeff_in(var);
  Polynomial r = a;
  unsigned steps = 0;
  while (!r.is_zero()) {
    unsigned dr = r.degree_in(var);
    if (dr < db) break;
    Polynomial lcr = r.leading_coeff_in(var);
    r = lcb * r - (lcr * b).times_variable_power(var, dr - db);
    ++steps;
  }
  if (steps < e && !r.is_zero()) r = r * lcb.pow(e - steps);
  return r;
}

Polynomial primitive_in(const Polynomial& p, std::size_t var) {
  Polynomial c = content_in(p, var);
  if (c.is_one()) return p;
  return p.divide_exact(c);
}

// Images modulo a prime with all variables but `var` fixed.
constexpr std::uint64_t kPrime = 2147483647;  // 2^31 - 1

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  b %= kPrime;
  while (e) {
    if (e & 1) r = r * b % kPrime;
    b = b * b % kPrime;
    e >>= 1;
  }
  return r;
}

using Image = std::vector<std::uint64_t>;  // low to high degree

void trim(Image& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Image image(const Polynomial& f, std::size_t var, const std::vector<std::uint64_t>& at) {
  Image out(f.degree_in(var) + 1, 0);
  for (const auto& t : f.terms()) {
    std::uint64_t c = mpz_fdiv_ui(t.coeff.get_mpz_t(), kPrime);
    for (std::size_t k = 0; k < at.size() && c; ++k) {
      if (k != var && t.exps[k]) c = c * pow_mod(at[k], t.exps[k]) % kPrime;
    }
    auto& slot = out[t.exps[var]];
    slot = (slot + c) % kPrime;
  }
  return out;
}

std::size_t image_gcd_degree(Image a, Image b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    if (a.size() < b.size()) {
      std::swap(a, b);
      continue;
    }
    std::uint64_t inv = pow_mod(b.back(), kPrime - 2);
    while (a.size() >= b.size()) {
      std::uint64_t f = a.back() * inv % kPrime;
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        a[i + shift] = (a[i + shift] + kPrime - f * b[i] % kPrime) % kPrime;
      }
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// True only when p and q (primitive in var) are provably coprime: an image
// that keeps both leading coefficients bounds the gcd degree from above.
bool provably_coprime(const Polynomial& p, const Polynomial& q, std::size_t var) {
  std::mt19937_64 rng(0x5eed);
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<std::uint64_t> at(p.nvars());
    for (auto& v : at) v = 1 + rng() % (kPrime - 1);
    Image a = image(p, var, at), b = image(q, var, at);
    if (a.back() == 0 || b.back() == 0) continue;
    return image_gcd_degree(std::move(a), std::move(b)) == 0;
  }
  return false;
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.with_positive_leading();
  if (b.is_zero()) return a.with_positive_leading();
  if (a.is_constant() || b.is_constant()) {
    mpz_class g = a.content();
    mpz_class h = b.content();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), h.get_mpz_t());
    return constant(a, g);
  }
  if (a.is_monomial()) return monomial_gcd(a, b);
  if (b.is_monomial()) return monomial_gcd(b, a);
  if (a == b) return a.with_positive_leading();

  const auto sa = a.support();
  const auto sb = b.support();
  const std::size_t n = sa.size();
  // A variable present in only one operand cannot occur in the gcd.
  for (std::size_t v = 0; v < n; ++v) {
    if (sa[v] != sb[v]) {
      const Polynomial& with = sa[v] ? a : b;
      Polynomial g = sa[v] ? b : a;
      for (const auto& c : coefficients_in(with, v)) {
        g = gcd_impl(g, c);
        if (g.is_one()) break;
      }
      return g.with_positive_leading();
    }
  }

  // Cheap divisibility check before running a remainder sequence.
  const Polynomial& small = a.terms().size() <= b.terms().size() ? a : b;
  const Polynomial& large = a.terms().size() <= b.terms().size() ? b : a;
  if (small.total_degree() <= large.total_degree()) {
    if (large.try_divide(small)) return small.with_positive_leading();
  }

  // Main variable: smallest degree among the shared ones.
  std::size_t var = n;
  unsigned best = 0;
  for (std::size_t v = n; v-- > 0;) {
    if (!sa[v]) continue;
    unsigned d = std::max(a.degree_in(v), b.degree_in(v));
    if (var == n || d < best) {
      var = v;
      best = d;
    }
  }
  if (var == n) throw Error(ErrorKind::Internal, "gcd: no main variable");

  Polynomial ca = content_in(a, var);
  Polynomial cb = content_in(b, var);
  Polynomial cont = gcd_impl(ca, cb);
  Polynomial p = ca.is_one() ? a : a.divide_exact(ca);
  Polynomial q = cb.is_one() ? b : b.divide_exact(cb);
  if (provably_coprime(p, q, var)) return cont.with_positive_leading();
  if (p.degree_in(var) < q.degree_in(var)) std::swap(p, q);

  // Subresultant sequence.
  Polynomial g = constant(a, 1), h = constant(a, 1);
  Polynomial last(a.chart());
  while (true) {
    const unsigned delta = p.degree_in(var) - q.degree_in(var);
    Polynomial r = pseudo_remainder(p, q, var);
    if (r.is_zero()) {
      last = q;
      break;
    }
    if (!r.depends_on(var)) {
      last = constant(a, 1);
      break;
    }
    p = std::move(q);
    q = r.divide_exact(g * h.pow(delta));
    g = p.leading_coeff_in(var);
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = g.pow(delta).divide_exact(h.pow(delta - 1));
    }
  }
  last = primitive_in(last, var);
  return (cont * last).with_positive_leading();
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  require_same_chart(a.chart(), b.chart());
  return gcd_impl(a, b);
}

}  // namespace flagrank
