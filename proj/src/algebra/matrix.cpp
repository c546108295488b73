#include "flagrank/algebra/matrix.hpp"

#include <algorithm>

#include "flagrank/errors.hpp"

namespace flagrank {

MatrixRF::MatrixRF(ChartPtr chart, std::size_t rows, std::size_t cols)
    : chart_(std::move(chart)), rows_(rows), cols_(cols), entries_(rows * cols, RatFunc(chart_)) {}

MatrixRF MatrixRF::from_rows(ChartPtr chart, const std::vector<VectorRF>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  MatrixRF m(chart, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::InvalidArgument, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      require_same_chart(chart, rows[r][c].chart());
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

MatrixRF MatrixRF::from_columns(ChartPtr chart, std::size_t rows,
                                const std::vector<VectorRF>& columns) {
  MatrixRF m(chart, rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw Error(ErrorKind::InvalidArgument, "ragged matrix columns");
    for (std::size_t r = 0; r < rows; ++r) {
      require_same_chart(chart, columns[c][r].chart());
      m(r, c) = columns[c][r];
    }
  }
  return m;
}

VectorRF MatrixRF::row(std::size_t r) const {
  return VectorRF(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

VectorRF MatrixRF::column(std::size_t c) const {
  VectorRF out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
  return out;
}

MatrixRF MatrixRF::transposed() const {
  MatrixRF t(chart_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

std::vector<VectorQ> MatrixRF::evaluate(const PointQ& p) const {
  require_same_chart(chart_, p.chart);
  std::vector<VectorQ> out(rows_, VectorQ(cols_));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c).evaluate(p.coords);
  }
  return out;
}

namespace {

struct Echelon {
  std::vector<std::vector<Polynomial>> rows;  // only the first pivots.size() rows matter
  std::vector<std::size_t> pivots;            // pivot column per echelon row
};

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  Polynomial g = gcd(a, b);
  return (a.divide_exact(g) * b).with_positive_leading();
}

std::vector<std::vector<Polynomial>> clear_denominators(const MatrixRF& m) {
  std::vector<std::vector<Polynomial>> out;
  out.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Polynomial l(m.chart(), 1);
    for (std::size_t c = 0; c < m.cols(); ++c) l = lcm(l, m(r, c).denominator());
    std::vector<Polynomial> row;
    row.reserve(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const RatFunc& e = m(r, c);
      if (e.denominator().is_one()) {
        row.push_back(e.numerator() * l);
      } else {
        row.push_back(e.numerator() * l.divide_exact(e.denominator()));
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

// Rough cost used to prefer small pivots; any nonzero pivot is correct.
std::size_t pivot_cost(const Polynomial& p) {
  return p.terms().size() * 64 + p.total_degree();
}

// Fraction-free (Bareiss) row echelon form. Each entry below the processed
// pivots is a minor of the input, so every division is exact.
Echelon bareiss_echelon(std::vector<std::vector<Polynomial>> a, const ChartPtr& chart,
                        std::size_t cols) {
  Echelon e;
  const std::size_t nrows = a.size();
  Polynomial prev(chart, 1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < nrows; ++c) {
    std::size_t best = nrows;
    for (std::size_t i = r; i < nrows; ++i) {
      if (a[i][c].is_zero()) continue;
      if (best == nrows || pivot_cost(a[i][c]) < pivot_cost(a[best][c])) best = i;
    }
    if (best == nrows) continue;
    std::swap(a[r], a[best]);
    const Polynomial& piv = a[r][c];
    for (std::size_t i = r + 1; i < nrows; ++i) {
      const Polynomial lead = a[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        Polynomial v = piv * a[i][j];
        if (!lead.is_zero() && !a[r][j].is_zero()) v -= lead * a[r][j];
        a[i][j] = prev.is_one() ? std::move(v) : v.divide_exact(prev);
      }
      a[i][c] = Polynomial(chart);
    }
    prev = a[r][c];
    e.pivots.push_back(c);
    ++r;
  }
  e.rows = std::move(a);
  return e;
}

Echelon echelon_of(const MatrixRF& m) {
  return bareiss_echelon(clear_denominators(m), m.chart(), m.cols());
}

// Back substitution on an echelon form: `x` holds values for the free
// columns on entry and receives the pivot values.
void back_substitute(const Echelon& e, std::size_t cols, VectorRF& x, const ChartPtr& chart) {
  for (std::size_t k = e.pivots.size(); k-- > 0;) {
    const std::size_t pc = e.pivots[k];
    RatFunc s(chart);
    for (std::size_t j = pc + 1; j < cols; ++j) {
      if (e.rows[k][j].is_zero() || x[j].is_zero()) continue;
      s += RatFunc(e.rows[k][j]) * x[j];
    }
    x[pc] = -s / RatFunc(e.rows[k][pc]);
  }
}

}  // namespace

std::size_t rank_generic(const MatrixRF& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return echelon_of(m).pivots.size();
}

std::size_t rank_at(const MatrixRF& m, const PointQ& p) {
  return rank_rational(m.evaluate(p));
}

VectorRF primitive_vector(const VectorRF& v) {
  if (v.empty()) return v;
  const ChartPtr& chart = v.front().chart();
  Polynomial l(chart, 1);
  for (const auto& e : v) {
    if (!e.is_zero()) l = lcm(l, e.denominator());
  }
  std::vector<Polynomial> nums;
  nums.reserve(v.size());
  for (const auto& e : v) {
    if (e.is_zero()) {
      nums.emplace_back(chart);
    } else {
      nums.push_back(e.numerator() * l.divide_exact(e.denominator()));
    }
  }
  Polynomial g(chart);
  for (const auto& n : nums) {
    if (!n.is_zero()) g = gcd(g, n);
    if (g.is_one()) break;
  }
  if (g.is_zero()) return v;
  int sign = 1;
  for (const auto& n : nums) {
    if (!n.is_zero()) {
      sign = n.leading_sign() * g.leading_sign();
      break;
    }
  }
  VectorRF out;
  out.reserve(v.size());
  for (const auto& n : nums) {
    Polynomial q = g.is_one() ? n : n.divide_exact(g);
    out.emplace_back(sign < 0 ? -q : q);
  }
  return out;
}

std::vector<VectorRF> kernel_basis(const MatrixRF& m) {
  const ChartPtr& chart = m.chart();
  std::vector<VectorRF> basis;
  if (m.cols() == 0) return basis;
  Echelon e;
  if (m.rows() > 0) e = echelon_of(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto pc : e.pivots) is_pivot[pc] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    VectorRF x(m.cols(), RatFunc(chart));
    x[f] = RatFunc(chart, 1);
    back_substitute(e, m.cols(), x, chart);
    basis.push_back(primitive_vector(x));
  }
  return basis;
}

std::optional<VectorRF> solve_in_span(const VectorRF& v, const MatrixRF& frame) {
  const ChartPtr& chart = frame.chart();
  if (v.size() != frame.rows()) throw Error(ErrorKind::InvalidArgument, "vector length mismatch");
  const std::size_t k = frame.cols();
  MatrixRF aug(chart, frame.rows(), k + 1);
  for (std::size_t r = 0; r < frame.rows(); ++r) {
    for (std::size_t c = 0; c < k; ++c) aug(r, c) = frame(r, c);
    aug(r, k) = v[r];
  }
  Echelon e = echelon_of(aug);
  if (std::find(e.pivots.begin(), e.pivots.end(), k) != e.pivots.end()) return std::nullopt;
  VectorRF x(k + 1, RatFunc(chart));
  x[k] = RatFunc(chart, -1);
  back_substitute(e, k + 1, x, chart);
  x.pop_back();
  return x;
}

std::vector<std::size_t> independent_columns(const MatrixRF& m) {
  if (m.rows() == 0) return {};
  return echelon_of(m).pivots;
}

namespace {

// Gaussian elimination over Q to reduced row echelon form; returns pivots.
std::vector<std::size_t> rref_rational(std::vector<VectorQ>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[r], a[p]);
    mpq_class inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank_rational(std::vector<VectorQ> rows) {
  if (rows.empty()) return 0;
  return rref_rational(rows, rows.front().size()).size();
}

std::vector<VectorQ> kernel_rational(std::vector<VectorQ> rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  if (!rows.empty()) pivots = rref_rational(rows, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<VectorQ> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    VectorQ x(cols, 0);
    x[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = -rows[k][f];
    out.push_back(std::move(x));
  }
  return out;
}

std::optional<VectorQ> solve_rational(const std::vector<VectorQ>& columns, const VectorQ& v) {
  const std::size_t n = v.size();
  const std::size_t k = columns.size();
  std::vector<VectorQ> aug(n, VectorQ(k + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < k; ++c) aug[r][c] = columns[c].at(r);
    aug[r][k] = v[r];
  }
  auto pivots = rref_rational(aug, k + 1);
  if (std::find(pivots.begin(), pivots.end(), k) != pivots.end()) return std::nullopt;
  VectorQ x(k, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][k];
  return x;
}

}  // namespace flagrank
