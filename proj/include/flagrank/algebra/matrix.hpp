#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "flagrank/algebra/ratfunc.hpp"

namespace flagrank {

using VectorRF = std::vector<RatFunc>;
using VectorQ = std::vector<mpq_class>;

/// Dense row-major matrix over the rational-function field of a chart.
class MatrixRF {
 public:
  MatrixRF(ChartPtr chart, std::size_t rows, std::size_t cols);
  static MatrixRF from_rows(ChartPtr chart, const std::vector<VectorRF>& rows);
  static MatrixRF from_columns(ChartPtr chart, std::size_t rows,
                               const std::vector<VectorRF>& columns);

  const ChartPtr& chart() const noexcept { return chart_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  RatFunc& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const RatFunc& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  VectorRF row(std::size_t r) const;
  VectorRF column(std::size_t c) const;
  MatrixRF transposed() const;

  /// Entry-wise evaluation; Error(PoleAtPoint) on any pole.
  std::vector<VectorQ> evaluate(const PointQ& p) const;

 private:
  ChartPtr chart_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<RatFunc> entries_;
};

/// Rank over the function field (fraction-free elimination).
std::size_t rank_generic(const MatrixRF& m);

/// Rank of the matrix evaluated at `p`. Never exceeds rank_generic.
std::size_t rank_at(const MatrixRF& m, const PointQ& p);

/// Basis of the right kernel over the function field, each vector scaled to
/// a primitive polynomial vector. Size is cols - rank_generic.
std::vector<VectorRF> kernel_basis(const MatrixRF& m);

/// Coordinates c with frame * c = v (columns of `frame` are the spanning
/// vectors), or nullopt when v is not in the column span.
std::optional<VectorRF> solve_in_span(const VectorRF& v, const MatrixRF& frame);

/// Indices of the leftmost maximal set of generically independent columns.
std::vector<std::size_t> independent_columns(const MatrixRF& m);

/// Scale a nonzero vector by a function so all entries are polynomials with
/// no common factor, and the first nonzero entry has positive leading
/// coefficient.
VectorRF primitive_vector(const VectorRF& v);

std::size_t rank_rational(std::vector<VectorQ> rows);
std::vector<VectorQ> kernel_rational(std::vector<VectorQ> rows, std::size_t cols);
/// Solve columns * c = v over Q.
std::optional<VectorQ> solve_rational(const std::vector<VectorQ>& columns, const VectorQ& v);

}  // namespace flagrank
