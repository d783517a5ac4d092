#pragma once

// Dense exact linear algebra on Eigen matrices with exact scalars.

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "effdim/field.hpp"
#include "json.hpp"

namespace effdim {

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
using Index = Eigen::Index;

template <class S>
struct RankSolveResult {
  Index rank = 0;
  std::vector<Index> pivots;          // pivot column of each nonzero row
  Matrix<S> kernel;                   // cols x (cols - rank), columns span ker M
  std::optional<Matrix<S>> solution;  // X with M X = rhs, free variables zero
};

// In-place reduced row echelon form; pivots are the first nonzero entry
// scanning columns left to right. Returns the pivot columns.
template <class S>
std::vector<Index> rref_inplace(Matrix<S>& m, Index ncols_to_reduce = -1) {
  if (ncols_to_reduce < 0) ncols_to_reduce = m.cols();
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < ncols_to_reduce && row < m.rows(); ++col) {
    Index piv = -1;
    for (Index r = row; r < m.rows(); ++r)
      if (!is_zero(m(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row) m.row(piv).swap(m.row(row));
    const S inv = S(1) / m(row, col);
    for (Index c = col; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      const S factor = m(r, col);
      for (Index c = col; c < m.cols(); ++c) m(r, c) = m(r, c) - factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class S>
RankSolveResult<S> rank_solve(const Matrix<S>& M, const Matrix<S>* rhs = nullptr) {
  if (rhs && rhs->rows() != M.rows()) throw Error(Errc::IndexOutOfRange, "rhs row count does not match");
  const Index n = M.cols();
  Matrix<S> aug(M.rows(), n + (rhs ? rhs->cols() : 0));
  aug.leftCols(n) = M;
  if (rhs) aug.rightCols(rhs->cols()) = *rhs;
  RankSolveResult<S> res;
  res.pivots = rref_inplace(aug, n);
  res.rank = static_cast<Index>(res.pivots.size());

  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index c : res.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  res.kernel = Matrix<S>::Zero(n, n - res.rank);
  Index kcol = 0;
  for (Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    res.kernel(free, kcol) = S(1);
    for (Index r = 0; r < res.rank; ++r) res.kernel(res.pivots[static_cast<std::size_t>(r)], kcol) = -aug(r, free);
    ++kcol;
  }

  if (rhs) {
    for (Index r = res.rank; r < aug.rows(); ++r)
      for (Index c = n; c < aug.cols(); ++c)
        if (!is_zero(aug(r, c))) throw Error(Errc::Inconsistent, "right-hand side is not in the column space");
    Matrix<S> x = Matrix<S>::Zero(n, rhs->cols());
    for (Index r = 0; r < res.rank; ++r) x.row(res.pivots[static_cast<std::size_t>(r)]) = aug.block(r, n, 1, rhs->cols());
    res.solution = std::move(x);
  }
  return res;
}

template <class S>
Index rank(const Matrix<S>& M) {
  Matrix<S> copy = M;
  return static_cast<Index>(rref_inplace(copy).size());
}

template <class S>
Matrix<S> kron(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <class S>
Matrix<S> block_diag(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> out = Matrix<S>::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

template <class S>
bool is_strictly_upper(const Matrix<S>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j <= i && j < m.cols(); ++j)
      if (!is_zero(m(i, j))) return false;
  return true;
}

// Identity/zero matrices whose entries are bound to `field`.
template <class Field>
Matrix<typename Field::scalar_type> identity(const Field& field, Index d) {
  Matrix<typename Field::scalar_type> m(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) m(i, j) = i == j ? field.one() : field.zero();
  return m;
}

template <class Field>
Matrix<typename Field::scalar_type> zeros(const Field& field, Index r, Index c) {
  return Matrix<typename Field::scalar_type>::Constant(r, c, field.zero());
}

template <class Field>
void canonicalize(const Field& field, Matrix<typename Field::scalar_type>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = field.canonical(m(i, j));
}

// Byte string identifying the matrix entries (for hashing / collision tests).
std::string matrix_key(const Matrix<Rational>& m);
std::string matrix_key(const Matrix<Gf>& m);

template <class Field>
nlohmann::json encode_matrix(const Field& field, const Matrix<typename Field::scalar_type>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(field.encode(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"field", field.spec()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

template <class Field>
Matrix<typename Field::scalar_type> decode_matrix(const Field& field, const nlohmann::json& j) {
  if (j.contains("field") && j.at("field").template get<FieldSpec>() != field.spec())
    throw Error(Errc::FieldMismatch, "matrix field does not match");
  const Index r = j.at("rows").get<Index>(), c = j.at("cols").get<Index>();
  const auto& e = j.at("entries");
  if (!e.is_array() || static_cast<Index>(e.size()) != r) throw Error(Errc::Malformed, "matrix row count mismatch");
  Matrix<typename Field::scalar_type> m(r, c);
  for (Index i = 0; i < r; ++i) {
    const auto& row = e.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Index>(row.size()) != c) throw Error(Errc::Malformed, "matrix column count mismatch");
    for (Index k = 0; k < c; ++k) m(i, k) = field.decode(row.at(static_cast<std::size_t>(k)));
  }
  return m;
}

struct SmithDecomposition {
  Matrix<BigInt> U, D, V;  // U * M * V == D, U and V unimodular, D diagonal
};

SmithDecomposition smith_decomposition(const Matrix<BigInt>& M);

// Invariant factors d_1 | d_2 | ... of Z^cols / rowspace(M). Unit factors
// are dropped; each free summand contributes a 0 at the end.
std::vector<BigInt> smith_form(const Matrix<BigInt>& M);

}  // namespace effdim
