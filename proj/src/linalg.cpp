#include "effdim/linalg.hpp"

#include <cstring>

namespace effdim {

std::string matrix_key(const Matrix<Rational>& m) {
  std::string key = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":";
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      key += m(i, j).str();
      key += ',';
    }
  return key;
}

std::string matrix_key(const Matrix<Gf>& m) {
  std::string key;
  key.resize(static_cast<std::size_t>(16 + 8 * m.size()));
  std::int64_t dims[2] = {m.rows(), m.cols()};
  std::memcpy(key.data(), dims, 16);
  std::size_t off = 16;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      const Gf& x = m(i, j);
      std::uint64_t v = x.bound() ? x.value() : static_cast<std::uint64_t>(x.literal());
      std::memcpy(key.data() + off, &v, 8);
      off += 8;
    }
  return key;
}

namespace {

void swap_rows(Matrix<BigInt>& m, Index a, Index b) {
  if (a != b) m.row(a).swap(m.row(b));
}
void swap_cols(Matrix<BigInt>& m, Index a, Index b) {
  if (a != b) m.col(a).swap(m.col(b));
}
// row a += f * row b
void add_row(Matrix<BigInt>& m, Index a, Index b, const BigInt& f) {
  for (Index c = 0; c < m.cols(); ++c) m(a, c) += f * m(b, c);
}
void add_col(Matrix<BigInt>& m, Index a, Index b, const BigInt& f) {
  for (Index r = 0; r < m.rows(); ++r) m(r, a) += f * m(r, b);
}

}  // namespace

SmithDecomposition smith_decomposition(const Matrix<BigInt>& M) {
  const Index rows = M.rows(), cols = M.cols();
  SmithDecomposition s;
  s.D = M;
  s.U = Matrix<BigInt>::Identity(rows, rows);
  s.V = Matrix<BigInt>::Identity(cols, cols);
  Matrix<BigInt>& D = s.D;

  for (Index t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Move the smallest nonzero entry of the trailing block to (t, t).
      Index pr = -1, pc = -1;
      for (Index i = t; i < rows; ++i)
        for (Index j = t; j < cols; ++j)
          if (!D(i, j).is_zero() && (pr < 0 || D(i, j).abs() < D(pr, pc).abs())) {
            pr = i;
            pc = j;
          }
      if (pr < 0) goto done;
      swap_rows(D, t, pr);
      swap_rows(s.U, t, pr);
      swap_cols(D, t, pc);
      swap_cols(s.V, t, pc);

      bool clean = true;
      for (Index i = t + 1; i < rows; ++i) {
        if (D(i, t).is_zero()) continue;
        BigInt q = floor_div(D(i, t), D(t, t));
        add_row(D, i, t, -q);
        add_row(s.U, i, t, -q);
        if (!D(i, t).is_zero()) clean = false;
      }
      for (Index j = t + 1; j < cols; ++j) {
        if (D(t, j).is_zero()) continue;
        BigInt q = floor_div(D(t, j), D(t, t));
        add_col(D, j, t, -q);
        add_col(s.V, j, t, -q);
        if (!D(t, j).is_zero()) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the remaining block by the pivot.
      Index bad_row = -1;
      for (Index i = t + 1; i < rows && bad_row < 0; ++i)
        for (Index j = t + 1; j < cols; ++j)
          if (!floor_mod(D(i, j), D(t, t)).is_zero()) {
            bad_row = i;
            break;
          }
      if (bad_row < 0) break;
      add_row(D, t, bad_row, BigInt(1));
      add_row(s.U, t, bad_row, BigInt(1));
    }
    if (D(t, t).sign() < 0) {
      for (Index c = 0; c < cols; ++c) D(t, c) = -D(t, c);
      for (Index c = 0; c < rows; ++c) s.U(t, c) = -s.U(t, c);
    }
  }
done:
  return s;
}

std::vector<BigInt> smith_form(const Matrix<BigInt>& M) {
  SmithDecomposition s = smith_decomposition(M);
  std::vector<BigInt> out;
  Index nonzero = 0;
  for (Index t = 0; t < std::min(M.rows(), M.cols()); ++t) {
    if (s.D(t, t).is_zero()) continue;
    ++nonzero;
    if (s.D(t, t) != BigInt(1)) out.push_back(s.D(t, t));
  }
  for (Index t = nonzero; t < M.cols(); ++t) out.push_back(BigInt(0));
  return out;
}

}  // namespace effdim
