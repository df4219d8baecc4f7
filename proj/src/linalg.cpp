#include "khoburn/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace khoburn {

IntMat transpose(const IntMat& m) {
  IntMat t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

IntMat mat_mul(const IntMat& x, const IntMat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  IntMat z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      long long v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
    }
  return z;
}

bool is_zero(const IntMat& m) {
  for (long long v : m.a)
    if (v != 0) return false;
  return true;
}

namespace {

void swap_rows(IntMat& m, int a, int b) {
  for (int j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
}
void swap_cols(IntMat& m, int a, int b) {
  for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
}
void add_row(IntMat& m, int dst, int src, long long f) {
  for (int j = 0; j < m.cols; ++j) m.at(dst, j) += f * m.at(src, j);
}
void add_col(IntMat& m, int dst, int src, long long f) {
  for (int i = 0; i < m.rows; ++i) m.at(i, dst) += f * m.at(i, src);
}

// Locate the entry of smallest nonzero absolute value in the trailing block.
bool locate_pivot(const IntMat& m, int start, int& pi, int& pj) {
  long long best = 0;
  for (int i = start; i < m.rows; ++i)
    for (int j = start; j < m.cols; ++j) {
      long long v = std::llabs(m.at(i, j));
      if (v != 0 && (best == 0 || v < best)) {
        best = v;
        pi = i;
        pj = j;
      }
    }
  return best != 0;
}

}  // namespace

std::vector<long long> smith_invariants(IntMat m) {
  int t = 0;
  std::vector<long long> inv;
  while (true) {
    int pi = 0, pj = 0;
    if (!locate_pivot(m, t, pi, pj)) break;
    swap_rows(m, t, pi);
    swap_cols(m, t, pj);
    // clear row/column t; smallest-pivot selection keeps entries tame
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int i = t + 1; i < m.rows; ++i) {
        if (m.at(i, t) == 0) continue;
        long long q = m.at(i, t) / m.at(t, t);
        add_row(m, i, t, -q);
        if (m.at(i, t) != 0) {  // remainder became the smaller pivot
          swap_rows(m, t, i);
          dirty = true;
        }
      }
      for (int j = t + 1; j < m.cols; ++j) {
        if (m.at(t, j) == 0) continue;
        long long q = m.at(t, j) / m.at(t, t);
        add_col(m, j, t, -q);
        if (m.at(t, j) != 0) {
          swap_cols(m, t, j);
          dirty = true;
        }
      }
    }
    // divisibility: fold any entry not divisible by the pivot into row t
    bool refold = false;
    for (int i = t + 1; i < m.rows && !refold; ++i)
      for (int j = t + 1; j < m.cols && !refold; ++j)
        if (m.at(i, j) % m.at(t, t) != 0) {
          add_row(m, t, i, 1);
          refold = true;
        }
    if (refold) continue;  // redo this pivot
    inv.push_back(std::llabs(m.at(t, t)));
    ++t;
    if (t >= m.rows || t >= m.cols) break;
  }
  return inv;
}

int rank_q(const IntMat& m) {
  // fraction-free Gaussian elimination (Bareiss) would also work; the Smith
  // loop is reused since matrices are tiny
  return static_cast<int>(smith_invariants(m).size());
}

F2Mat::F2Mat(int r, int c) : rows(r), cols(c) {
  w.assign(static_cast<size_t>(r) * static_cast<size_t>((c + 63) / 64), 0);
}

bool F2Mat::get(int i, int j) const {
  return (w[static_cast<size_t>(i) * words_per_row() + j / 64] >> (j % 64)) & 1;
}

void F2Mat::set(int i, int j, bool v) {
  auto& word = w[static_cast<size_t>(i) * words_per_row() + j / 64];
  if (v)
    word |= std::uint64_t{1} << (j % 64);
  else
    word &= ~(std::uint64_t{1} << (j % 64));
}

void F2Mat::xor_row(int dst, int src) {
  int wpr = words_per_row();
  for (int k = 0; k < wpr; ++k)
    w[static_cast<size_t>(dst) * wpr + k] ^= w[static_cast<size_t>(src) * wpr + k];
}

F2Mat f2_from_int(const IntMat& m) {
  F2Mat f(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j) % 2 != 0) f.set(i, j, true);
  return f;
}

F2Mat f2_transpose(const F2Mat& m) {
  F2Mat t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.get(i, j)) t.set(j, i, true);
  return t;
}

F2Mat f2_mul(const F2Mat& x, const F2Mat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("f2_mul: shape mismatch");
  // z[i] ^= y[k] whenever x[i,k] = 1
  F2Mat z(x.rows, y.cols);
  int wpr = z.words_per_row();
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k)
      if (x.get(i, k))
        for (int t = 0; t < wpr; ++t)
          z.w[static_cast<size_t>(i) * wpr + t] ^= y.w[static_cast<size_t>(k) * wpr + t];
  return z;
}

int f2_rank(F2Mat m) {
  int r = 0;
  for (int j = 0; j < m.cols && r < m.rows; ++j) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.get(i, j)) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r) {
      int wpr = m.words_per_row();
      for (int k = 0; k < wpr; ++k)
        std::swap(m.w[static_cast<size_t>(piv) * wpr + k], m.w[static_cast<size_t>(r) * wpr + k]);
    }
    for (int i = 0; i < m.rows; ++i)
      if (i != r && m.get(i, j)) m.xor_row(i, r);
    ++r;
  }
  return r;
}

F2Mat f2_kernel(const F2Mat& m) {
  // column-reduce a copy, tracking pivots
  F2Mat a = m;
  std::vector<int> pivot_col(static_cast<size_t>(a.rows), -1);
  int r = 0;
  std::vector<int> col_of_pivot;
  for (int j = 0; j < a.cols && r < a.rows; ++j) {
    int piv = -1;
    for (int i = r; i < a.rows; ++i)
      if (a.get(i, j)) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r) {
      int wpr = a.words_per_row();
      for (int k = 0; k < wpr; ++k)
        std::swap(a.w[static_cast<size_t>(piv) * wpr + k], a.w[static_cast<size_t>(r) * wpr + k]);
    }
    for (int i = 0; i < a.rows; ++i)
      if (i != r && a.get(i, j)) a.xor_row(i, r);
    pivot_col[static_cast<size_t>(r)] = j;
    col_of_pivot.push_back(j);
    ++r;
  }
  std::vector<int> is_pivot(static_cast<size_t>(a.cols), -1);
  for (int i = 0; i < r; ++i) is_pivot[static_cast<size_t>(pivot_col[static_cast<size_t>(i)])] = i;
  F2Mat ker(a.cols - r, a.cols);
  int row = 0;
  for (int j = 0; j < a.cols; ++j) {
    if (is_pivot[static_cast<size_t>(j)] >= 0) continue;
    ker.set(row, j, true);
    for (int i = 0; i < r; ++i)
      if (a.get(i, j)) ker.set(row, pivot_col[static_cast<size_t>(i)], true);
    ++row;
  }
  return ker;
}

std::vector<std::uint8_t> f2_solve(F2Mat m, std::vector<std::uint8_t> b) {
  if (static_cast<int>(b.size()) != m.rows) throw std::invalid_argument("f2_solve: shape mismatch");
  std::vector<int> pivot_col;
  int r = 0;
  for (int j = 0; j < m.cols && r < m.rows; ++j) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.get(i, j)) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r) {
      int wpr = m.words_per_row();
      for (int k = 0; k < wpr; ++k)
        std::swap(m.w[static_cast<size_t>(piv) * wpr + k], m.w[static_cast<size_t>(r) * wpr + k]);
      std::swap(b[static_cast<size_t>(piv)], b[static_cast<size_t>(r)]);
    }
    for (int i = 0; i < m.rows; ++i)
      if (i != r && m.get(i, j)) {
        m.xor_row(i, r);
        b[static_cast<size_t>(i)] ^= b[static_cast<size_t>(r)];
      }
    pivot_col.push_back(j);
    ++r;
  }
  for (int i = r; i < m.rows; ++i)
    if (b[static_cast<size_t>(i)]) return {};  // inconsistent
  std::vector<std::uint8_t> x(static_cast<size_t>(m.cols), 0);
  for (int i = 0; i < r; ++i) x[static_cast<size_t>(pivot_col[static_cast<size_t>(i)])] = b[static_cast<size_t>(i)];
  return x;
}

}  // namespace khoburn
