#pragma once

#include <cstdint>
#include <vector>

// Exact dense linear algebra: integer Smith normal form for Z-homology and
// GF(2) elimination for the equivariant computations. Matrices are small
// (hundreds of rows at most), so simplicity beats asymptotics.

namespace khoburn {

struct IntMat {
  int rows = 0, cols = 0;
  std::vector<long long> a;  // row-major

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c), 0) {}
  long long& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  long long at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  bool operator==(const IntMat&) const = default;
};

IntMat transpose(const IntMat& m);
IntMat mat_mul(const IntMat& x, const IntMat& y);
bool is_zero(const IntMat& m);

// Nontrivial invariant factors d_1 | d_2 | ... (all >= 1, count = rank).
std::vector<long long> smith_invariants(IntMat m);

int rank_q(const IntMat& m);  // rank over the rationals

// Matrix over GF(2), rows as bit-packed words.
struct F2Mat {
  int rows = 0, cols = 0;
  std::vector<std::uint64_t> w;  // row-major, words_per_row() per row

  F2Mat() = default;
  F2Mat(int r, int c);
  int words_per_row() const { return (cols + 63) / 64; }
  bool get(int i, int j) const;
  void set(int i, int j, bool v);
  void xor_row(int dst, int src);       // row dst += row src
  bool operator==(const F2Mat&) const = default;
};

F2Mat f2_from_int(const IntMat& m);
F2Mat f2_transpose(const F2Mat& m);
F2Mat f2_mul(const F2Mat& x, const F2Mat& y);
int f2_rank(F2Mat m);
// Basis of the null space {x : m x = 0}, returned as rows of a matrix.
F2Mat f2_kernel(const F2Mat& m);
// One solution x of m x = b, or empty vector if none.
std::vector<std::uint8_t> f2_solve(F2Mat m, std::vector<std::uint8_t> b);

}  // namespace khoburn
