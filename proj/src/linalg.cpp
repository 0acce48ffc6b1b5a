#include "w3b/linalg.hpp"

#include <cmath>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "w3b/error.hpp"

namespace w3b {

namespace {
bool g_parallel_linalg = true;

void check_rectangular(const std::vector<std::vector<Int>>& m) {
  for (const auto& row : m)
    require(row.size() == m[0].size(), Err::BadInput, "matrix rows must have equal length");
}

// One Bareiss elimination step below row `k` with pivot m[k][k_col], dividing
// by the previous pivot `prev`.  Divisions are exact by Sylvester's identity.
void eliminate_below(std::vector<std::vector<Int>>& m, int k, int k_col, const Int& prev,
                     bool parallel) {
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel && rows - k > 2)
#endif
  for (int r = k + 1; r < rows; ++r) {
    for (int c = k_col + 1; c < cols; ++c) {
      Int t = m[r][c] * m[k][k_col] - m[r][k_col] * m[k][c];
      mpz_divexact(m[r][c].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
    }
    m[r][k_col] = 0;
  }
#ifndef _OPENMP
  (void)parallel;
#endif
}
}  // namespace

void set_parallel_linalg(bool enabled) { g_parallel_linalg = enabled; }
bool parallel_linalg() { return g_parallel_linalg; }

int bareiss_rank(std::vector<std::vector<Int>> m) {
  if (m.empty() || m[0].empty()) return 0;
  check_rectangular(m);
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  Int prev = 1;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    eliminate_below(m, rank, c, prev, false);
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

namespace {
Int bareiss_det_impl(std::vector<std::vector<Int>> m, bool parallel) {
  const int n = static_cast<int>(m.size());
  require(n > 0, Err::BadInput, "determinant of an empty matrix");
  check_rectangular(m);
  require(static_cast<int>(m[0].size()) == n, Err::BadInput, "determinant needs a square matrix");
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int pivot = -1;
      for (int r = k + 1; r < n; ++r)
        if (m[r][k] != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) return 0;
      std::swap(m[k], m[pivot]);
      sign = -sign;
    }
    eliminate_below(m, k, k, prev, parallel);
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}
}  // namespace

Int bareiss_det_serial(std::vector<std::vector<Int>> m) {
  return bareiss_det_impl(std::move(m), false);
}

Int bareiss_det_parallel(std::vector<std::vector<Int>> m) {
  return bareiss_det_impl(std::move(m), true);
}

Int bareiss_det(const std::vector<std::vector<Int>>& m) {
  return bareiss_det_impl(m, g_parallel_linalg);
}

Rat det_rational(const std::vector<std::vector<Rat>>& m) {
  const int n = static_cast<int>(m.size());
  require(n > 0, Err::BadInput, "determinant of an empty matrix");
  std::vector<std::vector<Int>> cleared(n);
  Rat scale = 1;
  for (int r = 0; r < n; ++r) {
    require(static_cast<int>(m[r].size()) == n, Err::BadInput, "determinant needs a square matrix");
    Int l = 1;
    for (const Rat& x : m[r]) l = lcm(l, Int(x.get_den()));
    cleared[r].resize(n);
    for (int c = 0; c < n; ++c) {
      Rat scaled = m[r][c] * Rat(l);
      cleared[r][c] = scaled.get_num();
    }
    scale /= Rat(l);
  }
  Rat out = scale * Rat(bareiss_det_serial(std::move(cleared)));
  out.canonicalize();
  return out;
}

int rank_rational(const std::vector<std::vector<Rat>>& m) {
  if (m.empty() || m[0].empty()) return 0;
  std::vector<std::vector<Int>> cleared(m.size());
  for (std::size_t r = 0; r < m.size(); ++r) {
    require(m[r].size() == m[0].size(), Err::BadInput, "matrix rows must have equal length");
    Int l = 1;
    for (const Rat& x : m[r]) l = lcm(l, Int(x.get_den()));
    cleared[r].resize(m[r].size());
    for (std::size_t c = 0; c < m[r].size(); ++c) {
      Rat scaled = m[r][c] * Rat(l);
      cleared[r][c] = scaled.get_num();
    }
  }
  return bareiss_rank(std::move(cleared));
}

std::vector<std::vector<Int>> unit_lower_inverse(const std::vector<std::vector<Int>>& m) {
  const int n = static_cast<int>(m.size());
  for (int r = 0; r < n; ++r) {
    require(static_cast<int>(m[r].size()) == n, Err::BadInput, "inverse needs a square matrix");
    require(m[r][r] == 1, Err::SingularM, "matrix must have a unit diagonal");
    for (int c = r + 1; c < n; ++c)
      require(m[r][c] == 0, Err::SingularM, "matrix must be lower triangular");
  }
  std::vector<std::vector<Int>> inv(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      Int s = 0;
      for (int k = j; k < i; ++k) s += m[i][k] * inv[k][j];
      inv[i][j] = -s;
    }
  return inv;
}

double det_double(std::vector<std::vector<double>> m) {
  const int n = static_cast<int>(m.size());
  require(n > 0, Err::BadInput, "determinant of an empty matrix");
  for (const auto& row : m)
    require(static_cast<int>(row.size()) == n, Err::BadInput, "determinant needs a square matrix");
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    for (int r = k + 1; r < n; ++r)
      if (std::fabs(m[r][k]) > std::fabs(m[pivot][k])) pivot = r;
    if (m[pivot][k] == 0.0) return 0.0;
    if (pivot != k) {
      std::swap(m[k], m[pivot]);
      det = -det;
    }
    det *= m[k][k];
    for (int r = k + 1; r < n; ++r) {
      double f = m[r][k] / m[k][k];
      for (int c = k; c < n; ++c) m[r][c] -= f * m[k][c];
    }
  }
  return det;
}

}  // namespace w3b
