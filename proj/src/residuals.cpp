#include <algorithm>
#include <array>
#include <utility>
#include <vector>

#include "w3b/blocks.hpp"
#include "w3b/error.hpp"
#include "w3b/specht.hpp"

namespace w3b {

namespace {

// D_i applied to the constant 1 for every point, i.e. the logarithmic
// derivatives of the block.
std::vector<PoleSum> log_derivatives(const ExponentMatrix& alpha) {
  std::vector<PoleSum> ld;
  ld.reserve(alpha.points());
  for (int i = 1; i <= alpha.points(); ++i) ld.push_back(log_derivative(alpha, i));
  return ld;
}

}  // namespace

PoleSum bpz_residual(int m, const ExponentMatrix& alpha, const CftParams& params) {
  const int d = alpha.points();
  require(d >= 2, Err::BadInput, "the third-order operators need at least two points");
  require(m >= 1 && m <= d, Err::IndexOutOfRange, "operator index out of range");
  const Signature& sig = alpha.signature();
  const Rat& h = params.h;
  const Rat hp1 = h + 1;
  const int qm = sig.q[m - 1];
  const int m0 = m - 1;

  const std::vector<PoleSum> ld = log_derivatives(alpha);
  const PoleSum dm2 = twisted_derivative(ld[m0], m, alpha);
  const PoleSum dm3 = twisted_derivative(dm2, m, alpha);

  PoleSum r = dm3.scaled(Rat(qm));
  for (int i = 1; i <= d; ++i) {
    if (i == m) continue;
    const int qi = sig.q[i - 1];
    const int i0 = i - 1;

    // (3(h+1)/4) [q_m d_m d_i + q_i d_i^2] / (x_i - x_m)
    const PoleSum dmdi = twisted_derivative(ld[i0], m, alpha);
    const PoleSum di2 = twisted_derivative(ld[i0], i, alpha);
    r += (dmdi.scaled(Rat(qm)) + di2.scaled(Rat(qi)))
             .scaled(Rat(3) * hp1 / Rat(4))
             .times_pole(i0, m0, 1);

    // (3(h+1)/32) {[(5+h)q_m - (5h+1)q_i] d_i - 4[2h q_m + (h+1)q_i] d_m}
    //   / (x_i - x_m)^2
    const Rat ci = (Rat(5) + h) * Rat(qm) - (Rat(5) * h + 1) * Rat(qi);
    const Rat cm = Rat(-4) * (Rat(2) * h * Rat(qm) + hp1 * Rat(qi));
    r += (ld[i0].scaled(ci) + ld[m0].scaled(cm))
             .scaled(Rat(3) * hp1 / Rat(32))
             .times_pole(i0, m0, 2);

    // -h(h+1)(h+5)/16 * (q_i + 3 q_m) / (x_i - x_m)^3
    r += PoleSum::simple_pole(
        d, -(h * hp1 * (h + 5) / Rat(16)) * Rat(qi + 3 * qm), i0, m0, 3);

    for (int j = 1; j <= d; ++j) {
      if (j == i || j == m) continue;
      const int j0 = j - 1;
      // -3(h+1)^2/8 * q_i d_j / ((x_m - x_i)(x_j - x_i))
      r += ld[j0]
               .scaled(Rat(-3) * hp1 * hp1 / Rat(8) * Rat(qi))
               .times_pole(m0, i0, 1)
               .times_pole(j0, i0, 1);
      // +3h(h+1)^2/8 * q_i / ((x_m - x_i)(x_j - x_i)^2)
      r += PoleSum::simple_pole(d, Rat(3) * h * hp1 * hp1 / Rat(8) * Rat(qi),
                                m0, i0, 1)
               .times_pole(j0, i0, 2);
    }
  }
  return r;
}

PoleSum ward_residual(int m, const ExponentMatrix& alpha, const CftParams& params) {
  require(m >= 1 && m <= 5, Err::IndexOutOfRange,
          "the second-order family has five members");
  const int d = alpha.points();
  const Signature& sig = alpha.signature();
  const Rat& h = params.h;
  const Rat hp1 = h + 1;

  const std::vector<PoleSum> ld = log_derivatives(alpha);
  PoleSum r(d);
  for (int i = 1; i <= d; ++i) {
    const int qi = sig.q[i - 1];
    const int i0 = i - 1;

    // q_i x_i^{m-1} d_i^2
    r += twisted_derivative(ld[i0], i, alpha)
             .scaled(Rat(qi))
             .times_monomial(i0, m - 1);

    // -(h+1)/2 * q_i x_i^{m-1} [h/(x_j - x_i)^2 - d_j/(x_j - x_i)]
    for (int j = 1; j <= d; ++j) {
      if (j == i) continue;
      const int j0 = j - 1;
      const PoleSum inner =
          PoleSum::simple_pole(d, h, j0, i0, 2) - ld[j0].times_pole(j0, i0, 1);
      r += inner.scaled(-hp1 / Rat(2) * Rat(qi)).times_monomial(i0, m - 1);
    }

    // The tails carry explicit (m-1) and (m-1)(m-2) prefactors; skipping
    // them when the prefactor vanishes avoids negative powers of x_i.
    if (m >= 2) {
      r += ld[i0]
               .scaled(Rat(m - 1) / Rat(8) * (Rat(5) * h + 1) * Rat(qi))
               .times_monomial(i0, m - 2);
    }
    if (m >= 3) {
      r += PoleSum::constant(
               d, Rat((m - 1) * (m - 2), 24) * h * (Rat(5) * h + 1) * Rat(qi))
               .times_monomial(i0, m - 3);
    }
  }
  return r;
}

PoleSum global_ward_residual(int k, const ExponentMatrix& alpha,
                             const CftParams& params) {
  require(k >= 1 && k <= 3, Err::IndexOutOfRange,
          "the first-order family has three members");
  const int d = alpha.points();
  const Rat& h = params.h;

  const std::vector<PoleSum> ld = log_derivatives(alpha);
  PoleSum r(d);
  for (int i = 1; i <= d; ++i) {
    const int i0 = i - 1;
    switch (k) {
      case 1:
        r += ld[i0];
        break;
      case 2:
        r += ld[i0].times_monomial(i0, 1);
        r += PoleSum::constant(d, h);
        break;
      case 3:
        r += ld[i0].times_monomial(i0, 2);
        r += PoleSum::constant(d, Rat(2) * h).times_monomial(i0, 1);
        break;
    }
  }
  return r;
}

namespace {

Poly multi_derivative(const Poly& p, const std::vector<std::pair<int, int>>& orders) {
  Poly q = p;
  for (const auto& [var, times] : orders) {
    for (int t = 0; t < times && !q.is_zero(); ++t) q = q.derivative(var);
  }
  return q;
}

// All ways to write `total` as an ordered sum of `parts` nonnegative integers.
void compositions(int total, int parts, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int first = 0; first <= total; ++first) {
    current.push_back(first);
    compositions(total - first, parts - 1, current, out);
    current.pop_back();
  }
}

// Ordered tuples of `k` distinct 0-based indices drawn from {0..n-1}\{m0}.
void ordered_tuples(int n, int m0, int k, std::vector<int>& current,
                    std::vector<std::vector<int>>& out) {
  if (k == 0) {
    out.push_back(current);
    return;
  }
  for (int i = 0; i < n; ++i) {
    if (i == m0) continue;
    if (std::find(current.begin(), current.end(), i) != current.end()) continue;
    current.push_back(i);
    ordered_tuples(n, m0, k - 1, current, out);
    current.pop_back();
  }
}

}  // namespace

FractionSum specht_pde_residual(const Filling& n, int m, int columns) {
  const std::vector<int> content = n.content();
  for (int mult : content) {
    require(mult == 1, Err::RepeatedIndex,
            "numbering must use each label exactly once");
  }
  const int nv = n.shape().size();
  require(static_cast<int>(content.size()) == nv, Err::RepeatedIndex,
          "numbering must use the labels 1..n");
  require(columns >= 1, Err::ColumnCountMismatch, "column count must be positive");
  require(n.shape().cols() <= columns, Err::ColumnCountMismatch,
          "shape has more columns than the operator order");
  require(m >= 1 && m <= nv, Err::IndexOutOfRange, "point index out of range");

  const Poly p = specht(n, nv);
  const int M = columns;
  const int m0 = m - 1;

  FractionSum r(nv);
  r.add(RatFun::from_poly(multi_derivative(p, {{m0, M}})));

  for (int k = 1; k <= M; ++k) {
    Rat factorial = 1;
    for (int t = 2; t <= k; ++t) factorial *= t;

    std::vector<std::vector<int>> tuples;
    std::vector<int> scratch;
    ordered_tuples(nv, m0, k, scratch, tuples);

    std::vector<std::vector<int>> splits;
    compositions(M - k, k + 1, scratch, splits);

    for (const std::vector<int>& tuple : tuples) {
      std::vector<std::array<int, 3>> factors;
      factors.reserve(tuple.size());
      for (int idx : tuple) factors.push_back({idx, m0, 1});
      const RatFun prefactor = RatFun::simple(nv, Rat(1) / factorial, factors);

      for (const std::vector<int>& split : splits) {
        std::vector<std::pair<int, int>> orders;
        orders.emplace_back(m0, split[0]);
        for (int t = 0; t < k; ++t) orders.emplace_back(tuple[t], split[t + 1]);
        const Poly q = multi_derivative(p, orders);
        if (q.is_zero()) continue;
        r.add(RatFun::from_poly(q) * prefactor);
      }
    }
  }
  return r;
}

}  // namespace w3b
