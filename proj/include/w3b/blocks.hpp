#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "w3b/combinatorics.hpp"
#include "w3b/polesum.hpp"
#include "w3b/ratfun.hpp"
#include "w3b/rational.hpp"

namespace w3b {

// Central charge and degenerate-field dimension as functions of beta:
// c = 2 - 24 (beta - 1/beta)^2 and h = 4 beta^2 / 3 - 1.  At beta = 1 this
// specialises to c = 2, h = 1/3, the point where the block construction via
// Specht polynomials lives.
struct CftParams {
  Rat beta;
  Rat c;
  Rat h;
};

CftParams params_from_beta(const Rat& beta);  // throws ZeroBeta

// A conformal block stored as the exponent matrix of a pure power product:
//
//   U(x_1..x_d) = prod_{i<j} (x_j - x_i)^{alpha(i,j)},
//
// with the bookkeeping diagonal alpha(i,i) = -s_i^2/3 so that row sums over
// the full row equal -s_i.  All indices in the public interface are 1-based
// point labels, matching the tableau entries.
class ExponentMatrix {
 public:
  ExponentMatrix(Signature sig, std::vector<std::vector<Rat>> alpha);

  int points() const { return static_cast<int>(alpha_.size()); }
  const Signature& signature() const { return sig_; }

  const Rat& at(int i, int j) const;  // 1-based, symmetric
  Rat row_sum(int j) const;           // includes the diagonal entry
  Rat pair_sum() const;               // sum over unordered pairs i < j

  // prod_{i<j} (x_j - x_i)^{3 alpha(i,j)} — the cube of the block, which is
  // a bona fide rational function (3 alpha is integral).  Points must be
  // pairwise distinct.
  Rat eval_cubed(const std::vector<Rat>& x) const;

  bool operator==(const ExponentMatrix& other) const;

 private:
  Signature sig_;
  std::vector<std::vector<Rat>> alpha_;
};

// Exponents of the block attached to a row-strict tableau T with content
// equal to the signature: alpha(i,j) = psi(i,j) - s_i s_j / 3 where psi
// counts the unordered pairs of boxes of T sharing a row and carrying the
// values i and j (equivalently, column co-occurrences in the transpose).
// The shape must be the rectangular (n/3)^3 unless `allow_nonrectangular`
// is set (used to probe which identities survive on other shapes).
ExponentMatrix block_exponents(const Filling& t, const Signature& sig,
                               bool allow_nonrectangular = false);

// The equivalent construction through the standardised tableau: lift to n
// distinct points with the all-ones signature, multiply the intra-group
// factors (x_j - x_i)^{1/3}, and identify each group of consecutive
// variables.  Must agree with block_exponents on every input.
ExponentMatrix second_representation(const Filling& t, const Signature& sig,
                                     Reading reading = Reading::column_wise);

// Logarithmic derivative L_i = sum_{k != i} alpha(i,k)/(x_i - x_k), the
// multiplier implementing d/dx_i on functions R * U via the twisted rule
// D_i(R) = dR/dx_i + R * L_i.  `i` is 1-based.
PoleSum log_derivative(const ExponentMatrix& alpha, int i);
PoleSum twisted_derivative(const PoleSum& r, int i, const ExponentMatrix& alpha);

// Residuals (operator applied to the block, divided by the block) of the
// third-order operators, the five second-order operators, and the three
// first-order global operators.  All are exact rational functions; the
// zero test is PoleSum::is_zero().
PoleSum bpz_residual(int m, const ExponentMatrix& alpha, const CftParams& params);
PoleSum ward_residual(int m, const ExponentMatrix& alpha, const CftParams& params);
PoleSum global_ward_residual(int k, const ExponentMatrix& alpha,
                             const CftParams& params);

// Checks the Moebius covariance of the block on explicit sample points via
// the cubed identity U(phi(x))^3 * prod_i phi'(x_i) = U(x)^3, which stays
// inside rational arithmetic.  moebius = (a, b, c, d) with phi(x) =
// (a x + b)/(c x + d); requires ad - bc != 0 (DegenerateMobius) and sample
// points strictly increasing, off the pole, with strictly increasing
// images (BadInput).  Also verifies per-pair sign consistency so the cube
// roots below the identity are the real ones.
bool covariance_check(const ExponentMatrix& alpha,
                      const std::array<Rat, 4>& moebius,
                      const std::vector<std::vector<Rat>>& samples);

// Collision asymptotics of the block as x_{j+1} -> x_j (j is 1-based,
// 1 <= j <= d-1).  The block times (x_{j+1} - x_j)^exponent either tends to
// the block of a smaller tableau or to zero; which one is read off the
// collision exponent alpha(j,j+1) + exponent (0 = finite limit, 1 = zero).
struct BoundaryLimit {
  Rat exponent;                         // 1/3 when s_j = s_{j+1}, else 2/3
  bool zero = false;                    // true when the rescaled limit vanishes
  std::optional<ExponentMatrix> limit;  // exponents of the limit block
  std::optional<Filling> tableau;       // the merged tableau
};

BoundaryLimit boundary_limit(const Filling& t, const Signature& sig, int j);

// Residual of the order-M hierarchy operator applied to the Specht
// polynomial of the numbering `n` (entries 1..n, each exactly once) whose
// shape has at most `columns` columns:
//
//   d_m^M P + sum_{k=1..M} (1/k!) sum over ordered k-tuples of distinct
//   indices i_1..i_k != m of [prod_l 1/(x_{i_l} - x_m)] *
//   sum_{a_0+...+a_k = M-k} d_m^{a_0} d_{i_1}^{a_1} ... d_{i_k}^{a_k} P.
//
// M = columns; the classical statements are columns = 3 and columns = 2,
// and columns >= 4 exercises the conjectural extension.
FractionSum specht_pde_residual(const Filling& n, int m, int columns);

}  // namespace w3b
