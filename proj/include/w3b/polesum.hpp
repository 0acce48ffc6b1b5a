#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "w3b/poly.hpp"
#include "w3b/ratfun.hpp"
#include "w3b/rational.hpp"

namespace w3b {

// Exact sum of terms
//
//     coeff * x^mono / prod_{a<b} (x_b - x_a)^{e_ab},
//
// with a packed monomial numerator (poly.hpp packing) and pole exponents
// stored three bits per variable pair.  The class is closed under the
// operations used by the twisted-derivation calculus (addition, products,
// multiplication by monomials and by simple pole factors, partial
// derivatives), which is what makes "apply a differential operator to a pure
// power product and divide by it" computable without ever expanding the
// power product itself.
//
// Variable indices are 0-based here; pair orientation is canonical: the
// stored factor for the pair (a, b) with a < b is (x_b - x_a).
class PoleSum {
 public:
  using PolePack = std::array<std::uint64_t, 2>;
  using Key = std::pair<std::uint64_t, PolePack>;

  static constexpr int kPoleBits = 3;
  static constexpr unsigned kPoleMask = 7;
  static constexpr int kPairsPerWord = 21;

  explicit PoleSum(int nvars);

  static PoleSum constant(int nvars, const Rat& c);
  // c / (x_u - x_v)^k for any u != v; the sign is normalised into the
  // coefficient when u < v (so the stored factor keeps its canonical
  // orientation).
  static PoleSum simple_pole(int nvars, const Rat& c, int u, int v, int k = 1);

  int nvars() const { return nvars_; }
  bool empty() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  static int pole_exponent(const PolePack& pack, int pair);
  static void pole_add(PolePack& pack, int pair, int delta);

  PoleSum& add_term(std::uint64_t mono, const PolePack& pole, const Rat& coeff);
  PoleSum& operator+=(const PoleSum& other);
  PoleSum operator+(const PoleSum& other) const;
  PoleSum operator-(const PoleSum& other) const;
  PoleSum operator-() const;
  PoleSum operator*(const PoleSum& other) const;
  bool operator==(const PoleSum& other) const;

  PoleSum scaled(const Rat& c) const;
  PoleSum times_monomial(int var, int power) const;
  // Multiply every term by 1/(x_u - x_v)^k; u != v, any order.
  PoleSum times_pole(int u, int v, int k) const;
  PoleSum derivative(int var) const;

  // Exact evaluation; throws CollidingPoints when a pole factor vanishes.
  Rat eval(const std::vector<Rat>& x) const;

  // Deterministic exact zero test: recursive partial-fraction elimination of
  // the highest variable present.  Uniqueness of the partial-fraction
  // decomposition over the field of rational functions in the remaining
  // variables reduces the question to strictly smaller instances.
  bool is_zero() const;

  // Fast randomized pre-pass: evaluates at `trials` pole-free sample points.
  // A nonzero value proves the sum nonzero; all-zero proves nothing by
  // itself (callers follow up with is_zero()).
  bool vanishes_at_samples(RatStream& rng, int trials = 20) const;

  // Least common denominator of all pole patterns, as a DiffDenom.
  DiffDenom pole_lcm() const;

  // Numerator after bringing every term over pole_lcm() and expanding.
  // When `assert_cubic_bound` is set, verifies that the common denominator
  // divides prod_{i<j} (x_j - x_i)^3 first.
  Poly cleared_numerator(bool assert_cubic_bound = true) const;

  std::string to_string() const;

 private:
  int nvars_;
  std::map<Key, Rat> terms_;
};

}  // namespace w3b
