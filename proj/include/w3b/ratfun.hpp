#pragma once
#include <array>
#include <map>
#include <string>
#include <vector>

#include "w3b/poly.hpp"

namespace w3b {

// Denominators are kept in factored form as products of pairwise differences
// (x_b - x_a) with a < b (0-based variable indices), one exponent per pair.
class DiffDenom {
public:
  DiffDenom() : nvars_(0) {}
  explicit DiffDenom(int nvars);

  static int pair_count(int nvars) { return nvars * (nvars - 1) / 2; }
  static int pair_index(int nvars, int a, int b);

  int nvars() const { return nvars_; }
  const std::vector<int>& exps() const { return exps_; }
  bool is_one() const;
  int exp(int a, int b) const;
  void add(int a, int b, int k);

  static DiffDenom lcm(const DiffDenom& x, const DiffDenom& y);
  DiffDenom operator*(const DiffDenom& o) const;
  // Componentwise difference; requires *this >= o.
  DiffDenom operator/(const DiffDenom& o) const;
  bool divides(const DiffDenom& o) const;  // *this divides o

  Poly expand() const;
  Rat eval(const std::vector<Rat>& point) const;
  std::string to_string() const;

  bool operator==(const DiffDenom&) const = default;

private:
  int nvars_;
  std::vector<int> exps_;
};

// Rational function num / prod (x_b - x_a)^e. Not automatically reduced;
// reduce() cancels any difference factors that divide the numerator.
class RatFun {
public:
  RatFun() = default;
  explicit RatFun(int nvars) : num_(Poly::zero(nvars)), den_(nvars) {}
  RatFun(Poly num, DiffDenom den);
  static RatFun from_poly(Poly p);
  // c / prod (x_i - x_j)^k for the given (i, j, k) triples; factors are
  // normalised to (x_b - x_a) with a < b, folding signs into the coefficient.
  static RatFun simple(int nvars, const Rat& c,
                       const std::vector<std::array<int, 3>>& factors);

  int nvars() const { return num_.nvars(); }
  const Poly& num() const { return num_; }
  const DiffDenom& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator*(const RatFun& o) const;
  RatFun operator-() const;
  RatFun& operator+=(const RatFun& o);
  RatFun scaled(const Rat& c) const;

  RatFun derivative(int var) const;
  void reduce();
  Rat eval(const std::vector<Rat>& point) const;
  std::string to_string() const;

private:
  Poly num_;
  DiffDenom den_;
};

// A sum of rational functions kept grouped by denominator so that additions
// within a group are plain polynomial additions. The deterministic combined
// form provides the exact zero test.
class FractionSum {
public:
  FractionSum() = default;
  explicit FractionSum(int nvars) : nvars_(nvars) {}

  int nvars() const { return nvars_; }
  bool empty() const { return groups_.empty(); }
  std::size_t group_count() const { return groups_.size(); }
  const std::map<std::vector<int>, Poly>& groups() const { return groups_; }

  void add(const RatFun& f);
  void add(const FractionSum& o);
  void add_poly(const Poly& p);

  FractionSum scaled(const Rat& c) const;
  FractionSum times(const RatFun& f) const;
  FractionSum derivative(int var) const;

  // Fold all groups over the least common denominator.
  RatFun combine() const;
  bool is_zero() const;
  Rat eval(const std::vector<Rat>& point) const;

private:
  int nvars_ = 0;
  std::map<std::vector<int>, Poly> groups_;
};

}  // namespace w3b
