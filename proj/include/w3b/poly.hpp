#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "w3b/error.hpp"
#include "w3b/rational.hpp"

namespace w3b {

// Multivariate polynomials over the rationals in at most kMaxVars variables.
// A monomial's exponent vector is packed into a single 64-bit key, seven bits
// per variable with x1 occupying the most significant field, so that unsigned
// comparison of keys is lexicographic comparison of exponent sequences and
// multiplication of monomials is integer addition of keys.
inline constexpr int kMaxVars = 9;
inline constexpr int kExpBits = 7;
inline constexpr std::uint64_t kExpMask = (1u << kExpBits) - 1;

inline std::uint64_t pack_exponents(const std::vector<int>& e) {
  require(static_cast<int>(e.size()) <= kMaxVars, Err::TooLarge,
          "monomials support at most 9 variables");
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    require(e[i] >= 0 && e[i] <= static_cast<int>(kExpMask), Err::TooLarge,
            "exponent out of range");
    key |= static_cast<std::uint64_t>(e[i]) << (kExpBits * (kMaxVars - 1 - i));
  }
  return key;
}

inline int exponent_of(std::uint64_t key, int var) {
  return static_cast<int>((key >> (kExpBits * (kMaxVars - 1 - var))) & kExpMask);
}

inline std::vector<int> unpack_exponents(std::uint64_t key, int nvars) {
  std::vector<int> e(nvars);
  for (int i = 0; i < nvars; ++i) e[i] = exponent_of(key, i);
  return e;
}

inline int key_degree(std::uint64_t key) {
  int d = 0;
  for (int i = 0; i < kMaxVars; ++i) d += static_cast<int>((key >> (kExpBits * i)) & kExpMask);
  return d;
}

class Poly {
public:
  struct Term {
    std::uint64_t key;
    Rat coeff;
    bool operator==(const Term& o) const { return key == o.key && coeff == o.coeff; }
  };

  Poly() : nvars_(0) {}
  explicit Poly(int nvars);

  static Poly zero(int nvars) { return Poly(nvars); }
  static Poly constant(int nvars, const Rat& c);
  static Poly variable(int nvars, int var);  // x_{var+1}, 0-based index
  static Poly monomial(int nvars, const std::vector<int>& exps, const Rat& c);
  // x_b - x_a (0-based indices).
  static Poly difference(int nvars, int b, int a);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  int degree() const;           // total degree, -1 for the zero polynomial
  int degree_in(int var) const; // max exponent of one variable

  Rat coeff(const std::vector<int>& exps) const;
  // Term with the lexicographically smallest exponent sequence.
  const Term& lex_smallest_term() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rat& c);
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Poly mul_serial(const Poly& o) const;
  Poly mul_parallel(const Poly& o) const;
  Poly mul_monomial(std::uint64_t key, const Rat& c) const;

  Poly derivative(int var) const;
  Rat eval(const std::vector<Rat>& point) const;
  // Substitute x_{from} := x_{to} (0-based), used as the remainder of
  // division by (x_{from} - x_{to}).
  Poly substitute_var(int from, int to) const;

  // Exact division by (x_b - x_a), a != b, via synthetic division in x_b.
  // Fails with DegreeMismatch if the difference does not divide.
  Poly divide_by_difference(int b, int a) const;
  bool divisible_by_difference(int b, int a) const;

  // ASCII form with terms in graded lexicographic order, largest first.
  std::string serialize() const;
  static Poly parse(const std::string& text, int nvars);

  // Construction helper: accumulate arbitrary (key, coeff) pairs, then fix up.
  void add_raw(std::uint64_t key, const Rat& c) { terms_.push_back({key, c}); }
  void canonicalize();

private:
  int nvars_;
  std::vector<Term> terms_;  // sorted by key ascending, no zero coefficients
};

// Global switch consulted by operator*; tests compare both paths explicitly.
void set_parallel_poly_mul(bool enabled);
bool parallel_poly_mul();

}  // namespace w3b
