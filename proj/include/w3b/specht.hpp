#pragma once
#include <vector>

#include "w3b/combinatorics.hpp"
#include "w3b/poly.hpp"

namespace w3b {

// Product of pairwise differences prod_{i<j} (x_{v_i} - x_{v_j}) for a tuple
// of 1-based variable indices. Repeated indices give the zero polynomial.
Poly vandermonde(const std::vector<int>& v, int nvars);

// Specht polynomial of a filling: the product over columns of the Vandermonde
// of the column read bottom to top.
Poly specht(const Filling& f, int nvars);
inline Poly specht(const Filling& f) { return specht(f, f.max_entry()); }

// The same polynomial computed monomial by monomial: the signed sum over all
// per-column permutations of the column entries, each contributing the
// monomial with exponents r^{U}(v) - s_v. Requires distinct entries in each
// column.
Poly specht_expanded(const Filling& f, int nvars);
inline Poly specht_expanded(const Filling& f) { return specht_expanded(f, f.max_entry()); }

// Substitute x_v := y_k for every v in the k-th group of consecutive
// variables determined by the content word (group k has content[k] members),
// producing a polynomial in d = content.size() variables.
Poly eval_identify(const Poly& p, const std::vector<int>& content);

// Permutation utilities for the group-algebra action. Permutations are
// one-line words perm[i] = sigma(i+1), 1-based values.
int permutation_sign(const std::vector<int>& perm);
// sigma acting on variables: x_i -> x_{sigma(i)}.
Poly permute_variables(const Poly& p, const std::vector<int>& perm);

struct GroupAlgebraTerm {
  Rat coeff;
  std::vector<int> perm;
};

// Apply sum_g coeff_g * g to P, optionally twisting each term by sgn(g).
Poly apply_group_algebra(const std::vector<GroupAlgebraTerm>& elem, const Poly& p,
                         bool signed_action);

// All permutations of 1..n in lexicographic order.
std::vector<std::vector<int>> all_permutations(int n);

// Dimension of the rational span of a family of polynomials.
int rank_of(const std::vector<Poly>& polys);

}  // namespace w3b
