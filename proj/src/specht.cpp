#include "w3b/specht.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "w3b/linalg.hpp"

namespace w3b {

Poly vandermonde(const std::vector<int>& v, int nvars) {
  Poly out = Poly::constant(nvars, 1);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] == v[j]) return Poly::zero(nvars);
      out = out * Poly::difference(nvars, v[i] - 1, v[j] - 1);
    }
  return out;
}

namespace {
std::vector<std::vector<int>> columns_of(const Filling& f) {
  std::vector<std::vector<int>> cols(f.shape().cols());
  for (int c = 0; c < f.shape().cols(); ++c)
    for (int r = 0; r < f.rows_count(); ++r)
      if (c < static_cast<int>(f.rows()[r].size())) cols[c].push_back(f.rows()[r][c]);
  return cols;
}
}  // namespace

Poly specht(const Filling& f, int nvars) {
  require(f.max_entry() <= nvars, Err::IndexOutOfRange, "filling entry exceeds variable count");
  Poly out = Poly::constant(nvars, 1);
  for (const std::vector<int>& col : columns_of(f)) {
    std::vector<int> bottom_up(col.rbegin(), col.rend());
    out = out * vandermonde(bottom_up, nvars);
  }
  return out;
}

Poly specht_expanded(const Filling& f, int nvars) {
  require(f.max_entry() <= nvars, Err::IndexOutOfRange, "filling entry exceeds variable count");
  std::vector<std::vector<int>> cols = columns_of(f);
  for (const auto& col : cols) {
    std::vector<int> s = col;
    std::sort(s.begin(), s.end());
    require(std::adjacent_find(s.begin(), s.end()) == s.end(), Err::RepeatedIndex,
            "specht_expanded needs distinct entries in each column");
  }
  std::vector<int> mult(nvars, 0);
  for (const auto& col : cols)
    for (int v : col) ++mult[v - 1];

  // Iterate over the product of per-column permutation groups; each choice
  // contributes sign * prod_v x_v^{r(v) - s_v} where r sums the row indices
  // of v in the permuted filling.
  Poly out(nvars);
  std::vector<std::vector<std::vector<int>>> perms;  // per column: list of arrangements
  std::vector<std::vector<int>> signs;
  for (const auto& col : cols) {
    std::vector<int> arr = col;
    std::sort(arr.begin(), arr.end());
    std::vector<std::vector<int>> ps;
    std::vector<int> ss;
    do {
      ps.push_back(arr);
      // Sign relative to the original column order: count inversions of the
      // permutation taking col to arr.
      std::vector<int> idx(col.size());
      for (std::size_t i = 0; i < arr.size(); ++i)
        idx[i] = static_cast<int>(std::find(col.begin(), col.end(), arr[i]) - col.begin());
      int inv = 0;
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j)
          if (idx[i] > idx[j]) ++inv;
      ss.push_back(inv % 2 ? -1 : 1);
    } while (std::next_permutation(arr.begin(), arr.end()));
    perms.push_back(std::move(ps));
    signs.push_back(std::move(ss));
  }
  std::vector<std::size_t> choice(cols.size(), 0);
  while (true) {
    int sign = 1;
    std::vector<int> rowsum(nvars, 0);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      sign *= signs[c][choice[c]];
      const std::vector<int>& arr = perms[c][choice[c]];
      for (std::size_t r = 0; r < arr.size(); ++r) rowsum[arr[r] - 1] += static_cast<int>(r) + 1;
    }
    std::vector<int> exps(nvars, 0);
    for (int v = 0; v < nvars; ++v) exps[v] = rowsum[v] - mult[v];
    out.add_raw(pack_exponents(exps), sign);
    // advance the mixed-radix counter
    std::size_t c = 0;
    while (c < cols.size()) {
      if (++choice[c] < perms[c].size()) break;
      choice[c] = 0;
      ++c;
    }
    if (c == cols.size()) break;
  }
  out.canonicalize();
  return out;
}

Poly eval_identify(const Poly& p, const std::vector<int>& content) {
  int d = static_cast<int>(content.size());
  int n = std::accumulate(content.begin(), content.end(), 0);
  require(p.nvars() == n, Err::DegreeMismatch,
          "polynomial variable count must equal the content weight");
  std::vector<int> group(n);
  int v = 0;
  for (int k = 0; k < d; ++k)
    for (int t = 0; t < content[k]; ++t) group[v++] = k;
  Poly out(d);
  for (const Poly::Term& t : p.terms()) {
    std::vector<int> e(d, 0);
    for (int i = 0; i < n; ++i) e[group[i]] += exponent_of(t.key, i);
    for (int k = 0; k < d; ++k)
      require(e[k] <= static_cast<int>(kExpMask), Err::TooLarge, "identified exponent too large");
    out.add_raw(pack_exponents(e), t.coeff);
  }
  out.canonicalize();
  return out;
}

int permutation_sign(const std::vector<int>& perm) {
  int inv = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

Poly permute_variables(const Poly& p, const std::vector<int>& perm) {
  require(static_cast<int>(perm.size()) == p.nvars(), Err::BadInput,
          "permutation length must equal the variable count");
  Poly out(p.nvars());
  for (const Poly::Term& t : p.terms()) {
    std::vector<int> e(p.nvars(), 0);
    for (int v = 0; v < p.nvars(); ++v) e[perm[v] - 1] = exponent_of(t.key, v);
    out.add_raw(pack_exponents(e), t.coeff);
  }
  out.canonicalize();
  return out;
}

Poly apply_group_algebra(const std::vector<GroupAlgebraTerm>& elem, const Poly& p,
                         bool signed_action) {
  Poly out(p.nvars());
  for (const GroupAlgebraTerm& t : elem) {
    Rat c = t.coeff;
    if (signed_action) c *= permutation_sign(t.perm);
    Poly q = permute_variables(p, t.perm);
    q *= c;
    out += q;
  }
  return out;
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

int rank_of(const std::vector<Poly>& polys) {
  // Collect the union of monomials, build the coefficient matrix with rows
  // cleared of denominators, and take the fraction-free rank.
  std::map<std::uint64_t, int> col;
  for (const Poly& p : polys)
    for (const Poly::Term& t : p.terms())
      if (!col.count(t.key)) {
        int next = static_cast<int>(col.size());
        col[t.key] = next;
      }
  if (col.empty()) return 0;
  std::vector<std::vector<Int>> m;
  for (const Poly& p : polys) {
    if (p.is_zero()) continue;
    Int l = 1;
    for (const Poly::Term& t : p.terms()) l = lcm(l, Int(t.coeff.get_den()));
    std::vector<Int> row(col.size(), 0);
    for (const Poly::Term& t : p.terms()) {
      Rat scaled = t.coeff * Rat(l);
      row[col[t.key]] = scaled.get_num();
    }
    m.push_back(std::move(row));
  }
  return bareiss_rank(m);
}

}  // namespace w3b
