#include "w3b/blocks.hpp"

#include <algorithm>

#include "w3b/error.hpp"

namespace w3b {

CftParams params_from_beta(const Rat& beta) {
  require(beta != 0, Err::ZeroBeta, "beta must be nonzero");
  const Rat gap = beta - Rat(1) / beta;
  CftParams p;
  p.beta = beta;
  p.c = Rat(2) - Rat(24) * gap * gap;
  p.h = Rat(4) * beta * beta / Rat(3) - Rat(1);
  return p;
}

ExponentMatrix::ExponentMatrix(Signature sig, std::vector<std::vector<Rat>> alpha)
    : sig_(std::move(sig)), alpha_(std::move(alpha)) {
  const int d = sig_.d();
  require(static_cast<int>(alpha_.size()) == d, Err::DegreeMismatch,
          "exponent matrix size must match the signature");
  for (int i = 0; i < d; ++i) {
    require(static_cast<int>(alpha_[i].size()) == d, Err::DegreeMismatch,
            "exponent matrix must be square");
    for (Rat& v : alpha_[i]) v.canonicalize();  // tolerate caller-built fractions
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Rat three = Rat(3) * alpha_[i][j];
      require(three.get_den() == 1, Err::BadInput,
              "exponents must be integer multiples of 1/3");
      require(alpha_[i][j] == alpha_[j][i], Err::BadInput,
              "exponent matrix must be symmetric");
    }
    const Rat expected = -Rat(sig_.s[i] * sig_.s[i], 3);
    require(alpha_[i][i] == expected, Err::BadInput,
            "diagonal must hold -s_i^2/3");
  }
}

const Rat& ExponentMatrix::at(int i, int j) const {
  require(i >= 1 && i <= points() && j >= 1 && j <= points(),
          Err::IndexOutOfRange, "exponent index out of range");
  return alpha_[i - 1][j - 1];
}

Rat ExponentMatrix::row_sum(int j) const {
  require(j >= 1 && j <= points(), Err::IndexOutOfRange,
          "exponent index out of range");
  Rat total = 0;
  for (const Rat& a : alpha_[j - 1]) total += a;
  return total;
}

Rat ExponentMatrix::pair_sum() const {
  Rat total = 0;
  for (int i = 0; i < points(); ++i)
    for (int j = i + 1; j < points(); ++j) total += alpha_[i][j];
  return total;
}

Rat ExponentMatrix::eval_cubed(const std::vector<Rat>& x) const {
  const int d = points();
  require(static_cast<int>(x.size()) == d, Err::DegreeMismatch,
          "evaluation point arity mismatch");
  Rat value = 1;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const Rat diff = x[j] - x[i];
      require(diff != 0, Err::CollidingPoints, "points must be distinct");
      Rat three = Rat(3) * alpha_[i][j];
      three.canonicalize();
      value *= pow_rat(diff, three.get_num().get_si());
    }
  }
  return value;
}

bool ExponentMatrix::operator==(const ExponentMatrix& other) const {
  return sig_ == other.sig_ && alpha_ == other.alpha_;
}

ExponentMatrix block_exponents(const Filling& t, const Signature& sig,
                               bool allow_nonrectangular) {
  require(t.is_row_strict(), Err::NotRowStrict,
          "block tableaux must be row-strict");
  const int d = sig.d();
  require(t.content() == sig.s, Err::ShapeContentMismatch,
          "tableau content must equal the signature");
  if (!allow_nonrectangular) {
    require(t.shape() == sig.pi(), Err::ShapeContentMismatch,
            "tableau shape must be the rectangular (n/3)^3");
  }

  // psi(i,j): unordered pairs of boxes in a common row holding i and j.
  std::vector<std::vector<int>> psi(d, std::vector<int>(d, 0));
  for (const auto& row : t.rows()) {
    for (std::size_t u = 0; u < row.size(); ++u) {
      for (std::size_t v = u + 1; v < row.size(); ++v) {
        const int a = row[u] - 1, b = row[v] - 1;
        psi[a][b] += 1;
        psi[b][a] += 1;
      }
    }
  }

  std::vector<std::vector<Rat>> alpha(d, std::vector<Rat>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      alpha[i][j] = (i == j) ? Rat(-Rat(sig.s[i] * sig.s[i], 3))
                             : Rat(Rat(psi[i][j]) - Rat(sig.s[i] * sig.s[j], 3));
    }
  }
  return ExponentMatrix(sig, std::move(alpha));
}

ExponentMatrix second_representation(const Filling& t, const Signature& sig,
                                     Reading reading) {
  const int d = sig.d();
  require(t.content() == sig.s, Err::ShapeContentMismatch,
          "tableau content must equal the signature");
  const Filling lifted = standardize(t, reading);
  const Signature unit = make_signature(std::vector<int>(sig.n, 1));
  const ExponentMatrix fine = block_exponents(lifted, unit);

  // Group q of consecutive lifted labels realises the q-th point.
  std::vector<std::vector<Rat>> alpha(d, std::vector<Rat>(d));
  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j <= d; ++j) {
      if (i == j) {
        alpha[i - 1][j - 1] = -Rat(sig.s[i - 1] * sig.s[i - 1], 3);
        // The intra-group exponents are cancelled exactly by the lifted
        // prefactor (x_w - x_v)^{1/3}; the construction only makes sense
        // because each pair of same-point labels lands in distinct rows.
        for (int v = sig.p[i - 1]; v < sig.p[i]; ++v) {
          for (int w = v + 1; w < sig.p[i]; ++w) {
            require(fine.at(v, w) + Rat(1, 3) == 0, Err::BadInput,
                    "same-point labels must sit in distinct rows");
          }
        }
        continue;
      }
      Rat sum = 0;
      for (int v = sig.p[i - 1]; v < sig.p[i]; ++v)
        for (int w = sig.p[j - 1]; w < sig.p[j]; ++w) sum += fine.at(v, w);
      alpha[i - 1][j - 1] = sum;
    }
  }
  return ExponentMatrix(sig, std::move(alpha));
}

PoleSum log_derivative(const ExponentMatrix& alpha, int i) {
  const int d = alpha.points();
  require(i >= 1 && i <= d, Err::IndexOutOfRange, "point index out of range");
  PoleSum sum(d);
  for (int k = 1; k <= d; ++k) {
    if (k == i) continue;
    sum += PoleSum::simple_pole(d, alpha.at(i, k), i - 1, k - 1, 1);
  }
  return sum;
}

PoleSum twisted_derivative(const PoleSum& r, int i, const ExponentMatrix& alpha) {
  return r.derivative(i - 1) + r * log_derivative(alpha, i);
}

bool covariance_check(const ExponentMatrix& alpha,
                      const std::array<Rat, 4>& moebius,
                      const std::vector<std::vector<Rat>>& samples) {
  const Rat &ma = moebius[0], &mb = moebius[1], &mc = moebius[2], &md = moebius[3];
  const Rat det = ma * md - mb * mc;
  require(det != 0, Err::DegenerateMobius, "moebius map must be invertible");
  const int d = alpha.points();

  for (const std::vector<Rat>& x : samples) {
    require(static_cast<int>(x.size()) == d, Err::BadInput,
            "sample arity must match the block");
    for (int i = 0; i + 1 < d; ++i) {
      require(x[i] < x[i + 1], Err::BadInput,
              "sample points must be strictly increasing");
    }
    std::vector<Rat> image(d);
    Rat jacobian = 1;
    for (int i = 0; i < d; ++i) {
      const Rat denom = mc * x[i] + md;
      require(denom != 0, Err::BadInput, "sample point hits the moebius pole");
      image[i] = (ma * x[i] + mb) / denom;
      jacobian *= det / (denom * denom);
    }
    for (int i = 0; i + 1 < d; ++i) {
      require(image[i] < image[i + 1], Err::BadInput,
              "moebius map must be increasing on the sample");
    }
    // Per-pair sign consistency: each difference keeps its sign, so the
    // real cube roots underlying the identity are aligned.
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        const bool flipped = (image[j] - image[i] > 0) != (x[j] - x[i] > 0);
        if (flipped) return false;
      }
    }
    if (alpha.eval_cubed(image) * jacobian != alpha.eval_cubed(x)) return false;
  }
  return true;
}

namespace {

void erase_value(std::vector<int>& row, int value) {
  auto it = std::find(row.begin(), row.end(), value);
  if (it != row.end()) row.erase(it);
}

bool contains(const std::vector<int>& row, int value) {
  return std::find(row.begin(), row.end(), value) != row.end();
}

}  // namespace

BoundaryLimit boundary_limit(const Filling& t, const Signature& sig, int j) {
  const int d = sig.d();
  require(j >= 1 && j <= d - 1, Err::IndexOutOfRange,
          "collision index must name an adjacent pair");
  const ExponentMatrix alpha = block_exponents(t, sig);
  const int sj = sig.s[j - 1], sj1 = sig.s[j];

  BoundaryLimit out;
  out.exponent = (sj == sj1) ? Rat(1, 3) : Rat(2, 3);
  const Rat collision = alpha.at(j, j + 1) + out.exponent;
  require(collision == 0 || collision == 1, Err::BadInput,
          "collision exponent must be 0 or 1");
  if (collision == 1) {
    out.zero = true;
    return out;
  }

  // Merged signature: 1+1 -> 2, 2+2 -> 1 (a full column of three boxes is
  // stripped), 1+2 -> the point disappears entirely.
  const int merged = sj + sj1;
  const int snew = merged == 2 ? 2 : (merged == 4 ? 1 : 0);
  std::vector<int> s2;
  for (int i = 1; i <= d; ++i) {
    if (i == j + 1) continue;
    if (i == j) {
      if (snew != 0) s2.push_back(snew);
      continue;
    }
    s2.push_back(sig.s[i - 1]);
  }

  // Exponents of the limit block: groups of colliding points merge by
  // summing their rows/columns; when the merged point vanishes its summed
  // exponents are identically zero.
  std::vector<std::vector<int>> groups;
  for (int i = 1; i <= d; ++i) {
    if (i == j + 1) continue;
    if (i == j) {
      if (snew != 0) groups.push_back({j, j + 1});
      continue;
    }
    groups.push_back({i});
  }
  if (snew == 0) {
    for (int k = 1; k <= d; ++k) {
      if (k == j || k == j + 1) continue;
      require(alpha.at(j, k) + alpha.at(j + 1, k) == 0, Err::BadInput,
              "vanishing point must decouple from the survivors");
    }
  }

  if (!s2.empty()) {
    const Signature sig2 = make_signature(s2);
    const int d2 = sig2.d();
    std::vector<std::vector<Rat>> merged_alpha(d2, std::vector<Rat>(d2));
    for (int u = 0; u < d2; ++u) {
      for (int v = 0; v < d2; ++v) {
        if (u == v) {
          merged_alpha[u][v] = -Rat(sig2.s[u] * sig2.s[u], 3);
          continue;
        }
        Rat sum = 0;
        for (int a : groups[u])
          for (int b : groups[v]) sum += alpha.at(a, b);
        merged_alpha[u][v] = sum;
      }
    }
    out.limit = ExponentMatrix(sig2, std::move(merged_alpha));
  }

  // The merged tableau: rows are value multisets, so surgery is performed
  // on those multisets and each row is re-sorted at the end.
  std::vector<std::vector<int>> rows = t.rows();
  int shift = 1;
  if (sj == 1 && sj1 == 1) {
    for (auto& row : rows)
      for (int& v : row)
        if (v == j + 1) v = j;
  } else if (sj == 2 && sj1 == 2) {
    int shared = -1;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (contains(rows[r], j) && contains(rows[r], j + 1)) {
        require(shared < 0, Err::BadInput, "labels may share only one row here");
        shared = static_cast<int>(r);
      }
    }
    require(shared >= 0, Err::BadInput, "labels must share exactly one row here");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) == shared) {
        erase_value(rows[r], j + 1);
      } else {
        erase_value(rows[r], j);
        erase_value(rows[r], j + 1);
      }
    }
  } else {
    for (auto& row : rows) {
      erase_value(row, j);
      erase_value(row, j + 1);
    }
    shift = 2;
  }
  for (auto& row : rows)
    for (int& v : row)
      if (v > j + 1) v -= shift;
  for (auto& row : rows) std::sort(row.begin(), row.end());
  while (!rows.empty() && rows.back().empty()) rows.pop_back();

  if (!rows.empty()) {
    std::vector<int> lengths;
    lengths.reserve(rows.size());
    for (const auto& row : rows) lengths.push_back(static_cast<int>(row.size()));
    Filling tprime(Partition(lengths), rows);
    require(tprime.is_row_strict(), Err::BadInput,
            "merged tableau must stay row-strict");
    out.tableau = std::move(tprime);
  }
  return out;
}

}  // namespace w3b
