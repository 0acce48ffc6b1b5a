#include "w3b/polesum.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <tuple>
#include <utility>

#include "w3b/error.hpp"

namespace w3b {

namespace {

// Packed-monomial product with per-variable overflow guard.
std::uint64_t checked_key_mul(std::uint64_t a, std::uint64_t b, int nvars) {
  for (int v = 0; v < nvars; ++v) {
    require(exponent_of(a, v) + exponent_of(b, v) <= static_cast<int>(kExpMask),
            Err::TooLarge, "monomial exponent overflow in pole sum");
  }
  return a + b;
}

std::uint64_t monomial_key(int var, int power) {
  std::vector<int> e(kMaxVars, 0);
  e[var] = power;
  return pack_exponents(e);
}

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

PoleSum::PoleSum(int nvars) : nvars_(nvars) {
  require(nvars >= 0 && nvars <= kMaxVars, Err::TooLarge,
          "pole sum supports at most 9 variables");
}

PoleSum PoleSum::constant(int nvars, const Rat& c) {
  PoleSum s(nvars);
  s.add_term(0, PolePack{0, 0}, c);
  return s;
}

PoleSum PoleSum::simple_pole(int nvars, const Rat& c, int u, int v, int k) {
  return constant(nvars, c).times_pole(u, v, k);
}

int PoleSum::pole_exponent(const PolePack& pack, int pair) {
  return static_cast<int>(
      (pack[pair / kPairsPerWord] >> (kPoleBits * (pair % kPairsPerWord))) & kPoleMask);
}

void PoleSum::pole_add(PolePack& pack, int pair, int delta) {
  const int now = pole_exponent(pack, pair) + delta;
  require(now >= 0 && now <= static_cast<int>(kPoleMask), Err::TooLarge,
          "pole exponent out of range in pole sum");
  pack[pair / kPairsPerWord] +=
      static_cast<std::uint64_t>(delta) << (kPoleBits * (pair % kPairsPerWord));
}

PoleSum& PoleSum::add_term(std::uint64_t mono, const PolePack& pole, const Rat& coeff) {
  if (coeff == 0) return *this;
  auto [it, inserted] = terms_.try_emplace(Key{mono, pole}, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

PoleSum& PoleSum::operator+=(const PoleSum& other) {
  require(nvars_ == other.nvars_, Err::DegreeMismatch, "pole sum arity mismatch");
  for (const auto& [key, c] : other.terms_) add_term(key.first, key.second, c);
  return *this;
}

PoleSum PoleSum::operator+(const PoleSum& other) const {
  PoleSum r = *this;
  r += other;
  return r;
}

PoleSum PoleSum::operator-(const PoleSum& other) const { return *this + (-other); }

PoleSum PoleSum::operator-() const { return scaled(Rat(-1)); }

PoleSum PoleSum::operator*(const PoleSum& other) const {
  require(nvars_ == other.nvars_, Err::DegreeMismatch, "pole sum arity mismatch");
  PoleSum r(nvars_);
  const int pairs = nvars_ * (nvars_ - 1) / 2;
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : other.terms_) {
      const std::uint64_t mono = checked_key_mul(ka.first, kb.first, nvars_);
      PolePack pole = ka.second;
      for (int p = 0; p < pairs; ++p) {
        const int e = pole_exponent(kb.second, p);
        if (e > 0) pole_add(pole, p, e);
      }
      r.add_term(mono, pole, ca * cb);
    }
  }
  return r;
}

bool PoleSum::operator==(const PoleSum& other) const {
  return nvars_ == other.nvars_ && terms_ == other.terms_;
}

PoleSum PoleSum::scaled(const Rat& c) const {
  PoleSum r(nvars_);
  if (c == 0) return r;
  for (const auto& [key, coeff] : terms_) r.terms_.emplace(key, coeff * c);
  return r;
}

PoleSum PoleSum::times_monomial(int var, int power) const {
  require(var >= 0 && var < nvars_, Err::IndexOutOfRange, "variable out of range");
  if (power == 0) return *this;
  PoleSum r(nvars_);
  const std::uint64_t shift = monomial_key(var, power);
  for (const auto& [key, c] : terms_)
    r.add_term(checked_key_mul(key.first, shift, nvars_), key.second, c);
  return r;
}

PoleSum PoleSum::times_pole(int u, int v, int k) const {
  require(u >= 0 && u < nvars_ && v >= 0 && v < nvars_ && u != v,
          Err::IndexOutOfRange, "pole factor needs two distinct variables");
  const int a = std::min(u, v), b = std::max(u, v);
  const int pair = DiffDenom::pair_index(nvars_, a, b);
  // The stored factor is (x_b - x_a); when the caller asked for
  // 1/(x_a - x_b)^k the sign (-1)^k moves into the coefficient.
  const bool flip = (u == a) && (k % 2 == 1);
  PoleSum r(nvars_);
  for (const auto& [key, c] : terms_) {
    PolePack pole = key.second;
    pole_add(pole, pair, k);
    r.add_term(key.first, pole, flip ? Rat(-c) : c);
  }
  return r;
}

PoleSum PoleSum::derivative(int var) const {
  require(var >= 0 && var < nvars_, Err::IndexOutOfRange, "variable out of range");
  PoleSum r(nvars_);
  for (const auto& [key, c] : terms_) {
    const int k = exponent_of(key.first, var);
    if (k > 0) {
      std::vector<int> e = unpack_exponents(key.first, nvars_);
      e[var] -= 1;
      r.add_term(pack_exponents(e), key.second, c * k);
    }
    for (int a = 0; a < nvars_; ++a) {
      for (int b = a + 1; b < nvars_; ++b) {
        if (a != var && b != var) continue;
        const int p = DiffDenom::pair_index(nvars_, a, b);
        const int e = pole_exponent(key.second, p);
        if (e == 0) continue;
        PolePack pole = key.second;
        pole_add(pole, p, 1);
        const Rat factor = (b == var) ? Rat(-e) : Rat(e);
        r.add_term(key.first, pole, c * factor);
      }
    }
  }
  return r;
}

Rat PoleSum::eval(const std::vector<Rat>& x) const {
  require(static_cast<int>(x.size()) == nvars_, Err::DegreeMismatch,
          "evaluation point arity mismatch");
  Rat total = 0;
  for (const auto& [key, c] : terms_) {
    Rat value = c;
    for (int v = 0; v < nvars_; ++v) {
      const int e = exponent_of(key.first, v);
      if (e > 0) value *= pow_rat(x[v], e);
    }
    for (int a = 0; a < nvars_; ++a) {
      for (int b = a + 1; b < nvars_; ++b) {
        const int e = pole_exponent(key.second, DiffDenom::pair_index(nvars_, a, b));
        if (e == 0) continue;
        const Rat diff = x[b] - x[a];
        require(diff != 0, Err::CollidingPoints, "evaluation point on a pole");
        value /= pow_rat(diff, e);
      }
    }
    total += value;
  }
  return total;
}

bool PoleSum::is_zero() const {
  if (terms_.empty()) return true;

  // Highest variable occurring in any monomial or pole factor.
  int t = -1;
  for (const auto& [key, c] : terms_) {
    for (int v = nvars_ - 1; v > t; --v) {
      if (exponent_of(key.first, v) > 0) {
        t = v;
        break;
      }
    }
    for (int a = 0; a < nvars_; ++a) {
      for (int b = std::max(a + 1, t + 1); b < nvars_; ++b) {
        if (pole_exponent(key.second, DiffDenom::pair_index(nvars_, a, b)) > 0) t = b;
      }
    }
  }
  if (t < 0) return false;  // a nonzero constant (zero coefficients are never stored)

  // Rewrite until every term is either free of x_t or a pure single-pole
  // term in x_t, then bucket by partial-fraction shape.  Uniqueness of the
  // partial-fraction decomposition in x_t over the field of rational
  // functions in the remaining variables makes the buckets independent.
  std::map<int, PoleSum> poly_bucket;                  // degree in x_t -> coefficient
  std::map<std::pair<int, int>, PoleSum> pole_bucket;  // (pole var, order) -> coefficient
  std::deque<std::tuple<std::uint64_t, PolePack, Rat>> queue;
  for (const auto& [key, c] : terms_) queue.emplace_back(key.first, key.second, c);

  while (!queue.empty()) {
    auto [mono, pole, c] = queue.front();
    queue.pop_front();

    std::vector<std::pair<int, int>> t_poles;  // (other var, exponent)
    for (int a = 0; a < t; ++a) {
      const int e = pole_exponent(pole, DiffDenom::pair_index(nvars_, a, t));
      if (e > 0) t_poles.emplace_back(a, e);
    }

    if (t_poles.size() >= 2) {
      // 1/((x_t-x_a)(x_t-x_b)) = [1/(x_t-x_a) - 1/(x_t-x_b)] * 1/(x_a-x_b)
      // with a < b, and 1/(x_a-x_b) = -1/(x_b-x_a).
      const int a = t_poles[0].first, b = t_poles[1].first;
      const int ab = DiffDenom::pair_index(nvars_, a, b);
      PolePack first = pole;
      pole_add(first, DiffDenom::pair_index(nvars_, b, t), -1);
      pole_add(first, ab, 1);
      queue.emplace_back(mono, first, -c);
      PolePack second = pole;
      pole_add(second, DiffDenom::pair_index(nvars_, a, t), -1);
      pole_add(second, ab, 1);
      queue.emplace_back(mono, second, c);
      continue;
    }

    const int k = exponent_of(mono, t);
    if (t_poles.size() == 1 && k > 0) {
      // Shift the monomial onto the pole: x_t^k = sum_j C(k,j) x_a^{k-j} (x_t-x_a)^j.
      const int a = t_poles[0].first, m = t_poles[0].second;
      std::vector<int> base = unpack_exponents(mono, nvars_);
      base[t] = 0;
      for (int j = 0; j <= k; ++j) {
        const Rat cj = c * Rat(binomial(k, j));
        if (j < m) {
          std::vector<int> e = base;
          e[a] += k - j;
          PolePack reduced = pole;
          pole_add(reduced, DiffDenom::pair_index(nvars_, a, t), -j);
          queue.emplace_back(pack_exponents(e), reduced, cj);
        } else {
          // Positive power (x_t-x_a)^{j-m} expands into monomials.
          PolePack cleared = pole;
          pole_add(cleared, DiffDenom::pair_index(nvars_, a, t), -m);
          for (int i = 0; i <= j - m; ++i) {
            std::vector<int> e = base;
            e[t] = i;
            e[a] += (k - j) + (j - m - i);
            const Rat sign = ((j - m - i) % 2 == 0) ? Rat(1) : Rat(-1);
            queue.emplace_back(pack_exponents(e), cleared,
                               cj * Rat(binomial(j - m, i)) * sign);
          }
        }
      }
      continue;
    }

    if (t_poles.size() == 1) {
      const int a = t_poles[0].first, m = t_poles[0].second;
      PolePack rest = pole;
      pole_add(rest, DiffDenom::pair_index(nvars_, a, t), -m);
      auto [it, ignored] = pole_bucket.try_emplace(std::make_pair(a, m), nvars_);
      it->second.add_term(mono, rest, c);
      continue;
    }

    // No x_t poles: strip the monomial power of x_t.
    std::vector<int> e = unpack_exponents(mono, nvars_);
    e[t] = 0;
    auto [it, ignored] = poly_bucket.try_emplace(k, nvars_);
    it->second.add_term(pack_exponents(e), pole, c);
  }

  for (const auto& [deg, part] : poly_bucket)
    if (!part.is_zero()) return false;
  for (const auto& [where, part] : pole_bucket)
    if (!part.is_zero()) return false;
  return true;
}

bool PoleSum::vanishes_at_samples(RatStream& rng, int trials) const {
  for (int trial = 0; trial < trials; ++trial) {
    const std::vector<Rat> x = rng.next_point(nvars_);
    if (eval(x) != 0) return false;
  }
  return true;
}

DiffDenom PoleSum::pole_lcm() const {
  DiffDenom lcm(nvars_);
  for (const auto& [key, c] : terms_) {
    for (int a = 0; a < nvars_; ++a) {
      for (int b = a + 1; b < nvars_; ++b) {
        const int e = pole_exponent(key.second, DiffDenom::pair_index(nvars_, a, b));
        const int have = lcm.exp(a, b);
        if (e > have) lcm.add(a, b, e - have);
      }
    }
  }
  return lcm;
}

Poly PoleSum::cleared_numerator(bool assert_cubic_bound) const {
  const DiffDenom lcm = pole_lcm();
  if (assert_cubic_bound) {
    for (int a = 0; a < nvars_; ++a) {
      for (int b = a + 1; b < nvars_; ++b) {
        require(lcm.exp(a, b) <= 3, Err::TooLarge,
                "common denominator exceeds the cubic difference-product bound");
      }
    }
  }
  Poly numerator = Poly::zero(nvars_);
  std::map<PolePack, Poly> cache;
  for (const auto& [key, c] : terms_) {
    auto it = cache.find(key.second);
    if (it == cache.end()) {
      DiffDenom den(nvars_);
      for (int a = 0; a < nvars_; ++a) {
        for (int b = a + 1; b < nvars_; ++b) {
          const int e = pole_exponent(key.second, DiffDenom::pair_index(nvars_, a, b));
          if (e > 0) den.add(a, b, e);
        }
      }
      it = cache.emplace(key.second, (lcm / den).expand()).first;
    }
    numerator += it->second.mul_monomial(key.first, c);
  }
  return numerator;
}

std::string PoleSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << w3b::to_string(c) << ")";
    for (int v = 0; v < nvars_; ++v) {
      const int e = exponent_of(key.first, v);
      if (e == 0) continue;
      out << "*x" << (v + 1);
      if (e > 1) out << "^" << e;
    }
    DiffDenom den(nvars_);
    for (int a = 0; a < nvars_; ++a)
      for (int b = a + 1; b < nvars_; ++b) {
        const int e = pole_exponent(key.second, DiffDenom::pair_index(nvars_, a, b));
        if (e > 0) den.add(a, b, e);
      }
    if (!den.is_one()) out << "/[" << den.to_string() << "]";
  }
  return out.str();
}

}  // namespace w3b
