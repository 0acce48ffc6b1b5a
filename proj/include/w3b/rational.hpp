#pragma once
#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace w3b {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();  // mpq comparisons assume canonical form
  return q;
}

inline Rat pow_rat(const Rat& base, long e) {
  if (e == 0) return 1;
  Rat b = e > 0 ? base : Rat(1) / base;
  unsigned long n = e > 0 ? e : -e;
  Rat out = 1;
  while (n) {
    if (n & 1) out *= b;
    b *= b;
    n >>= 1;
  }
  return out;
}

inline std::string to_string(const Rat& q) { return q.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

// Deterministic splitmix64-based stream of random rationals with numerator and
// denominator bounded by 1000 in absolute value, as used by the seeded
// verification commands.
class RatStream {
public:
  explicit RatStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  Rat next_rational() {
    long num = static_cast<long>(next_below(2001)) - 1000;  // [-1000, 1000]
    long den = static_cast<long>(next_below(1000)) + 1;     // [1, 1000]
    return rat(num, den);
  }

  // A strictly increasing tuple of n distinct rationals, suitable as an
  // evaluation point with all coordinates distinct.
  std::vector<Rat> next_point(int n) {
    std::vector<Rat> xs;
    while (static_cast<int>(xs.size()) < n) {
      Rat q = next_rational();
      bool dup = false;
      for (const Rat& x : xs)
        if (x == q) dup = true;
      if (!dup) xs.push_back(q);
    }
    std::sort(xs.begin(), xs.end());
    return xs;
  }

private:
  std::uint64_t state_;
};

}  // namespace w3b
