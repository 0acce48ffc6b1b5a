#include "w3b/poly.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace w3b {

namespace {
std::atomic<bool> g_parallel_mul{true};
}

void set_parallel_poly_mul(bool enabled) { g_parallel_mul = enabled; }
bool parallel_poly_mul() { return g_parallel_mul; }

Poly::Poly(int nvars) : nvars_(nvars) {
  require(nvars >= 0 && nvars <= kMaxVars, Err::TooLarge,
          "polynomials support at most 9 variables");
}

Poly Poly::constant(int nvars, const Rat& c) {
  Poly p(nvars);
  if (c != 0) p.terms_.push_back({0, c});
  return p;
}

Poly Poly::variable(int nvars, int var) {
  require(var >= 0 && var < nvars, Err::IndexOutOfRange, "variable index out of range");
  std::vector<int> e(nvars, 0);
  e[var] = 1;
  return monomial(nvars, e, 1);
}

Poly Poly::monomial(int nvars, const std::vector<int>& exps, const Rat& c) {
  Poly p(nvars);
  require(static_cast<int>(exps.size()) == nvars, Err::BadInput, "exponent count mismatch");
  if (c != 0) p.terms_.push_back({pack_exponents(exps), c});
  return p;
}

Poly Poly::difference(int nvars, int b, int a) {
  require(a != b, Err::BadInput, "difference needs distinct variables");
  Poly p = variable(nvars, b);
  return p - variable(nvars, a);
}

int Poly::degree() const {
  int d = -1;
  for (const Term& t : terms_) d = std::max(d, key_degree(t.key));
  return d;
}

int Poly::degree_in(int var) const {
  int d = 0;
  for (const Term& t : terms_) d = std::max(d, exponent_of(t.key, var));
  return d;
}

Rat Poly::coeff(const std::vector<int>& exps) const {
  std::uint64_t key = pack_exponents(exps);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const Term& t, std::uint64_t k) { return t.key < k; });
  if (it != terms_.end() && it->key == key) return it->coeff;
  return 0;
}

const Poly::Term& Poly::lex_smallest_term() const {
  require(!terms_.empty(), Err::BadInput, "zero polynomial has no terms");
  return terms_.front();
}

void Poly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.key < b.key; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (Term& t : terms_) {
    if (!out.empty() && out.back().key == t.key)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.coeff == 0; }),
            out.end());
  terms_ = std::move(out);
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (Term& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  require(nvars_ == o.nvars_, Err::BadInput, "variable count mismatch");
  Poly out(nvars_);
  out.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].key < o.terms_[j].key)) {
      out.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].key < terms_[i].key) {
      out.terms_.push_back(o.terms_[j++]);
    } else {
      Rat c = terms_[i].coeff + o.terms_[j].coeff;
      if (c != 0) out.terms_.push_back({terms_[i].key, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly& Poly::operator+=(const Poly& o) {
  *this = *this + o;
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  *this = *this - o;
  return *this;
}

Poly& Poly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (Term& t : terms_) t.coeff *= c;
  return *this;
}

namespace {
void check_mul_bounds(const Poly& a, const Poly& b) {
  for (int v = 0; v < a.nvars(); ++v)
    require(a.degree_in(v) + b.degree_in(v) <= static_cast<int>(kExpMask), Err::TooLarge,
            "product exponent exceeds packed monomial capacity");
}
}  // namespace

Poly Poly::mul_serial(const Poly& o) const {
  require(nvars_ == o.nvars_, Err::BadInput, "variable count mismatch");
  if (is_zero() || o.is_zero()) return Poly(nvars_);
  check_mul_bounds(*this, o);
  std::unordered_map<std::uint64_t, Rat> acc;
  acc.reserve(terms_.size() * 2);
  for (const Term& ta : terms_)
    for (const Term& tb : o.terms_) acc[ta.key + tb.key] += ta.coeff * tb.coeff;
  Poly out(nvars_);
  out.terms_.reserve(acc.size());
  for (auto& [key, c] : acc)
    if (c != 0) out.terms_.push_back({key, std::move(c)});
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const Term& a, const Term& b) { return a.key < b.key; });
  return out;
}

Poly Poly::mul_parallel(const Poly& o) const {
  require(nvars_ == o.nvars_, Err::BadInput, "variable count mismatch");
  if (is_zero() || o.is_zero()) return Poly(nvars_);
  check_mul_bounds(*this, o);
  const std::vector<Term>& big = terms_.size() >= o.terms_.size() ? terms_ : o.terms_;
  const std::vector<Term>& small = terms_.size() >= o.terms_.size() ? o.terms_ : terms_;
  int nthreads = omp_get_max_threads();
  std::vector<std::unordered_map<std::uint64_t, Rat>> local(nthreads);
#pragma omp parallel num_threads(nthreads)
  {
    auto& acc = local[omp_get_thread_num()];
    acc.reserve(big.size() / nthreads + 16);
#pragma omp for schedule(static)
    for (long i = 0; i < static_cast<long>(big.size()); ++i)
      for (const Term& tb : small) acc[big[i].key + tb.key] += big[i].coeff * tb.coeff;
  }
  // Exact rational arithmetic makes the merge order irrelevant to the result.
  std::unordered_map<std::uint64_t, Rat>& acc = local[0];
  for (int t = 1; t < nthreads; ++t)
    for (auto& [key, c] : local[t]) acc[key] += c;
  Poly out(nvars_);
  out.terms_.reserve(acc.size());
  for (auto& [key, c] : acc)
    if (c != 0) out.terms_.push_back({key, std::move(c)});
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const Term& a, const Term& b) { return a.key < b.key; });
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  // The parallel path only pays off when there is real work to split.
  if (g_parallel_mul && omp_get_max_threads() > 1 &&
      terms_.size() * o.terms_.size() > 4096)
    return mul_parallel(o);
  return mul_serial(o);
}

Poly Poly::mul_monomial(std::uint64_t key, const Rat& c) const {
  Poly out(nvars_);
  if (c == 0) return out;
  for (int v = 0; v < nvars_; ++v)
    require(degree_in(v) + exponent_of(key, v) <= static_cast<int>(kExpMask), Err::TooLarge,
            "product exponent exceeds packed monomial capacity");
  out.terms_.reserve(terms_.size());
  for (const Term& t : terms_) out.terms_.push_back({t.key + key, t.coeff * c});
  return out;
}

Poly Poly::derivative(int var) const {
  require(var >= 0 && var < nvars_, Err::IndexOutOfRange, "variable index out of range");
  Poly out(nvars_);
  std::uint64_t unit = std::uint64_t{1} << (kExpBits * (kMaxVars - 1 - var));
  for (const Term& t : terms_) {
    int e = exponent_of(t.key, var);
    if (e > 0) out.terms_.push_back({t.key - unit, t.coeff * e});
  }
  return out;
}

Rat Poly::eval(const std::vector<Rat>& point) const {
  require(static_cast<int>(point.size()) == nvars_, Err::BadInput, "point dimension mismatch");
  // Powers are cached per variable up to the degree that actually occurs.
  std::vector<std::vector<Rat>> pow(nvars_);
  for (int v = 0; v < nvars_; ++v) {
    pow[v].resize(degree_in(v) + 1);
    pow[v][0] = 1;
    for (int e = 1; e <= degree_in(v); ++e) pow[v][e] = pow[v][e - 1] * point[v];
  }
  Rat out = 0;
  for (const Term& t : terms_) {
    Rat m = t.coeff;
    for (int v = 0; v < nvars_; ++v) {
      int e = exponent_of(t.key, v);
      if (e) m *= pow[v][e];
    }
    out += m;
  }
  return out;
}

Poly Poly::substitute_var(int from, int to) const {
  require(from != to, Err::BadInput, "substitute needs distinct variables");
  Poly out(nvars_);
  std::uint64_t ufrom = std::uint64_t{1} << (kExpBits * (kMaxVars - 1 - from));
  std::uint64_t uto = std::uint64_t{1} << (kExpBits * (kMaxVars - 1 - to));
  for (const Term& t : terms_) {
    int e = exponent_of(t.key, from);
    require(exponent_of(t.key, to) + e <= static_cast<int>(kExpMask), Err::TooLarge,
            "substitution exponent exceeds packed monomial capacity");
    out.terms_.push_back({t.key - ufrom * e + uto * e, t.coeff});
  }
  out.canonicalize();
  return out;
}

Poly Poly::divide_by_difference(int b, int a) const {
  require(a != b, Err::BadInput, "difference needs distinct variables");
  if (is_zero()) return Poly(nvars_);
  // Synthetic division by (x_b - x_a): write P = sum_t p_t(x-hat) x_b^t and
  // run Horner at x_b = x_a. q_{t-1} = p_t + x_a * q_t, remainder p_0 + x_a q_0.
  int deg = degree_in(b);
  require(deg >= 1, Err::DegreeMismatch, "polynomial does not involve the divisor variable");
  std::vector<Poly> layers(deg + 1, Poly(nvars_));
  std::uint64_t ub = std::uint64_t{1} << (kExpBits * (kMaxVars - 1 - b));
  for (const Term& t : terms_) {
    int e = exponent_of(t.key, b);
    layers[e].add_raw(t.key - ub * e, t.coeff);
  }
  for (Poly& l : layers) l.canonicalize();
  Poly xa = variable(nvars_, a);
  Poly carry = layers[deg];  // q_{deg-1}
  Poly quotient(nvars_);
  for (int t = deg - 1; t >= 0; --t) {
    quotient += carry.mul_monomial(ub * t, 1);
    if (t > 0)
      carry = layers[t] + carry * xa;
    else {
      Poly rem = layers[0] + carry * xa;
      require(rem.is_zero(), Err::DegreeMismatch, "polynomial is not divisible by the difference");
    }
  }
  return quotient;
}

bool Poly::divisible_by_difference(int b, int a) const {
  return substitute_var(b, a).is_zero();
}

std::string Poly::serialize() const {
  if (terms_.empty()) return "0";
  std::vector<Term> sorted = terms_;
  std::sort(sorted.begin(), sorted.end(), [](const Term& x, const Term& y) {
    int dx = key_degree(x.key), dy = key_degree(y.key);
    if (dx != dy) return dx > dy;
    return x.key > y.key;
  });
  std::ostringstream os;
  bool first = true;
  for (const Term& t : sorted) {
    Rat c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool has_vars = t.key != 0;
    if (c != 1 || !has_vars) os << c.get_str();
    bool need_star = c != 1 || !has_vars;
    for (int v = 0; v < nvars_; ++v) {
      int e = exponent_of(t.key, v);
      if (!e) continue;
      if (need_star) os << "*";
      need_star = true;
      os << "x" << (v + 1);
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

namespace {
struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool peek_digit() {
    skip_ws();
    return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
  }
  Int parse_int() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    require(pos > start, Err::BadInput, "expected integer in polynomial text");
    return Int(s.substr(start, pos - start));
  }
};
}  // namespace

Poly Poly::parse(const std::string& text, int nvars) {
  Parser p{text};
  Poly out(nvars);
  p.skip_ws();
  require(p.pos < text.size(), Err::BadInput, "empty polynomial text");
  bool first = true;
  while (true) {
    p.skip_ws();
    if (p.pos >= text.size()) break;
    int sign = 1;
    if (p.eat('+'))
      sign = 1;
    else if (p.eat('-'))
      sign = -1;
    else
      require(first, Err::BadInput, "expected + or - between terms");
    first = false;
    Rat coeff = sign;
    bool saw_coeff = false;
    if (p.peek_digit()) {
      Int num = p.parse_int();
      Int den = 1;
      if (p.eat('/')) den = p.parse_int();
      require(den != 0, Err::BadInput, "zero denominator in coefficient");
      Rat q(num, den);
      q.canonicalize();  // "6/3" must compare equal to "2"
      coeff *= q;
      saw_coeff = true;
    }
    std::vector<int> exps(nvars, 0);
    bool saw_var = false;
    bool expect_factor = saw_coeff ? p.eat('*') : true;
    while (expect_factor) {
      p.skip_ws();
      if (p.pos >= text.size() || text[p.pos] != 'x') {
        require(!saw_var || !expect_factor || saw_coeff || true, Err::BadInput, "bad term");
        break;
      }
      ++p.pos;  // consume 'x'
      Int var = p.parse_int();
      long v = var.get_si();
      require(v >= 1 && v <= nvars, Err::IndexOutOfRange, "variable index out of range");
      int e = 1;
      if (p.eat('^')) e = static_cast<int>(p.parse_int().get_si());
      exps[v - 1] += e;
      saw_var = true;
      expect_factor = p.eat('*');
      require(!expect_factor || (p.pos < text.size()), Err::BadInput, "dangling *");
    }
    require(saw_coeff || saw_var, Err::BadInput, "empty term in polynomial text");
    out.add_raw(pack_exponents(exps), coeff);
  }
  out.canonicalize();
  return out;
}

}  // namespace w3b
