#include "w3b/ratfun.hpp"

#include <array>
#include <sstream>

namespace w3b {

DiffDenom::DiffDenom(int nvars) : nvars_(nvars), exps_(pair_count(nvars), 0) {}

int DiffDenom::pair_index(int nvars, int a, int b) {
  require(0 <= a && a < b && b < nvars, Err::IndexOutOfRange, "bad difference pair");
  return a * nvars - a * (a + 1) / 2 + (b - a - 1);
}

bool DiffDenom::is_one() const {
  for (int e : exps_)
    if (e) return false;
  return true;
}

int DiffDenom::exp(int a, int b) const { return exps_[pair_index(nvars_, a, b)]; }

void DiffDenom::add(int a, int b, int k) {
  int& e = exps_[pair_index(nvars_, a, b)];
  e += k;
  require(e >= 0, Err::BadInput, "negative denominator exponent");
}

DiffDenom DiffDenom::lcm(const DiffDenom& x, const DiffDenom& y) {
  require(x.nvars_ == y.nvars_, Err::BadInput, "variable count mismatch");
  DiffDenom out(x.nvars_);
  for (std::size_t i = 0; i < out.exps_.size(); ++i)
    out.exps_[i] = std::max(x.exps_[i], y.exps_[i]);
  return out;
}

DiffDenom DiffDenom::operator*(const DiffDenom& o) const {
  require(nvars_ == o.nvars_, Err::BadInput, "variable count mismatch");
  DiffDenom out(nvars_);
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] = exps_[i] + o.exps_[i];
  return out;
}

DiffDenom DiffDenom::operator/(const DiffDenom& o) const {
  require(nvars_ == o.nvars_, Err::BadInput, "variable count mismatch");
  DiffDenom out(nvars_);
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    out.exps_[i] = exps_[i] - o.exps_[i];
    require(out.exps_[i] >= 0, Err::BadInput, "denominator division underflow");
  }
  return out;
}

bool DiffDenom::divides(const DiffDenom& o) const {
  if (nvars_ != o.nvars_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > o.exps_[i]) return false;
  return true;
}

Poly DiffDenom::expand() const {
  Poly out = Poly::constant(nvars_, 1);
  for (int a = 0; a < nvars_; ++a)
    for (int b = a + 1; b < nvars_; ++b) {
      int e = exp(a, b);
      for (int k = 0; k < e; ++k) out = out * Poly::difference(nvars_, b, a);
    }
  return out;
}

Rat DiffDenom::eval(const std::vector<Rat>& point) const {
  Rat out = 1;
  for (int a = 0; a < nvars_; ++a)
    for (int b = a + 1; b < nvars_; ++b) {
      int e = exp(a, b);
      if (!e) continue;
      Rat diff = point[b] - point[a];
      require(diff != 0, Err::CollidingPoints, "evaluation point collides with a pole");
      out *= pow_rat(diff, e);
    }
  return out;
}

std::string DiffDenom::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int a = 0; a < nvars_; ++a)
    for (int b = a + 1; b < nvars_; ++b) {
      int e = exp(a, b);
      if (!e) continue;
      if (!first) os << "*";
      first = false;
      os << "(x" << (b + 1) << "-x" << (a + 1) << ")";
      if (e > 1) os << "^" << e;
    }
  return first ? "1" : os.str();
}

RatFun::RatFun(Poly num, DiffDenom den) : num_(std::move(num)), den_(std::move(den)) {
  require(num_.nvars() == den_.nvars(), Err::BadInput, "variable count mismatch");
}

RatFun RatFun::from_poly(Poly p) {
  DiffDenom one(p.nvars());
  return RatFun(std::move(p), one);
}

RatFun RatFun::simple(int nvars, const Rat& c, const std::vector<std::array<int, 3>>& factors) {
  Rat coeff = c;
  DiffDenom den(nvars);
  for (const auto& [i, j, k] : factors) {
    require(i != j, Err::BadInput, "difference needs distinct variables");
    if (i < j) {
      // 1/(x_i - x_j)^k = (-1)^k / (x_j - x_i)^k
      den.add(i, j, k);
      if (k % 2) coeff = -coeff;
    } else {
      den.add(j, i, k);
    }
  }
  return RatFun(Poly::constant(nvars, coeff), den);
}

RatFun RatFun::operator+(const RatFun& o) const {
  require(nvars() == o.nvars(), Err::BadInput, "variable count mismatch");
  DiffDenom l = DiffDenom::lcm(den_, o.den_);
  Poly n = num_ * (l / den_).expand() + o.num_ * (l / o.den_).expand();
  return RatFun(std::move(n), l);
}

RatFun RatFun::operator-(const RatFun& o) const { return *this + (-o); }

RatFun RatFun::operator-() const {
  RatFun out = *this;
  out.num_ = -out.num_;
  return out;
}

RatFun& RatFun::operator+=(const RatFun& o) {
  *this = *this + o;
  return *this;
}

RatFun RatFun::operator*(const RatFun& o) const {
  return RatFun(num_ * o.num_, den_ * o.den_);
}

RatFun RatFun::scaled(const Rat& c) const {
  RatFun out = *this;
  out.num_ *= c;
  return out;
}

RatFun RatFun::derivative(int var) const {
  // d/dx [ num / prod f_k^{e_k} ] = num' / den - num * sum e_k f_k' / (f_k den)
  RatFun out(nvars());
  out = RatFun(num_.derivative(var), den_);
  for (int a = 0; a < nvars(); ++a)
    for (int b = a + 1; b < nvars(); ++b) {
      int e = den_.exp(a, b);
      if (!e) continue;
      int fprime = (var == b) ? 1 : (var == a) ? -1 : 0;
      if (!fprime) continue;
      DiffDenom d = den_;
      d.add(a, b, 1);
      Poly n = num_;
      n *= Rat(-e * fprime);
      out += RatFun(std::move(n), d);
    }
  return out;
}

void RatFun::reduce() {
  if (num_.is_zero()) {
    den_ = DiffDenom(nvars());
    return;
  }
  for (int a = 0; a < nvars(); ++a)
    for (int b = a + 1; b < nvars(); ++b) {
      while (den_.exp(a, b) > 0 && num_.divisible_by_difference(b, a)) {
        num_ = num_.divide_by_difference(b, a);
        den_.add(a, b, -1);
      }
    }
}

Rat RatFun::eval(const std::vector<Rat>& point) const {
  return num_.eval(point) / den_.eval(point);
}

std::string RatFun::to_string() const {
  std::string n = num_.serialize();
  if (den_.is_one()) return n;
  return "(" + n + ") / (" + den_.to_string() + ")";
}

void FractionSum::add(const RatFun& f) {
  if (f.is_zero()) return;
  if (nvars_ == 0) nvars_ = f.nvars();
  require(nvars_ == f.nvars(), Err::BadInput, "variable count mismatch");
  auto [it, fresh] = groups_.try_emplace(f.den().exps(), f.num());
  if (!fresh) {
    it->second += f.num();
    if (it->second.is_zero()) groups_.erase(it);
  }
}

void FractionSum::add(const FractionSum& o) {
  for (const auto& [exps, num] : o.groups_) {
    DiffDenom d(o.nvars_);
    for (int a = 0, idx = 0; a < o.nvars_; ++a)
      for (int b = a + 1; b < o.nvars_; ++b, ++idx) d.add(a, b, exps[idx]);
    add(RatFun(num, d));
  }
}

void FractionSum::add_poly(const Poly& p) { add(RatFun::from_poly(p)); }

FractionSum FractionSum::scaled(const Rat& c) const {
  FractionSum out(nvars_);
  if (c == 0) return out;
  for (const auto& [exps, num] : groups_) {
    Poly n = num;
    n *= c;
    out.groups_.emplace(exps, std::move(n));
  }
  return out;
}

namespace {
DiffDenom denom_from_exps(int nvars, const std::vector<int>& exps) {
  DiffDenom d(nvars);
  for (int a = 0, idx = 0; a < nvars; ++a)
    for (int b = a + 1; b < nvars; ++b, ++idx) d.add(a, b, exps[idx]);
  return d;
}
}  // namespace

FractionSum FractionSum::times(const RatFun& f) const {
  FractionSum out(nvars_);
  for (const auto& [exps, num] : groups_)
    out.add(RatFun(num, denom_from_exps(nvars_, exps)) * f);
  return out;
}

FractionSum FractionSum::derivative(int var) const {
  FractionSum out(nvars_);
  for (const auto& [exps, num] : groups_)
    out.add(RatFun(num, denom_from_exps(nvars_, exps)).derivative(var));
  return out;
}

RatFun FractionSum::combine() const {
  RatFun acc(nvars_ == 0 ? 1 : nvars_);
  // std::map iteration gives a deterministic fold order.
  for (const auto& [exps, num] : groups_) acc += RatFun(num, denom_from_exps(nvars_, exps));
  return acc;
}

bool FractionSum::is_zero() const { return combine().is_zero(); }

Rat FractionSum::eval(const std::vector<Rat>& point) const {
  Rat out = 0;
  for (const auto& [exps, num] : groups_)
    out += RatFun(num, denom_from_exps(nvars_, exps)).eval(point);
  return out;
}

}  // namespace w3b
