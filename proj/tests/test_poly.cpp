#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "w3b/combinatorics.hpp"
#include "w3b/linalg.hpp"
#include "w3b/poly.hpp"
#include "w3b/ratfun.hpp"
#include "w3b/specht.hpp"

using namespace w3b;

namespace {
Filling F(std::vector<std::vector<int>> rows) {
  std::vector<int> parts;
  for (const auto& r : rows) parts.push_back(static_cast<int>(r.size()));
  return Filling(Partition(parts), std::move(rows));
}

// x_b - x_a with 1-based indices, for readable expected values.
Poly D(int nvars, int b, int a) { return Poly::difference(nvars, b - 1, a - 1); }
}  // namespace

TEST_CASE("packed monomial keys order lexicographically") {
  std::vector<int> e1{1, 0, 2}, e2{1, 1, 0};
  CHECK(pack_exponents(e1) < pack_exponents(e2));  // (1,0,2) <lex (1,1,0)
  CHECK(unpack_exponents(pack_exponents(e1), 3) == e1);
  CHECK(key_degree(pack_exponents(e1)) == 3);
  // Monomial multiplication is key addition.
  CHECK(pack_exponents({1, 0, 2}) + pack_exponents({0, 3, 1}) == pack_exponents({1, 3, 3}));
  CHECK_THROWS_AS(pack_exponents({1, 200, 0}), Error);
}

TEST_CASE("polynomial arithmetic") {
  Poly a = Poly::variable(3, 0) + Poly::constant(3, Rat(2)) * Poly::variable(3, 1);
  Poly b = Poly::variable(3, 2) - Poly::constant(3, Rat(1, 2));
  CHECK((a + b) * (a - b) == a * a - b * b);
  CHECK((a - a).is_zero());
  Poly c = a;
  c *= Rat(-3, 7);
  CHECK(c == Poly::constant(3, Rat(-3, 7)) * a);
  CHECK(a.degree() == 1);
  CHECK((a * a * b).degree() == 3);
  CHECK((a * b).degree_in(1) == 1);
  CHECK(Poly::zero(3).degree() == -1);
}

TEST_CASE("parse, serialize, evaluate") {
  Poly p = Poly::parse("-5/3*x1^2*x2 + x3 - 1/2", 3);
  CHECK(p.serialize() == "-5/3*x1^2*x2 + x3 - 1/2");
  CHECK(Poly::parse(p.serialize(), 3) == p);
  CHECK(p.coeff({2, 1, 0}) == Rat(-5, 3));
  CHECK(p.coeff({0, 0, 0}) == Rat(-1, 2));
  CHECK(p.coeff({1, 1, 1}) == 0);
  CHECK(p.term_count() == 3);

  Poly q = Poly::parse("2*x1^2*x2 - 7/3*x3 + 1", 3);
  CHECK(q.eval({Rat(1, 2), Rat(-3), Rat(2, 7)}) == Rat(-7, 6));

  CHECK(Poly::parse("x1 - x1", 2).is_zero());
  CHECK(Poly::zero(2).serialize() == "0");
  CHECK_THROWS_AS(Poly::parse("x1 + + x2", 2), Error);
  CHECK_THROWS_AS(Poly::parse("x5", 2), Error);
}

TEST_CASE("derivative and division by differences") {
  Poly p = Poly::parse("x1^3*x2 - 2*x2", 2);
  CHECK(p.derivative(0) == Poly::parse("3*x1^2*x2", 2));
  CHECK(p.derivative(1) == Poly::parse("x1^3 - 2", 2));

  // (x2-x1)(x4-x3)^2 factors off exactly.
  Poly s = D(4, 2, 1) * D(4, 4, 3) * D(4, 4, 3);
  CHECK(s.divisible_by_difference(1, 0));
  CHECK(s.divide_by_difference(1, 0) == D(4, 4, 3) * D(4, 4, 3));
  CHECK(s.divide_by_difference(3, 2) == D(4, 2, 1) * D(4, 4, 3));
  CHECK(!s.divisible_by_difference(2, 0));
  CHECK_THROWS_AS(s.divide_by_difference(2, 0), Error);
  CHECK(s.substitute_var(1, 0).is_zero());
  CHECK(s.substitute_var(0, 1).is_zero());
  CHECK(s.substitute_var(3, 2).is_zero());

  // Exponent capacity guard on products.
  Poly big = Poly::monomial(1, {100}, 1);
  CHECK_THROWS_AS(big * Poly::monomial(1, {30}, 1), Error);
}

TEST_CASE("vandermonde products") {
  CHECK(vandermonde({3, 1}, 4) == D(4, 3, 1));
  CHECK(vandermonde({1, 2, 3}, 3) == D(3, 1, 2) * D(3, 1, 3) * D(3, 2, 3));
  CHECK(vandermonde({2, 2}, 2).is_zero());
  CHECK(vandermonde({}, 2) == Poly::constant(2, 1));
}

TEST_CASE("column products of gold tableaux") {
  Filling t1 = F({{1, 2}, {3, 4}, {3, 4}});
  Filling t2 = F({{1, 3}, {2, 4}, {3, 4}});
  CHECK(specht(t1.transpose(), 4) == D(4, 2, 1) * D(4, 4, 3) * D(4, 4, 3));
  CHECK(specht(t2.transpose(), 4) == D(4, 3, 1) * D(4, 4, 2) * D(4, 4, 3));
}

TEST_CASE("expanded form agrees with the factored product") {
  std::vector<Filling> all;
  for (std::vector<int> s : {std::vector<int>{1, 1, 2, 2}, std::vector<int>{1, 1, 1, 1, 1, 1},
                             std::vector<int>{1, 2, 1, 2, 1, 2}}) {
    Signature sig = make_signature(s);
    for (const Filling& t : enumerate_tableaux(sig.pi(), sig, TabKind::RSYT))
      all.push_back(t.transpose());
  }
  REQUIRE(all.size() == 13);
  for (const Filling& f : all) CHECK(specht_expanded(f, f.max_entry()) == specht(f, f.max_entry()));

  // Repeated entries within a column are rejected.
  CHECK_THROWS_AS(specht_expanded(F({{1, 2}, {1, 3}}), 3), Error);
}

TEST_CASE("lex-smallest monomial of a column product") {
  // For a column-strict filling the lex-least exponent of the column product
  // is row-sum minus multiplicity, with unit coefficient.
  for (std::vector<int> s : {std::vector<int>{1, 1, 2, 2}, std::vector<int>{1, 1, 1, 1, 1, 1},
                             std::vector<int>{1, 2, 1, 2, 1, 2}}) {
    Signature sig = make_signature(s);
    int d = sig.d();
    for (const Filling& t : enumerate_tableaux(sig.pi(), sig, TabKind::RSYT)) {
      Filling ft = t.transpose();
      Poly p = specht(ft, d);
      std::vector<int> expect = row_number_sums(ft, d);
      for (int i = 0; i < d; ++i) expect[i] -= sig.s[i];
      const Poly::Term& lead = p.lex_smallest_term();
      CHECK(lead.coeff == 1);
      CHECK(lead.key == pack_exponents(expect));
    }
  }
}

TEST_CASE("identifying variables in groups") {
  // Groups for content (1,1,2,2): x1->y1, x2->y2, {x3,x4}->y3, {x5,x6}->y4.
  Poly p = Poly::parse("x3*x5 - x4*x6", 6);
  CHECK(eval_identify(p, {1, 1, 2, 2}).is_zero());
  Poly q = Poly::parse("x1 + x3 + x4", 6);
  CHECK(eval_identify(q, {1, 1, 2, 2}) == Poly::parse("x1 + 2*x3", 4));
  CHECK_THROWS_AS(eval_identify(q, {1, 1, 1}), Error);
}

TEST_CASE("permutation action") {
  CHECK(permutation_sign({1, 2, 3}) == 1);
  CHECK(permutation_sign({2, 1, 3}) == -1);
  CHECK(permutation_sign({2, 3, 1}) == 1);
  CHECK(permute_variables(Poly::parse("x1^2*x2", 3), {2, 3, 1}) == Poly::parse("x2^2*x3", 3));

  // Signed symmetrization over S2 applied to x1 gives x1 - x2.
  std::vector<GroupAlgebraTerm> s2;
  for (const auto& g : all_permutations(2)) s2.push_back({Rat(1), g});
  CHECK(apply_group_algebra(s2, Poly::variable(2, 0), true) == Poly::parse("x1 - x2", 2));
  CHECK(apply_group_algebra(s2, Poly::parse("x1*x2", 2), true).is_zero());

  // Signed symmetrization over S3 of x2*x3^2 recovers the alternating product.
  std::vector<GroupAlgebraTerm> s3;
  for (const auto& g : all_permutations(3)) s3.push_back({Rat(1), g});
  CHECK(all_permutations(3).size() == 6);
  CHECK(apply_group_algebra(s3, Poly::parse("x2*x3^2", 3), true) == -vandermonde({1, 2, 3}, 3));
}

TEST_CASE("rank of polynomial families") {
  CHECK(rank_of({}) == 0);
  CHECK(rank_of({Poly::zero(2)}) == 0);
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  CHECK(rank_of({x, y, x + y}) == 2);
  for (std::vector<int> s : {std::vector<int>{1, 1, 2, 2}, std::vector<int>{1, 1, 1, 1, 1, 1},
                             std::vector<int>{1, 2, 1, 2, 1, 2}}) {
    Signature sig = make_signature(s);
    std::vector<Poly> sp;
    for (const Filling& t : enumerate_tableaux(sig.pi(), sig, TabKind::RSYT))
      sp.push_back(specht(t.transpose(), sig.d()));
    CHECK(rank_of(sp) == static_cast<int>(sp.size()));
  }
}

TEST_CASE("difference-product denominators") {
  DiffDenom d(3);
  d.add(0, 1, 2);
  d.add(1, 2, 1);
  CHECK(d.exp(0, 1) == 2);
  CHECK(d.exp(0, 2) == 0);
  CHECK(d.to_string() == "(x2-x1)^2*(x3-x2)");
  CHECK(d.expand() == D(3, 2, 1) * D(3, 2, 1) * D(3, 3, 2));
  CHECK(d.eval({Rat(0), Rat(1), Rat(3)}) == Rat(2));
  CHECK_THROWS_AS(d.eval({Rat(0), Rat(0), Rat(1)}), Error);

  DiffDenom e(3);
  e.add(0, 1, 1);
  e.add(0, 2, 3);
  DiffDenom l = DiffDenom::lcm(d, e);
  CHECK(l.exp(0, 1) == 2);
  CHECK(l.exp(0, 2) == 3);
  CHECK(l.exp(1, 2) == 1);
  CHECK(e.divides(l));
  CHECK(d.divides(l));
  CHECK(!l.divides(d));
  CHECK((l / d) * d == l);
}

TEST_CASE("rational functions with difference-product poles") {
  // 1/(x1-x2) = -1/(x2-x1).
  RatFun f = RatFun::simple(2, 1, {{0, 1, 1}});
  CHECK(f.eval({Rat(0), Rat(1)}) == Rat(-1));
  CHECK((f + RatFun::simple(2, 1, {{1, 0, 1}})).is_zero());

  // 1/((c-a)(c-b)) - 1/((b-a)(c-b)) + 1/((b-a)(c-a)) = 0.
  FractionSum sum(3);
  sum.add(RatFun::simple(3, 1, {{2, 0, 1}, {2, 1, 1}}));
  sum.add(RatFun::simple(3, -1, {{1, 0, 1}, {2, 1, 1}}));
  sum.add(RatFun::simple(3, 1, {{1, 0, 1}, {2, 0, 1}}));
  CHECK(sum.group_count() == 3);
  CHECK(sum.is_zero());

  // d/dx1 of 1/(x2-x1) is 1/(x2-x1)^2.
  RatFun g = RatFun::simple(2, 1, {{1, 0, 1}});
  CHECK((g.derivative(0) - RatFun::simple(2, 1, {{1, 0, 2}})).is_zero());
  // Quotient rule against a hand expansion: d/dx2 of x1^2/(x2-x1).
  RatFun h = RatFun(Poly::parse("x1^2", 2), DiffDenom(2)) * g;
  RatFun expect = RatFun::simple(2, -1, {{1, 0, 2}});
  expect = RatFun(Poly::parse("x1^2", 2), DiffDenom(2)) * expect;
  CHECK((h.derivative(1) - expect).is_zero());

  // Cancellation of a factor shared with the numerator.
  DiffDenom dd(3);
  dd.add(0, 1, 1);
  RatFun r(D(3, 2, 1) * D(3, 3, 1), dd);
  r.reduce();
  CHECK(r.num() == D(3, 3, 1));
  CHECK(r.den().is_one());
}

TEST_CASE("grouped fraction sums") {
  FractionSum s(2);
  s.add_poly(Poly::parse("x1", 2));
  s.add(RatFun::simple(2, 3, {{{1, 0, 1}}}));
  s.add(RatFun::simple(2, -3, {{{1, 0, 1}}}));
  CHECK(s.group_count() == 1);  // the pole group cancelled structurally
  CHECK(!s.is_zero());
  CHECK(s.eval({Rat(5), Rat(7)}) == Rat(5));
  FractionSum t = s.scaled(Rat(2)).times(RatFun::simple(2, 1, {{{1, 0, 1}}}));
  CHECK(t.eval({Rat(5), Rat(7)}) == Rat(5));
  RatFun c = s.derivative(0).combine();
  CHECK((c - RatFun::from_poly(Poly::constant(2, 1))).is_zero());
}

TEST_CASE("fraction-free elimination") {
  CHECK(bareiss_det_serial({{Int(1), Int(2)}, {Int(3), Int(4)}}) == Int(-2));
  CHECK(bareiss_det({{Int(2)}}) == Int(2));
  std::vector<std::vector<Int>> m4 = {{Int(3), Int(1), Int(4), Int(1)},
                                      {Int(5), Int(9), Int(2), Int(6)},
                                      {Int(5), Int(3), Int(5), Int(8)},
                                      {Int(9), Int(7), Int(9), Int(3)}};
  CHECK(bareiss_det_serial(m4) == Int(98));
  CHECK(bareiss_det_parallel(m4) == Int(98));
  CHECK(bareiss_det({{Int(1), Int(2)}, {Int(2), Int(4)}}) == 0);

  CHECK(bareiss_rank({{Int(1), Int(2), Int(3)}, {Int(2), Int(4), Int(6)}, {Int(1), Int(0), Int(1)}}) == 2);
  CHECK(bareiss_rank({{Int(0), Int(0)}, {Int(0), Int(0)}}) == 0);
  CHECK(bareiss_rank({{Int(0), Int(1)}, {Int(0), Int(2)}, {Int(3), Int(0)}}) == 2);

  CHECK(det_rational({{Rat(1, 2), Rat(1, 3)}, {Rat(1, 4), Rat(1, 5)}}) == Rat(1, 60));
  CHECK(rank_rational({{Rat(1, 2), Rat(1)}, {Rat(1, 4), Rat(1, 2)}}) == 1);

  // Float backend agrees with the exact value on integer input.
  double dd = det_double({{3, 1, 4, 1}, {5, 9, 2, 6}, {5, 3, 5, 8}, {9, 7, 9, 3}});
  CHECK(dd == doctest::Approx(98.0));
}

TEST_CASE("unit lower-triangular inverse") {
  std::vector<std::vector<Int>> m = {{Int(1), Int(0), Int(0), Int(0), Int(0), Int(0)},
                                     {Int(1), Int(1), Int(0), Int(0), Int(0), Int(0)},
                                     {Int(1), Int(1), Int(1), Int(0), Int(0), Int(0)},
                                     {Int(0), Int(1), Int(1), Int(1), Int(0), Int(0)},
                                     {Int(0), Int(1), Int(1), Int(0), Int(1), Int(0)},
                                     {Int(1), Int(2), Int(1), Int(1), Int(1), Int(1)}};
  std::vector<std::vector<Int>> inv = unit_lower_inverse(m);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      Int s = 0;
      for (int k = 0; k < 6; ++k) s += m[i][k] * inv[k][j];
      CHECK(s == (i == j ? 1 : 0));
    }
  CHECK_THROWS_AS(unit_lower_inverse({{Int(2), Int(0)}, {Int(0), Int(1)}}), Error);
  CHECK_THROWS_AS(unit_lower_inverse({{Int(1), Int(1)}, {Int(0), Int(1)}}), Error);
}

TEST_CASE("seeded rational streams are deterministic") {
  RatStream a(42), b(42);
  for (int i = 0; i < 20; ++i) CHECK(a.next_rational() == b.next_rational());
  RatStream c(7);
  std::vector<Rat> pt = c.next_point(6);
  CHECK(pt.size() == 6);
  for (std::size_t i = 0; i + 1 < pt.size(); ++i) CHECK(pt[i] < pt[i + 1]);
}
