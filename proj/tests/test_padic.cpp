// Copyright 2026 The symsq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symsq/padic.hpp"

using namespace symsq;

TEST_CASE("integer utilities") {
  CHECK(powmod(3, 5, 7) == 5);
  CHECK(invmod(2, 125) == 63);
  CHECK(valuation(mpz_class(250), 5) == 3);
  CHECK(euler_phi(49) == 42);
  CHECK(primitive_root(49) == 3);
  CHECK(mult_order(3, 49) == 42);
  CHECK(crt(2, 3, 3, 5) == 8);
  auto B = bernoulli_numbers(12);
  CHECK(B[2] == mpq_class(1, 6));
  CHECK(B[4] == mpq_class(-1, 30));
  CHECK(B[12] == mpq_class(-691, 2730));
  CHECK(bernoulli_poly(2, mpq_class(1, 2)) == mpq_class(-1, 12));
  CHECK(binomial_q(mpq_class(1, 2), 2) == mpq_class(-1, 8));
}

TEST_CASE("rational embedding into Q_p") {
  auto x = PadicElem::from_rational(mpq_class(1, 2), 5, 3);
  CHECK(x.val() == 0);
  CHECK(x.unit() == 63);  // 2 * 63 = 126 = 1 mod 125
  auto y = PadicElem::from_rational(mpq_class(50, 3), 5, 2);
  CHECK(y.val() == 2);
  // 2/3 mod 25 = 2 * 17 = 34 = 9
  CHECK(y.unit() == 9);
  auto z = PadicElem::from_rational(mpq_class(3, 25), 5, 4);
  CHECK(z.val() == -2);
}

TEST_CASE("arithmetic and precision tracking") {
  long p = 5;
  auto a = PadicElem::from_rational(mpq_class(7), p, 4);
  auto b = PadicElem::from_rational(mpq_class(-7), p, 4);
  auto s = a + b;
  CHECK(s.is_zero());
  CHECK_FALSE(s.is_exact_zero());
  CHECK(s.abs_prec() == 4);

  // Cancellation reduces relative precision: (1 + 5^3) - 1 has val 3.
  auto c = PadicElem::from_integer(126, p, 4);
  auto d = c - PadicElem::from_integer(1, p, 4);
  CHECK(d.val() == 3);
  CHECK(d.prec() == 1);

  auto e = PadicElem::from_rational(mpq_class(1, 2), p, 6);
  CHECK((e * PadicElem::from_integer(2, p, 6))
            .eq_mod(PadicElem::from_integer(1, p, 6), 6));
  CHECK(e.inv().eq_mod(PadicElem::from_integer(2, p, 6), 6));
  CHECK(e.pow(-2).eq_mod(PadicElem::from_integer(4, p, 6), 6));
}

TEST_CASE("teichmuller lifts") {
  auto w2 = teichmuller(2, 5, 2);
  CHECK(w2.unit() == 7);  // omega(2) = 7 mod 25
  auto w2b = teichmuller(2, 5, 10);
  CHECK(w2b.pow(4).eq_mod(PadicElem::from_integer(1, 5, 10), 10));
  CHECK(mod_reduce(w2b.unit(), mpz_class(5)) == 2);

  auto w3 = teichmuller(3, 7, 8);
  CHECK(w3.pow(6).eq_mod(PadicElem::from_integer(1, 7, 8), 8));
  CHECK(mod_reduce(w3.unit(), mpz_class(7)) == 3);

  auto z = PadicElem::from_integer(2, 5, 6);
  auto [w, u] = one_unit_decompose(z);
  CHECK((w * u).eq_mod(z, 6));
  CHECK(u.lift(1) == 1);  // <z> is a one-unit
  // omega(2)^{-1} * 2 mod 25: 18 * 2 = 36 = 11.
  auto u2 = one_unit_decompose(PadicElem::from_integer(2, 5, 2)).second;
  CHECK(u2.lift(2) == 11);
}

TEST_CASE("iwasawa logarithm") {
  // log(1+5) = 5 - 25/2 + ... = 5 mod 25.
  auto l = iwasawa_log(PadicElem::from_integer(6, 5, 2));
  CHECK(l.lift(2) == 5);
  // log is a homomorphism: log(z^2) = 2 log z.
  auto z = PadicElem::from_integer(1 + 5 * 3, 5, 8);
  CHECK(iwasawa_log(z * z).eq_mod(iwasawa_log(z) * PadicElem::from_integer(2, 5, 8), 8));
  // exp o log is the identity on one-units (p odd).
  auto back = padic_exp(iwasawa_log(z));
  CHECK(back.eq_mod(z, 8));
  // Extension to units kills the Teichmuller part.
  auto lw = iwasawa_log_unit(teichmuller(2, 5, 8));
  CHECK(lw.is_zero());
}

TEST_CASE("square roots") {
  // 6 is a square mod 25: 9^2 = 81 = 6.
  auto r = padic_sqrt(PadicElem::from_integer(6, 5, 2));
  REQUIRE(r.has_value());
  CHECK((r->unit() == 9 || r->unit() == 16));
  CHECK((*r * *r).eq_mod(PadicElem::from_integer(6, 5, 2), 2));

  // 2 is not a square in Q_5.
  CHECK_FALSE(padic_sqrt(PadicElem::from_integer(2, 5, 4)).has_value());
  auto e = ext_sqrt(PadicElem::from_integer(2, 5, 4));
  CHECK(e.ring()->degree() == 2);
  auto sq = e * e;
  CHECK(sq.eq_mod(ExtElem::from_rational(e.ring(), mpq_class(2), 4), 4));

  // Odd valuation: sqrt(5*2) lives in a ramified quadratic extension.
  auto o = ext_sqrt(PadicElem::from_integer(10, 5, 4));
  CHECK((o * o).eq_mod(ExtElem::from_rational(o.ring(), mpq_class(10), 4), 4));

  // Square with even valuation: sqrt(25 * 6) = 5 * sqrt(6) in Z_5.
  auto q = padic_sqrt(PadicElem::from_integer(150, 5, 3));
  REQUIRE(q.has_value());
  CHECK(q->val() == 1);
}

TEST_CASE("cyclotomic polynomials") {
  auto f12 = cyclotomic_poly(12);
  std::vector<mpz_class> want = {1, 0, -1, 0, 1};
  CHECK(f12 == want);
  auto f7 = cyclotomic_poly(7);
  CHECK(f7.size() == 7);
  for (auto& c : f7) CHECK(c == 1);
  auto f1 = cyclotomic_poly(1);
  CHECK(f1 == std::vector<mpz_class>({-1, 1}));
}

TEST_CASE("cyclotomic extension arithmetic") {
  auto ring = ext_ring_cyclotomic(5, 3);
  int M = 6;
  auto z = ExtElem::gen(ring, M);
  auto one = ExtElem::one(ring, M);
  // 1 + z + z^2 = 0 and z^3 = 1.
  CHECK((one + z + z * z).is_zero());
  CHECK(z.pow(3).eq_mod(one, M));
  // (1 - z)(1 - z^2) = 3, so (1-z)^{-1} = (1 - z^2)/3.
  auto a = one - z;
  auto ainv = a.inv();
  CHECK((a * ainv).eq_mod(one, 5));
  auto expect = (one - z * z) * ExtElem::from_rational(ring, mpq_class(1, 3), M);
  CHECK(ainv.eq_mod(expect, 5));
}

TEST_CASE("ramified cyclotomic extension (zeta_p)") {
  // Z_5[zeta_5]: Phi_5(zeta) = 0; (1 - zeta)^4 is 5 times a unit.
  auto ring = ext_ring_cyclotomic(5, 5);
  int M = 5;
  auto z = ExtElem::gen(ring, M);
  auto one = ExtElem::one(ring, M);
  auto pi4 = (one - z).pow(4);
  // Product of (1 - zeta^i) over i=1..4 equals Phi_5(1) = 5.
  auto prod = (one - z) * (one - z.pow(2)) * (one - z.pow(3)) * (one - z.pow(4));
  CHECK(prod.eq_mod(ExtElem::from_rational(ring, mpq_class(5), M), M));
  CHECK(pi4.min_valuation().has_value());
  // Inversion of a unit in the ramified ring.
  auto u = one + z;  // (1+zeta) is a unit (its norm is Phi_5(-1) = 1)
  CHECK((u * u.inv()).eq_mod(one, 4));
}

TEST_CASE("as_padic round trip") {
  auto ring = ext_ring_cyclotomic(7, 3);
  auto x = ExtElem::from_rational(ring, mpq_class(3, 2), 6);
  auto back = x.as_padic();
  REQUIRE(back.has_value());
  CHECK(back->eq_mod(PadicElem::from_rational(mpq_class(3, 2), 7, 6), 6));
  auto z = ExtElem::gen(ring, 6);
  CHECK_FALSE(z.as_padic().has_value());
}
