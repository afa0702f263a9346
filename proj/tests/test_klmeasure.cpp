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

#include "symsq/klmeasure.hpp"

using namespace symsq;

namespace {

PadicElem u_of(long b, long p, int M) {
  return one_unit_decompose(PadicElem::from_integer(b, p, M)).second;
}

}  // namespace

TEST_CASE("Iwasawa series basics") {
  long p = 5;
  int M = 12;
  PadicElem u = u_of(2, p, M);

  // (1+S)^3 at S = u - 1 is u^3.
  auto s3 = one_unit_power_series(PadicElem::from_integer(3, p, M), 10);
  CHECK(s3.eval(u - PadicElem::from_integer(1, p, M)).eq_mod(u.pow(3), 8));

  // (1+S)^a (1+S)^b = (1+S)^{a+b}.
  auto sa = one_unit_power_series(PadicElem::from_integer(7, p, M), 8);
  auto sb = one_unit_power_series(PadicElem::from_integer(-4, p, M), 8);
  auto sab = one_unit_power_series(PadicElem::from_integer(3, p, M), 8);
  auto prod = sa * sb;
  for (int j = 0; j < 8; ++j)
    CHECK(prod.coeff(j).eq_mod(sab.coeff(j), 8));

  // log_u(1+S) specializes to k at S = u^k - 1.
  auto lk = log_kappa_series(u, M, 14);
  PadicElem s0 = u.pow(3) - PadicElem::from_integer(1, p, M);
  CHECK(lk.eval(s0).eq_mod(PadicElem::from_integer(3, p, M), 8));

  // Recentering: f(S) = S shifted by t = 2 evaluates to u^{m+2} - 1.
  auto idS = IwasawaSeries::zero(p, 10);
  idS.coeffs()[1] = PadicElem::from_integer(1, p, M);
  auto sh = idS.recenter(2, u);
  PadicElem at = u.pow(4) - PadicElem::from_integer(1, p, M);
  PadicElem expect = u.pow(6) - PadicElem::from_integer(1, p, M);
  CHECK(sh.eval(at).eq_mod(expect, 8));
}

TEST_CASE("Iwasawa series from node values") {
  long p = 5;
  int M = 20;
  PadicElem u = u_of(2, p, M);
  // f(S) = 3 + 5 S + 7 S^2, sampled exactly at S = u^i - 1 for i = 0..7.
  std::vector<PadicElem> c = {PadicElem::from_integer(3, p, M),
                              PadicElem::from_integer(5, p, M),
                              PadicElem::from_integer(7, p, M)};
  std::vector<PadicElem> nodes;
  for (long i = 0; i < 8; ++i) {
    PadicElem s = u.pow(i) - PadicElem::from_integer(1, p, M);
    nodes.push_back(c[0] + s * (c[1] + s * c[2]));
  }
  auto rec = iwasawa_from_node_values(nodes, 0, u, 3);
  for (int j = 0; j < 3; ++j) CHECK(rec.coeff(j).eq_mod(c[j], 6));
}

TEST_CASE("regularized Kubota-Leopoldt moments") {
  KLContext ctx{5, 1, 2, 10, 3};
  auto triv = DirichletChar::trivial(1);
  // Frozen: (1 - 2^2)(1 - 5) zeta(-1) = (-3)(-4)(-1/12) = -1.
  CHECK(kl_moment(ctx, triv, triv, 2).rational() == mpq_class(-1));
  // Frozen: (1 - 2^4)(1 - 5^3) zeta(-3) = (-15)(-124)(1/120) = 31/2.
  CHECK(kl_moment(ctx, triv, triv, 4).rational() == mpq_class(31, 2));
  // Total mass vanishes for p = 5 (the stripped Euler factor at p is 0).
  CHECK(kl_moment(ctx, triv, triv, 1).is_zero());
  // Parity vanishing: zeta(-2) = 0.
  CHECK(kl_moment(ctx, triv, triv, 3).is_zero());
  // Odd twist: omega is odd, so even m vanish.
  auto om = DirichletChar::teichmuller_power(5, 1);
  CHECK(kl_moment(ctx, triv, om, 2).is_zero());
  CHECK_FALSE(kl_moment(ctx, triv, om, 1).is_zero());
}

TEST_CASE("cylinder reconstruction, distribution relation, interpolation") {
  KLContext ctx{5, 1, 2, 10, 3};
  auto triv = DirichletChar::trivial(1);
  auto mu = cylinders_from_moments(kl_oracle(ctx, triv), ctx.p, ctx.D,
                                   ctx.n_max, ctx.prec);
  // Distribution relation holds at the working precision (the only losses
  // are the p-powers of phi(D p^n) in the inversion).
  CHECK(mu.distribution_check(6));
  // Boundedness: the regularized measure is Z_p-valued.
  CHECK(mu.min_valuation() >= 0);

  // Interpolation: int eps(z) z^{m-1} dmu = sum_a eps omega^{m-1}(a) <a>^{m-1}
  // over deepest cylinders, up to the certified Riemann-sum error.
  auto om = DirichletChar::teichmuller_power(5, 1);
  for (long m = 1; m <= 3; ++m) {
    for (long j = 0; j <= 2; ++j) {
      auto eps = om.pow(j);
      auto lhs = embed_padic(kl_moment(ctx, triv, eps, m), ctx.p, ctx.prec,
                             mu.ring_order);
      auto rhs = mellin_eval(mu, eps * om.pow(m - 1), m - 1);
      CHECK(lhs.eq_mod(rhs, 2));
    }
  }

  // A wild character mod 25 participates consistently.
  DirichletChar wild = triv;
  for (const auto& ch : DirichletChar::all_mod(25))
    if (ch.order() == 5) {
      wild = ch;
      break;
    }
  REQUIRE(wild.order() == 5);
  auto lhsw =
      embed_padic(kl_moment(ctx, triv, wild, 1), ctx.p, ctx.prec,
                  mu.ring_order);
  CHECK(lhsw.eq_mod(mellin_eval(mu, wild, 0L), 2));

  // Iwasawa series of the measure: G(u^m - 1) = int <z>^m dmu.
  PadicElem u = u_of(ctx.b, ctx.p, ctx.prec);
  auto G = iwasawa_series_of(mu, triv, u, 4);
  for (long m = 1; m <= 2; ++m) {
    auto mom = kl_moment(ctx, triv, om.inverse().pow(m), m + 1);
    auto lhs = embed_padic(mom, ctx.p, ctx.prec, mu.ring_order).as_padic();
    REQUIRE(lhs.has_value());
    auto rhs = G.eval(u.pow(m) - PadicElem::from_integer(1, ctx.p, ctx.prec));
    CHECK(lhs->eq_mod(rhs, 2));
  }
}

TEST_CASE("plus-side moments") {
  KLContext ctx{5, 4, 3, 10, 2};
  auto s4 = DirichletChar::kronecker(-1);
  auto triv = DirichletChar::trivial(1);
  // Parity mismatch vanishes identically.
  CHECK(klplus_moment(ctx, s4, triv, 2).is_zero());
  // m = 1: sigma_{-4}(5) = 1, so the p-Euler factor (1 - eta(p) p^{m-1})
  // kills the moment exactly.
  CHECK(klplus_moment(ctx, s4, triv, 1).is_zero());
  // m = 3: nonzero, and rational after clearing the Gauss sum.
  auto v = klplus_moment(ctx, s4, triv, 3);
  CHECK_FALSE(v.is_zero());
  CHECK((v * gauss_sum(s4)).is_rational());

  // Tame-level reconstruction at D = 4 with the sigma_{-4} twist.
  auto mu = cylinders_from_moments(kl_oracle(ctx, s4), ctx.p, ctx.D,
                                   ctx.n_max, ctx.prec);
  CHECK(mu.distribution_check(5));
  auto lhs = embed_padic(kl_moment(ctx, s4, triv, 1), ctx.p, ctx.prec,
                         mu.ring_order);
  CHECK(lhs.eq_mod(mellin_eval(mu, triv, 0L), 1));
}
