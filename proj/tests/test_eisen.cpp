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

#include "symsq/eisen.hpp"

using namespace symsq;

namespace {

PadicElem u_of(long b, long p, int M) {
  return one_unit_decompose(PadicElem::from_integer(b, p, M)).second;
}

PadicElem q_(const mpq_class& x, long p, int M) {
  return PadicElem::from_rational(x, p, M);
}

}  // namespace

TEST_CASE("theta series") {
  auto s4 = DirichletChar::kronecker(-1);  // odd, conductor 4
  auto th = theta_series(s4, 50);
  CHECK(th.w2 == 3);
  CHECK(th.level == 64);
  // Frozen: q - 3q^9 + 5q^25 - 7q^49.
  CHECK(th.a[0][1].rational() == 1);
  CHECK(th.a[0][9].rational() == -3);
  CHECK(th.a[0][25].rational() == 5);
  CHECK(th.a[0][49].rational() == -7);
  // Non-square slots vanish.
  for (long n : {2, 3, 5, 8, 12, 48}) CHECK(th.a[0][n].is_zero());

  // Even quadratic character mod 8: beta = 0, a_{n^2} = xi(n).
  auto x8 = DirichletChar::kronecker(2);
  REQUIRE(x8.is_even());
  auto t8 = theta_series(x8, 50);
  CHECK(t8.w2 == 1);
  CHECK(t8.a[0][1].rational() == 1);
  CHECK(t8.a[0][9].rational() == -1);   // (8|3) = (2|3) = -1
  CHECK(t8.a[0][25].rational() == -1);  // (8|5) = -1
  CHECK(t8.a[0][49].rational() == 1);   // (8|7) = 1

  CHECK_THROWS_AS(theta_series(DirichletChar::trivial(1), 10), input_error);

  // theta0 = 1 + 2q + 2q^4 + 2q^9 + ...
  auto t0 = theta0_series(10);
  CHECK(t0.a[0][0].rational() == 1);
  CHECK(t0.a[0][1].rational() == 2);
  CHECK(t0.a[0][4].rational() == 2);
  CHECK(t0.a[0][9].rational() == 2);
  CHECK(t0.a[0][2].is_zero());

  // Convolution structure of theta(xi)^2 against brute force, m <= 50.
  auto sq = qx_mul(th, th);
  for (long m = 0; m <= 50; ++m) {
    mpq_class acc = 0;
    for (long a = 1; a * a <= m; ++a) {
      long bb = m - a * a;
      long b = 0;
      while (b * b < bb) ++b;
      if (b * b != bb || b == 0) continue;
      acc += mpq_class(a * s4.value_int(a)) * mpq_class(b * s4.value_int(b));
    }
    CHECK(sq.a[0][m].rational() == acc);
  }
}

TEST_CASE("critical E_2") {
  auto f = e2_critical(5, 50);
  CHECK(f.w2 == 4);
  CHECK(f.a[1][0].rational() == mpq_class(-2, 5));
  CHECK(f.a[0][0].is_zero());
  CHECK(f.a[0][4].rational() == 7);    // sigma_1(4)
  CHECK(f.a[0][5].rational() == 5);    // 5 * sigma_1(1)
  CHECK(f.a[0][10].rational() == 15);  // 5 * sigma_1(2)
  // U_5-eigenvector with eigenvalue 5.
  auto uf = up_op(f, 5);
  auto ef = qx_scale_mpq(f.truncated(10), mpq_class(5));
  for (long i = 0; i <= 1; ++i)
    for (long n = 0; n <= 10; ++n)
      CHECK(uf.a[i][n].rational() == ef.a[i][n].rational());
}

TEST_CASE("half-integral Eisenstein series") {
  long k = 3;
  auto triv20 = DirichletChar::trivial(20);
  auto E = eis_half_integral(k, triv20, 12);
  CHECK(E.w2 == 2 * k - 1);
  // Frozen: L_20(-3, triv) = (1-2^3)(1-5^3) zeta(-3) = 217/30.
  CHECK(E.a[0][0].rational() == mpq_class(217, 30));
  // a_1 = L_20(-1, triv) = (1-2)(1-5) zeta(-1) = -1/3.
  CHECK(E.a[0][1].rational() == mpq_class(-1, 3));
  // a_4: only (t1, t2) = (1, 1) survives the gcd sieve, sigma_4 trivial.
  CHECK(E.a[0][4].rational() == mpq_class(-1, 3));
  // Parity mismatch.
  CHECK_THROWS_AS(eis_half_integral(4, triv20, 4), input_error);
  CHECK_THROWS_AS(eis_half_integral_s0(4, triv20, 4), input_error);

  // s0 variant: constant suppressed, support respects the sieve.
  auto S0 = eis_half_integral_s0(k, triv20, 12);
  CHECK(S0.a[0][0].is_zero());
  CHECK_FALSE(S0.a[0][1].is_zero());
  // a_1 slot is the critical value of the trivial character's L over the
  // period; a_4's divisor sum is again the single term (1,1).
  CHECK((S0.a[0][4] - critical_L_over_period(
                          k - 1, DirichletChar::kronecker(4).inverse() * triv20,
                          std::vector<long>{2, 5}))
            .is_zero());
}

TEST_CASE("one-variable L-series against moments") {
  KLContext ctx{5, 1, 2, 16, 0};
  auto triv = DirichletChar::trivial(1);
  PadicElem u = u_of(2, 5, 16);
  auto G = lp_series(ctx, triv, triv, 0, 6, 10);
  for (long m = 1; m <= 2; ++m) {
    auto om = DirichletChar::teichmuller_power(5, (4 - (m % 4)) % 4);
    auto lhs = cyclo_to_padic(kl_moment(ctx, triv, om, m + 1), 5, 16);
    auto rhs = G.eval(u.pow(m) - PadicElem::from_integer(1, 5, 16));
    CHECK(lhs.eq_mod(rhs, 4));
  }
}

TEST_CASE("Eisenstein family and its normalization") {
  long p = 5, b = 2, K = 10;
  int len = 8, M = 20;
  auto E = eis_family_tilde(p, b, K, len, M);
  PadicElem u = E.u;
  PadicElem s4 = u.pow(4) - PadicElem::from_integer(1, p, M);
  // s4 = <2>^4 - 1 = 15 exactly (omega(2)^4 = 1).
  CHECK(s4.eq_mod(q_(mpq_class(15), p, M), 10));

  // S zeta*(S) at S = u^4 - 1: 15 * (1 - 5^3) zeta(-3) = -31/2.
  CHECK(E.zstar_s.eval(s4).eq_mod(q_(mpq_class(-31, 2), p, M), 6));
  CHECK(E.reg.a[0][0].eval(s4).eq_mod(q_(mpq_class(-31, 4), p, M), 6));

  // Weight-4 specialization of the divisor sums: sum_{d | n, 5 nmid d} d^3.
  for (long n = 1; n <= K; ++n) {
    mpq_class s = 0;
    for (long dd = 1; dd <= n; ++dd)
      if (n % dd == 0 && dd % 5 != 0) s += mpq_class(dd * dd * dd);
    CHECK(E.reg.a[0][n].eval(s4).eq_mod(q_(15 * s, p, M), 6));
  }

  // E(kappa) = 2 Etilde / zeta* has constant term exactly 1.
  auto N = eis_family_normalized(E);
  CHECK(N.a[0][0].coeff(0).eq_mod(q_(mpq_class(1), p, M), 5));
  for (int j = 1; j < 4; ++j)
    CHECK(N.a[0][0].coeff(j).eq_mod(PadicElem::zero(p), 4));
  // Its weight-4 value matches the classical normalized Eisenstein ratio.
  mpq_class z4(-31, 30);  // (1 - 5^3) zeta(-3)
  for (long n = 1; n <= K; ++n) {
    mpq_class s = 0;
    for (long dd = 1; dd <= n; ++dd)
      if (n % dd == 0 && dd % 5 != 0) s += mpq_class(dd * dd * dd);
    CHECK(N.a[0][n].eval(s4).eq_mod(q_(2 * s / z4, p, M), 4));
  }
}

TEST_CASE("family weight-raising recovers the critical E_2") {
  long p = 5, b = 2, K = 10;
  int len = 8, M = 20;
  auto E = eis_family_tilde(p, b, K, len, M);
  auto lk = log_kappa_series(E.u, M, len);
  auto dreg = delta_family(E.reg, lk);
  CHECK(dreg.fs2 == 4);
  auto cr = e2_critical(p, K);
  // d reg = S * (delta E~), so the S-coefficient 1 of every entry is the
  // value of delta E~ at the trivial character, which is E_2^cr.
  for (long i = 0; i <= 1; ++i)
    for (long n = 0; n <= K; ++n) {
      mpq_class c = (i <= cr.r && !cr.a[i][n].is_zero())
                        ? cr.a[i][n].rational()
                        : mpq_class(0);
      CHECK(dreg.a[i][n].coeff(1).eq_mod(q_(c, p, M), 5));
      CHECK(dreg.a[i][n].coeff(0).eq_mod(PadicElem::zero(p), 5));
    }
}

TEST_CASE("half-integral measure-family specialization") {
  KLContext ctx{5, 4, 81, 18, 2};
  long p = 5, K = 12;
  int len = 8, T = 12, M = 18;
  auto eps = DirichletChar::kronecker(-1);
  auto F = cal_E(eps, ctx, K, len, T);
  CHECK(F.fs2 == -1);
  PadicElem u = u_of(81, p, M);

  // Support on (n, p) = 1.
  CHECK(qx_ring<IwasawaSeries>::is_zero(F.a[0][5]));
  CHECK(qx_ring<IwasawaSeries>::is_zero(F.a[0][10]));

  // n = 1 coefficient is the bare L-series.
  auto L1 = lp_series(ctx, eps, DirichletChar::kronecker(1), -2, len, T);
  for (int j = 0; j < len; ++j)
    CHECK(F.a[0][1].coeff(j).eq_mod(L1.coeff(j), 4));

  // Specialization at k = 3, 4: per-slot regularized classical coefficients
  //   (1 - (sigma_n eps omega^{-k})(b) b^{k-1}) E_{k-1/2}(eps omega^{-k})_n.
  for (long k : {3L, 4L}) {
    auto om_mk = DirichletChar::teichmuller_power(5, (4 - (k % 4)) % 4);
    auto chik = eps * om_mk;  // modulus 20
    auto cls = eis_half_integral(k, chik, K);
    CHECK(cls.w2 == 2 * k - 1);
    auto Fk = specialize_family(F, k, u);
    CHECK(Fk.w2 == 2 * k - 1);
    for (long n = 1; n <= K; ++n) {
      if (n % 5 == 0) continue;
      auto sn = DirichletChar::kronecker(n);
      CycloNum fac = CycloNum(mpq_class(1)) -
                     (sn * chik).value(81) * CycloNum(mpq_class(pow_si(81, k - 1)));
      auto expect = cyclo_to_padic(cls.a[0][n] * fac, p, M);
      CHECK(Fk.a[0][n].eq_mod(expect, 4));
    }
  }
}

TEST_CASE("plus family specialization with the p-Euler twist") {
  KLContext ctx{5, 4, 81, 18, 2};
  long p = 5, K = 12, k = 4;
  int len = 8, T = 12, M = 18;
  auto chi = DirichletChar::kronecker(-1);
  auto F = cal_E_plus(chi, ctx, K, len, T);
  PadicElem u = u_of(81, p, M);
  auto Fk = specialize_family_poly(F, k, u);

  // Support and n = 1 wiring: the stored slot is the raw series times the
  // tame Gauss sum G(sigma_{-4}) = 2i.
  CHECK(qx_ring<IwasawaSeries>::is_zero(F.a[0][5]));
  auto L1 = lp_plus_series(ctx, chi, DirichletChar::kronecker(1), -2, len, T);
  PadicElem g1 = cyclo_to_padic(gauss_sum(chi), p, M);
  for (int j = 0; j < len; ++j)
    CHECK(F.a[0][1].coeff(j).eq_mod(L1.coeff(j) * g1, 4));

  // Classical target: chi~ = omega^k chi^{-1} = chi at k = 4.
  auto chik = chi * DirichletChar::teichmuller_power(5, 0);  // modulus 20
  auto s0 = eis_half_integral_s0(k, chik, K);
  for (long n = 1; n <= K; ++n) {
    if (n % 5 == 0) continue;
    auto sn = DirichletChar::kronecker(n);
    // Per-slot b-regularization (omega(81) = 1, chi(81) = 1).
    CycloNum fac = CycloNum(mpq_class(1)) -
                   (sn * chik).value(81) * CycloNum(mpq_class(pow_si(81, k - 1)));
    // p-Euler ratio between the measure's critical value (tame strip only)
    // and the fully stripped classical slot: eta_0(5) = (n|5) chi(5).
    long leg = DirichletChar::teichmuller_power(5, 2).value_int(n);
    long e5 = leg * chi.value_int(5);
    mpq_class num = 1 - mpq_class(e5) * mpq_class(pow_si(5, k - 2));
    mpq_class den = 1 - mpq_class(e5) / mpq_class(pow_si(5, k - 1));
    // Both sides carry 1/G(tame); the family slot is stored times G(tame).
    CycloNum g = gauss_sum((chi * sn).split_at(5).first.primitive());
    auto expect = cyclo_to_padic(s0.a[0][n] * fac * g, p, M) *
                  q_(num / den, p, M);
    CHECK(Fk.a[0][n].eq_mod(expect, 4));
  }
}

TEST_CASE("nu_k twist values") {
  auto chi = DirichletChar::kronecker(-1);
  // (n|5) = 0: no twist.
  CHECK(nu_k_value(chi, 4, 5, 5, 12)
            .eq_mod(PadicElem::from_integer(1, 5, 12), 10));
  // k = 4, n = 1: (1 - 5^{k-3} chi(5)) / (1 - 5^{2-k} chi(5)) = -25/6.
  CHECK(nu_k_value(chi, 4, 1, 5, 12).eq_mod(q_(mpq_class(-25, 6), 5, 12), 8));
  // Quadratic residue symmetry: n = 4 same as n = 1; n = 2 flips the sign.
  CHECK(nu_k_value(chi, 4, 4, 5, 12).eq_mod(nu_k_value(chi, 4, 1, 5, 12), 8));
  // (2|5) = -1: (1 + 5) / (1 + 1/25) = 6 / (26/25).
  CHECK(nu_k_value(chi, 4, 2, 5, 12).eq_mod(q_(mpq_class(6) / mpq_class(26, 25), 5, 12), 8));
}

TEST_CASE("improved family structure") {
  KLContext ctx{5, 4, 81, 16, 2};
  long p = 5, K = 6, k0 = 3;
  int len = 6, T = 10, M = 16;
  auto xi_pr = DirichletChar::kronecker(-1);  // odd: (-1)^{k0} with k0 = 3
  auto psi_pr = DirichletChar::trivial(1);
  auto F = cal_E_improved(xi_pr, psi_pr, k0, ctx, K, len, T);
  CHECK(F.fs2 == -1);
  PadicElem u = u_of(81, p, M);

  // chi' = sigma_{-1} psi' xi' is trivial mod 4; chi = chi' omega^{-1}.
  auto chi_pr = DirichletChar::kronecker(-1) * psi_pr * xi_pr;
  CHECK(chi_pr.order() == 1);
  auto chi = chi_pr * DirichletChar::teichmuller_power(5, 3);

  // The first factor vanishes at S0 = b^{k0-1} - 1 = 81^2 - 1 (val 1), so
  // the constant coefficient vanishes there.
  PadicElem S0 = q_(mpq_class(81 * 81 - 1), p, M);
  CHECK(F.a[0][0].eval(S0).eq_mod(PadicElem::zero(p), 4));

  // Assembly consistency at the node k = k0 + 2 = 5.
  long k = k0 + 2;
  PadicElem sk = u.pow(k) - PadicElem::from_integer(1, p, M);
  auto triv = DirichletChar::trivial(1);
  // Constant: (1 - chi'(b) u^k b^{1-k0}-factor) * moment.
  PadicElem c1 = q_(qx_frac(1, 81 * 81), p, M);  // chi'(81) b^{1-k0}
  PadicElem f1 = PadicElem::from_integer(1, p, M) - c1 * u.pow(k);
  auto om2k = DirichletChar::teichmuller_power(5, (400 - 2 * k) % 4);
  auto mom0 = cyclo_to_padic(
      kl_moment(ctx, triv, chi_pr.pow(2) * om2k, 2 * k - 3 - 2 * k0), p, M);
  CHECK(F.a[0][0].eval(sk).eq_mod(f1 * mom0, 4));

  // n = 1: factor2 * L-node.
  PadicElem c2 = q_(mpq_class(1, mpz_class(pow_si(81, 2 * k0 + 4))), p, M);
  PadicElem f2 = PadicElem::from_integer(1, p, M) - c2 * u.pow(k) * u.pow(k);
  auto omk = DirichletChar::teichmuller_power(5, (400 - k) % 4);
  auto mom1 =
      cyclo_to_padic(kl_moment(ctx, triv, chi * omk, k - k0 + 1), p, M);
  CHECK(F.a[0][1].eval(sk).eq_mod(f2 * mom1, 4));
}
