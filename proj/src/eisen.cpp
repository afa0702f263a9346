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

#include "symsq/eisen.hpp"

#include <algorithm>

namespace symsq {

namespace {

long mobius(long n) {
  long s = 1;
  for (const auto& [q, e] : factorize(n)) {
    (void)q;
    if (e > 1) return 0;
    s = -s;
  }
  return s;
}

std::vector<long> prime_divisors(long n) {
  std::vector<long> out;
  for (const auto& [q, e] : factorize(n)) {
    (void)e;
    out.push_back(q);
  }
  return out;
}

mpq_class mpq_pow(long b, long e) {
  if (e >= 0) return mpq_class(pow_si(b, e));
  mpq_class r(1, mpz_class(pow_si(b, -e)));
  r.canonicalize();
  return r;
}

/// omega^e with the exponent reduced into [0, p-1).
DirichletChar omega_pow(long p, long e) {
  long r = ((e % (p - 1)) + (p - 1)) % (p - 1);
  return DirichletChar::teichmuller_power(p, r);
}

/// log<d> / log u: the exponent making kappa(d) = (1+S)^ell on the
/// identity branch.
PadicElem ell_of(long d, const PadicElem& logu, long p, int M) {
  if (d == 1) return PadicElem::zero(p);
  PadicElem dp = PadicElem::from_integer(d, p, M);
  return iwasawa_log(one_unit_decompose(dp).second) / logu;
}

/// Multiply an S-series by S (shift coefficients up one slot).
IwasawaSeries mul_S(const IwasawaSeries& f) {
  auto r = IwasawaSeries::zero(f.p(), f.length());
  for (int j = 1; j < f.length(); ++j) r.coeffs()[j] = f.coeff(j - 1);
  return r;
}

PadicElem unit_part(long b, long p, int M) {
  return one_unit_decompose(PadicElem::from_integer(b, p, M)).second;
}

}  // namespace

// ---------------------------------------------------------------------------
// Classical series.
// ---------------------------------------------------------------------------

PolyQX<CycloNum> theta_series(const DirichletChar& xi, long K) {
  if (xi.order() == 1)
    throw input_error("theta_series: xi must be nontrivial");
  long beta = xi.is_odd() ? 1 : 0;
  auto f = PolyQX<CycloNum>::zero({}, K, 0);
  f.w2 = 2 * beta + 1;
  long c = xi.conductor();
  f.level = 4 * c * c;
  for (long n = 1; n * n <= K; ++n) {
    CycloNum v = xi.value(n);
    if (beta == 1) v = v.scale(mpq_class(n));
    f.a[0][n * n] = v;
  }
  return f;
}

PolyQX<CycloNum> theta0_series(long K) {
  auto f = PolyQX<CycloNum>::zero({}, K, 0);
  f.w2 = 1;
  f.level = 4;
  f.a[0][0] = CycloNum(mpq_class(1));
  for (long n = 1; n * n <= K; ++n) f.a[0][n * n] = CycloNum(mpq_class(2));
  return f;
}

PolyQX<CycloNum> e2_critical(long p, long K) {
  auto f = PolyQX<CycloNum>::zero({}, K, 1);
  f.w2 = 4;
  f.level = p;
  // E_2(z) - E_2(pz) completed: the X-slot of the level-p copy is scaled by
  // 1/p, leaving -(1 - 1/p)/2.
  f.a[1][0] = CycloNum(qx_frac(1 - p, 2 * p));
  for (long n = 1; n <= K; ++n) {
    long n0 = n;
    long pm = 1;
    while (n0 % p == 0) {
      n0 /= p;
      pm *= p;
    }
    long s1 = 0;
    for (long dd = 1; dd <= n0; ++dd)
      if (n0 % dd == 0) s1 += dd;
    f.a[0][n] = CycloNum(mpq_class(pm * s1));
  }
  return f;
}

PolyQX<CycloNum> eis_half_integral(long k, const DirichletChar& chi, long K) {
  if (k < 2) throw input_error("eis_half_integral: k >= 2 required");
  if (chi.is_even() != (k % 2 == 1))
    throw input_error("eis_half_integral: parity mismatch");
  long N = chi.modulus();
  auto strip = prime_divisors(N);
  auto f = PolyQX<CycloNum>::zero({}, K, 0);
  f.w2 = 2 * k - 1;
  f.level = N;
  f.a[0][0] = dirichlet_L_nonpos(2 * k - 2, chi.pow(2), strip);
  for (long n = 1; n <= K; ++n) {
    auto sn = DirichletChar::kronecker(n);
    CycloNum Ln = dirichlet_L_nonpos(k - 1, chi * sn, strip);
    if (Ln.is_zero()) continue;
    CycloNum inner(mpq_class(0));
    for (long t1 = 1; t1 * t1 <= n; ++t1) {
      if (n % (t1 * t1)) continue;
      long mu1 = mobius(t1);
      if (mu1 == 0 || gcd_long(t1, N) != 1) continue;
      long snt1 = sn.value_int(t1);
      if (snt1 == 0) continue;
      long rest = n / (t1 * t1);
      for (long t2 = 1; t2 * t2 <= rest; ++t2) {
        if (rest % (t2 * t2) || gcd_long(t2, N) != 1) continue;
        long dd = t1 * t2 * t2;
        mpq_class w = mpq_class(mu1 * snt1 * t2) * mpq_class(pow_si(dd, k - 2));
        inner = inner + chi.value(dd).scale(w);
      }
    }
    f.a[0][n] = Ln * inner;
  }
  return f;
}

PolyQX<CycloNum> eis_half_integral_s0(long k, const DirichletChar& chi,
                                      long K) {
  if (k < 2) throw input_error("eis_half_integral_s0: k >= 2 required");
  if (chi.is_even() != (k % 2 == 1))
    throw input_error("eis_half_integral_s0: parity mismatch");
  long N = chi.modulus();
  auto strip = prime_divisors(N);
  auto f = PolyQX<CycloNum>::zero({}, K, 0);
  f.w2 = 2 * k - 1;
  f.level = N;
  // Constant term intentionally 0: L(2k-3, chi^2) is non-critical and has
  // no algebraic value against the period used for the n >= 1 slots.
  for (long n = 1; n <= K; ++n) {
    auto sn = DirichletChar::kronecker(n);
    CycloNum inner(mpq_class(0));
    for (long t1 = 1; t1 * t1 <= n; ++t1) {
      if (n % (t1 * t1)) continue;
      long mu1 = mobius(t1);
      if (mu1 == 0 || gcd_long(t1, N) != 1) continue;
      long snt1 = sn.value_int(t1);
      if (snt1 == 0) continue;
      long rest = n / (t1 * t1);
      for (long t2 = 1; t2 * t2 <= rest; ++t2) {
        if (rest % (t2 * t2) || gcd_long(t2, N) != 1) continue;
        long dd = t1 * t2 * t2;
        mpq_class w = mpq_class(mu1 * snt1 * t2) / mpq_class(pow_si(dd, k - 1));
        w.canonicalize();
        inner = inner + chi.value(dd).scale(w);
      }
    }
    if (inner.is_zero()) continue;
    CycloNum Ln = critical_L_over_period(k - 1, (chi * sn).inverse(), strip);
    f.a[0][n] = Ln * inner;
  }
  return f;
}

// ---------------------------------------------------------------------------
// p-adic embedding.
// ---------------------------------------------------------------------------

PadicElem cyclo_to_padic(const CycloNum& x, long p, int M) {
  // Canonicalize to the smallest cyclotomic subfield first: recognizing
  // Q_p-rational values is easiest (and for composite orders only possible)
  // in the minimal representation.
  auto v = embed_padic(x.demote(), p, M).as_padic();
  if (!v) throw input_error("cyclo_to_padic: value does not lie in Q_p");
  return *v;
}

PolyQX<PadicElem> qx_embed(const PolyQX<CycloNum>& f, long p, int M) {
  qx_ring<PadicElem>::Desc d{p, M};
  auto h = PolyQX<PadicElem>::zero(d, f.K, f.r);
  h.w2 = f.w2;
  h.level = f.level;
  h.fs2 = f.fs2;
  for (long i = 0; i <= f.r; ++i)
    for (long n = 0; n <= f.K; ++n)
      if (!f.a[i][n].is_zero()) h.a[i][n] = cyclo_to_padic(f.a[i][n], p, M);
  return h;
}

// ---------------------------------------------------------------------------
// One-variable L-series in the weight variable.
// ---------------------------------------------------------------------------

namespace {

IwasawaSeries lp_series_impl(const KLContext& ctx, const DirichletChar& eps,
                             const DirichletChar& tame, long t, int len,
                             int T, bool plus, const CycloNum* scale) {
  long p = ctx.p;
  long m0 = std::max(0L, -t);
  std::vector<PadicElem> values;
  values.reserve(T);
  for (int i = 0; i < T; ++i) {
    long m = m0 + i;
    auto em = eps * omega_pow(p, -m);
    CycloNum v = plus ? klplus_moment(ctx, tame, em, m + t + 1)
                      : kl_moment(ctx, tame, em, m + t + 1);
    if (scale) v = v * *scale;
    values.push_back(cyclo_to_padic(v, p, ctx.prec));
  }
  // The bounded (measure) side is a genuine Iwasawa series and is truncated
  // to len coefficients.  The critical side grows unboundedly in the weight
  // (the moments pick up powers of p), so no truncation converges; there the
  // full degree-(T-1) Newton polynomial is kept, which reproduces the node
  // values exactly and is the finite moment data consumed downstream.
  return iwasawa_from_node_values(values, m0, unit_part(ctx.b, p, ctx.prec),
                                  plus ? T : len);
}

// Full-length polynomial product (operator* truncates to the shorter
// factor, which would discard low-valuation cross terms of the critical
// families).
IwasawaSeries mul_full(const IwasawaSeries& a, const IwasawaSeries& b) {
  int la = a.length(), lb = b.length();
  auto r = IwasawaSeries::zero(a.p(), la + lb - 1);
  for (int i = 0; i < la; ++i) {
    if (a.coeff(i).is_exact_zero()) continue;
    for (int j = 0; j < lb; ++j)
      r.coeffs()[i + j] = r.coeffs()[i + j] + a.coeff(i) * b.coeff(j);
  }
  return r;
}

}  // namespace

IwasawaSeries lp_series(const KLContext& ctx, const DirichletChar& eps,
                        const DirichletChar& tame, long t, int len, int T) {
  return lp_series_impl(ctx, eps, tame, t, len, T, false, nullptr);
}

IwasawaSeries lp_plus_series(const KLContext& ctx, const DirichletChar& eps,
                             const DirichletChar& tame, long t, int len,
                             int T) {
  return lp_series_impl(ctx, eps, tame, t, len, T, true, nullptr);
}

// ---------------------------------------------------------------------------
// Eisenstein families.
// ---------------------------------------------------------------------------

EisTilde eis_family_tilde(long p, long b, long K, int len, int M) {
  KLContext ctx{p, 1, b, M, 0};
  auto triv = DirichletChar::trivial(1);
  PadicElem u = unit_part(b, p, M);
  PadicElem logu = iwasawa_log(u);
  int T = len + 4;
  std::vector<PadicElem> values;
  values.reserve(T);
  for (int m = 0; m < T; ++m)
    values.push_back(cyclo_to_padic(
        kl_moment(ctx, triv, omega_pow(p, -m - 1), m + 1), p, M));
  IwasawaSeries H = iwasawa_from_node_values(values, 0, u, len);
  EisTilde out;
  out.u = u;
  // The regularizing factor of the moment at weight node k is exactly
  // 1 - u^k = -S, so recentering by one step and negating yields S zeta*.
  out.zstar_s = -H.recenter(-1, u);
  qx_ring<IwasawaSeries>::Desc d{p, M, len};
  out.reg = FamilyQX::zero(d, K, 0);
  out.reg.level = p;
  PadicElem half = PadicElem::from_rational(qx_frac(1, 2), p, M);
  out.reg.a[0][0] = out.zstar_s.scale(half);
  for (long n = 1; n <= K; ++n) {
    IwasawaSeries sig = IwasawaSeries::zero(p, len);
    for (long dd = 1; dd <= n; ++dd) {
      if (n % dd || dd % p == 0) continue;
      PadicElem inv_d = PadicElem::from_rational(qx_frac(1, dd), p, M);
      sig = sig + one_unit_power_series(ell_of(dd, logu, p, M), len)
                      .scale(inv_d);
    }
    out.reg.a[0][n] = mul_S(sig);
  }
  return out;
}

FamilyQX eis_family_normalized(const EisTilde& E) {
  FamilyQX F = E.reg;
  long p = F.ring.p;
  PadicElem two = PadicElem::from_integer(2, p, F.ring.M);
  IwasawaSeries c = E.zstar_s.inv().scale(two);
  for (long n = 0; n <= F.K; ++n) F.a[0][n] = F.a[0][n] * c;
  return F;
}

namespace {

/// The Moebius-sieved divisor factor shared by the measure families:
///   sum_{t1^2 t2^2 | n, gcd(t1 t2, Dp) = 1}
///     wt(t1, t2) mu(t1) chi(t1 t2^2) sigma_n(t1) kappa^{dir}(t1 t2^2),
/// with wt = t1^{-2} t2^{-3}, dir = +1 for the minus-side families and
/// wt = t1 t2^3, dir = -1 for the plus side.
IwasawaSeries inner_divisor_series(long n, const DirichletChar& sn,
                                   const DirichletChar& chi, long Dp,
                                   const PadicElem& logu, long p, int M,
                                   int len, bool plus) {
  IwasawaSeries inner = IwasawaSeries::zero(p, len);
  for (long t1 = 1; t1 * t1 <= n; ++t1) {
    if (n % (t1 * t1)) continue;
    long mu1 = mobius(t1);
    if (mu1 == 0 || gcd_long(t1, Dp) != 1) continue;
    long snt1 = sn.value_int(t1);
    if (snt1 == 0) continue;
    long rest = n / (t1 * t1);
    for (long t2 = 1; t2 * t2 <= rest; ++t2) {
      if (rest % (t2 * t2) || gcd_long(t2, Dp) != 1) continue;
      long dd = t1 * t2 * t2;
      CycloNum cv = chi.value(dd);
      if (cv.is_zero()) continue;
      mpq_class w = plus ? mpq_class(mu1 * snt1 * t1 * t2 * t2 * t2)
                         : qx_frac(mu1 * snt1, t1 * t1 * t2 * t2 * t2);
      PadicElem sc =
          cyclo_to_padic(cv, p, M) * PadicElem::from_rational(w, p, M);
      PadicElem ell = ell_of(dd, logu, p, M);
      if (plus) ell = -ell;
      inner = inner + one_unit_power_series(ell, len).scale(sc);
    }
  }
  return inner;
}

}  // namespace

FamilyQX cal_E(const DirichletChar& eps, const KLContext& ctx, long K,
               int len, int T) {
  long p = ctx.p;
  int M = ctx.prec;
  qx_ring<IwasawaSeries>::Desc d{p, M, len};
  FamilyQX F = FamilyQX::zero(d, K, 0);
  F.level = ctx.D * p;
  F.fs2 = -1;
  PadicElem logu = iwasawa_log(unit_part(ctx.b, p, M));
  for (long n = 1; n <= K; ++n) {
    if (n % p == 0) continue;
    auto sn = DirichletChar::kronecker(n);
    IwasawaSeries G = lp_series(ctx, eps, sn, -2, len, T);
    IwasawaSeries inner = inner_divisor_series(n, sn, eps, ctx.D * p, logu,
                                               p, M, len, false);
    F.a[0][n] = G * inner;
  }
  return F;
}

FamilyQX cal_E_plus(const DirichletChar& chi, const KLContext& ctx, long K,
                    int len, int T) {
  long p = ctx.p;
  int M = ctx.prec;
  qx_ring<IwasawaSeries>::Desc d{p, M, len};
  FamilyQX F = FamilyQX::zero(d, K, 0);
  F.level = ctx.D * p;
  F.fs2 = -1;
  PadicElem logu = iwasawa_log(unit_part(ctx.b, p, M));
  for (long n = 1; n <= K; ++n) {
    if (n % p == 0) continue;
    auto sn = DirichletChar::kronecker(n);
    // The critical values carry the inverse Gauss sum of the tame part of
    // chi sigma_n (the wild parts cancel inside klplus_moment).  That factor
    // is independent of the weight node, so multiplying each slot by the
    // tame Gauss sum keeps the coefficients inside Z_p[[S]].
    CycloNum g = gauss_sum((chi * sn).split_at(p).first.primitive());
    IwasawaSeries G = lp_series_impl(ctx, chi, sn, -2, len, T, true, &g);
    IwasawaSeries inner = inner_divisor_series(n, sn, chi, ctx.D * p, logu,
                                               p, M, len, true);
    F.a[0][n] = mul_full(G, inner);
  }
  return F;
}

FamilyQX cal_E_improved(const DirichletChar& xi_pr,
                        const DirichletChar& psi_pr, long k0,
                        const KLContext& ctx, long K, int len, int T) {
  long p = ctx.p;
  int M = ctx.prec;
  auto chi_pr = DirichletChar::kronecker(-1) * psi_pr * xi_pr;
  auto chi = chi_pr * omega_pow(p, 2 - k0);
  auto chi2 = chi_pr.pow(2);
  PadicElem u = unit_part(ctx.b, p, M);
  PadicElem logu = iwasawa_log(u);
  qx_ring<IwasawaSeries>::Desc d{p, M, len};
  FamilyQX F = FamilyQX::zero(d, K, 0);
  F.level = ctx.D * p;
  F.fs2 = -1;
  // First summand: (1 - chi'(b) kappa(u) b^{1-k0}) L_p(kappa^2[-4-2k0],
  // chi'^2, 1, b); kappa(u) = 1 + S.
  auto triv = DirichletChar::trivial(1);
  long m0 = k0 + 2;
  std::vector<PadicElem> vals;
  vals.reserve(T);
  for (int i = 0; i < T; ++i) {
    long m = m0 + i;
    auto em = chi2 * omega_pow(p, -2 * m);
    vals.push_back(cyclo_to_padic(
        kl_moment(ctx, triv, em, 2 * m - 3 - 2 * k0), p, M));
  }
  IwasawaSeries F2 = iwasawa_from_node_values(vals, m0, u, len);
  PadicElem c1 = cyclo_to_padic(chi_pr.value(ctx.b), p, M) *
                 PadicElem::from_rational(mpq_pow(ctx.b, 1 - k0), p, M);
  IwasawaSeries f1 = IwasawaSeries::zero(p, len);
  f1.coeffs()[0] = PadicElem::from_integer(1, p, M) - c1;
  if (len > 1) f1.coeffs()[1] = -c1;
  F.a[0][0] = f1 * F2;
  // Second summand: (1 - chi'^2(b) kappa(b^2) b^{-2k0-4}) times the sieved
  // divisor families; kappa(b^2) = (1 + S)^2.
  PadicElem c2 = cyclo_to_padic(chi2.value(ctx.b), p, M) *
                 PadicElem::from_rational(mpq_pow(ctx.b, -2 * k0 - 4), p, M);
  IwasawaSeries f2 = IwasawaSeries::zero(p, len);
  f2.coeffs()[0] = PadicElem::from_integer(1, p, M) - c2;
  if (len > 1) f2.coeffs()[1] = -(c2 + c2);
  if (len > 2) f2.coeffs()[2] = -c2;
  for (long n = 1; n <= K; ++n) {
    if (n % p == 0) continue;
    auto sn = DirichletChar::kronecker(n);
    IwasawaSeries G = lp_series(ctx, chi, sn, -k0, len, T);
    IwasawaSeries inner = inner_divisor_series(n, sn, chi, ctx.D * p, logu,
                                               p, M, len, false);
    F.a[0][n] = f2 * G * inner;
  }
  return F;
}

PadicElem nu_k_value(const DirichletChar& chi, long k, long n, long p,
                     int M) {
  long leg = DirichletChar::teichmuller_power(p, (p - 1) / 2).value_int(n);
  PadicElem one = PadicElem::from_integer(1, p, M);
  if (leg == 0) return one;
  PadicElem lg = PadicElem::from_integer(leg, p, M);
  auto num_c = (chi * omega_pow(p, k)).primitive();
  auto den_c = (chi.inverse() * omega_pow(p, -k)).primitive();
  PadicElem num = one - lg * cyclo_to_padic(num_c.value(p), p, M) *
                            PadicElem::from_rational(mpq_pow(p, k - 3), p, M);
  PadicElem den = one - lg * cyclo_to_padic(den_c.value(p), p, M) *
                            PadicElem::from_rational(mpq_pow(p, 2 - k), p, M);
  return num / den;
}

}  // namespace symsq
