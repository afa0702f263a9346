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

#include "symsq/klmeasure.hpp"

#include <algorithm>

namespace symsq {

namespace {

long ipow(long b, long e) {
  long r = 1;
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

std::vector<long> prime_divisors(long n) {
  std::vector<long> out;
  for (const auto& qe : factorize(n)) out.push_back(qe.first);
  return out;
}

long lcm_long(long a, long b) { return a / gcd_long(a, b) * b; }

/// Exponent of (Z/m)^* (the Carmichael function).
long carmichael(long m) {
  long lam = 1;
  for (auto& [q, e] : factorize(m)) {
    long comp;
    if (q == 2)
      comp = (e <= 2) ? (e == 2 ? 2 : 1) : ipow(2, e - 2);
    else
      comp = ipow(q, e - 1) * (q - 1);
    lam = lcm_long(lam, comp);
  }
  return lam;
}

/// v_p(j!) by Legendre's formula.
long fact_valuation(long j, long p) {
  long v = 0;
  for (long q = p; q <= j; q *= p) v += j / q;
  return v;
}

/// Reduce the absolute precision of x to at most `abs` digits.
ExtElem cap_abs_prec(const ExtElem& x, long abs) {
  long newprec = abs - x.pshift();
  if (newprec >= x.prec()) return x;
  if (newprec <= 0)
    return ExtElem(x.ring(),
                   std::vector<mpz_class>(x.ring()->degree(), mpz_class(0)), 1,
                   abs - 1);
  return ExtElem(x.ring(), x.coeffs(), static_cast<int>(newprec), x.pshift());
}

}  // namespace

CycloNum kl_moment(const KLContext& ctx, const DirichletChar& chi,
                   const DirichletChar& eps, long m) {
  if (m < 1) throw input_error("kl_moment: m >= 1 required");
  DirichletChar eta = chi * eps;
  // Regularization with the full eta(b): required for the inverted cylinder
  // values to be p-integral (for tame eta this agrees with the prime-to-p
  // part, since the wild component is trivial).
  CycloNum pre = CycloNum(mpq_class(1)) -
                 eta.value(ctx.b) * CycloNum(mpq_class(pow_si(ctx.b, m)));
  std::vector<long> strip = prime_divisors(ctx.D * ctx.p);
  return pre * dirichlet_L_nonpos(m, eta, strip);
}

CycloNum klplus_moment(const KLContext& ctx, const DirichletChar& chi,
                       const DirichletChar& eps, long m) {
  if (m < 1) throw input_error("klplus_moment: m >= 1 required");
  DirichletChar eta = chi * eps;
  long a = eta.is_odd() ? 1 : 0;
  if ((m - a) % 2 != 0) return CycloNum(mpq_class(0));
  CycloNum pre = CycloNum(mpq_class(1)) -
                 eta.value(ctx.b) * CycloNum(mpq_class(pow_si(ctx.b, m)));
  DirichletChar eta0 = eta.primitive();
  CycloNum eulp = CycloNum(mpq_class(1)) -
                  eta0.value(ctx.p) * CycloNum(mpq_class(pow_si(ctx.p, m - 1)));
  DirichletChar wild = eta.split_at(ctx.p).second.primitive();
  long cp = (wild.conductor() == 1) ? 0 : valuation(wild.conductor(), ctx.p);
  CycloNum G = (cp == 0) ? CycloNum(mpq_class(1)) : gauss_sum(wild);
  mpq_class pshift(pow_si(ctx.p, (m - 1) * cp));
  CycloNum crit =
      critical_L_over_period(m, eta0, prime_divisors(ctx.D));
  return pre * eulp * G * crit.scale(pshift);
}

MomentOracle kl_oracle(const KLContext& ctx, const DirichletChar& chi) {
  return [ctx, chi](const DirichletChar& eta, long m) {
    return kl_moment(ctx, chi, eta, m);
  };
}

long CylinderMeasure::level_modulus(long n) const { return D * ipow(p, n); }

const ExtElem& CylinderMeasure::value(long a, long n) const {
  const auto& lvl = values.at(n);
  long m = level_modulus(n);
  long r = ((a % m) + m) % m;
  return lvl.at(r);
}

bool CylinderMeasure::distribution_check(long tol) const {
  for (long n = 1; n <= n_max; ++n) {
    long mlo = level_modulus(n - 1);
    long mhi = level_modulus(n);
    for (long a = 0; a < mlo; ++a) {
      if (gcd_long(a, mlo) != 1 && mlo > 1) continue;
      ExtElem sum = ExtElem::zero(ring, prec);
      for (long t = 0; t < mhi / mlo; ++t) {
        long lift = a + t * mlo;
        if (gcd_long(lift, mhi) != 1) continue;
        sum = sum + values[n][lift];
      }
      if (!sum.eq_mod(values[n - 1][a], tol)) return false;
    }
  }
  return true;
}

long CylinderMeasure::min_valuation() const {
  long best = prec;
  bool seen = false;
  for (const auto& lvl : values)
    for (const auto& v : lvl) {
      auto mv = v.min_valuation();
      if (mv) {
        best = seen ? std::min(best, *mv) : *mv;
        seen = true;
      }
    }
  return seen ? best : prec;
}

CylinderMeasure cylinders_from_moments(const MomentOracle& oracle, long p,
                                       long D, long n_max, int M,
                                       long extra_order) {
  CylinderMeasure mu;
  mu.p = p;
  mu.D = D;
  mu.n_max = n_max;
  mu.prec = M;
  long mtop = D * ipow(p, n_max);
  mu.ring_order = lcm_long(std::max(carmichael(mtop), 1L), extra_order);
  mu.ring = embed_ring(mu.ring_order, p);
  mu.values.resize(n_max + 1);
  for (long n = 0; n <= n_max; ++n) {
    long mn = mu.level_modulus(n);
    mu.values[n].assign(mn, ExtElem::zero(mu.ring, M));
    std::vector<DirichletChar> chars;
    if (mn == 1)
      chars.push_back(DirichletChar::trivial(1));
    else
      chars = DirichletChar::all_mod(mn);
    PadicElem inv_phi = PadicElem::from_rational(
        mpq_class(1, euler_phi(mn)), p, M);
    for (const auto& eta : chars) {
      CycloNum mom = oracle(eta, 1);
      ExtElem mom_emb = embed_padic(mom, p, M, mu.ring_order);
      long R = eta.order();
      // Rotation table: rot[j] = mom_emb * zeta_R^{-j}.
      ExtElem zInv = (R == 1) ? ExtElem::one(mu.ring, M)
                              : embed_padic(CycloNum::zeta(R, R - 1), p, M,
                                            mu.ring_order);
      std::vector<ExtElem> rot(R);
      rot[0] = mom_emb;
      for (long j = 1; j < R; ++j) rot[j] = rot[j - 1] * zInv;
      for (long a = 0; a < mn; ++a) {
        auto e = eta.exponent(a);
        if (!e && mn > 1) continue;
        long j = e ? *e : 0;
        mu.values[n][a] = mu.values[n][a] + rot[j];
      }
    }
    for (long a = 0; a < mn; ++a)
      mu.values[n][a] = mu.values[n][a].scale(inv_phi);
  }
  return mu;
}

namespace {

ExtElem mellin_eval_impl(const CylinderMeasure& mu, const DirichletChar& eps,
                         const std::function<PadicElem(const PadicElem&)>& pw) {
  long p = mu.p;
  if (mu.ring_order % eps.order() != 0)
    throw input_error("mellin_eval: character order not in measure ring");
  long mn = mu.level_modulus(mu.n_max);
  ExtElem acc = ExtElem::zero(mu.ring, mu.prec);
  for (long a = 0; a < mn; ++a) {
    if (gcd_long(a, mn) != 1 && mn > 1) continue;
    const ExtElem& v = mu.values[mu.n_max][a];
    CycloNum ev = eps.value(a);
    if (ev.is_zero()) continue;
    PadicElem au = PadicElem::from_integer(a == 0 ? 1 : a, p, mu.prec);
    PadicElem one_unit = one_unit_decompose(au).second;
    ExtElem term = v.scale(pw(one_unit));
    if (!(ev.is_rational() && ev.rational() == 1))
      term = term * embed_padic(ev, p, mu.prec, mu.ring_order);
    acc = acc + term;
  }
  long cap = mu.n_max + std::min(0L, mu.min_valuation());
  return cap_abs_prec(acc, cap);
}

}  // namespace

ExtElem mellin_eval(const CylinderMeasure& mu, const DirichletChar& eps,
                    const PadicElem& s) {
  return mellin_eval_impl(mu, eps, [&](const PadicElem& z) {
    if (s.is_exact_zero()) return PadicElem::from_integer(1, mu.p, mu.prec);
    return padic_exp(s * iwasawa_log(z));
  });
}

ExtElem mellin_eval(const CylinderMeasure& mu, const DirichletChar& eps,
                    long s) {
  return mellin_eval_impl(
      mu, eps, [&](const PadicElem& z) { return z.pow(s); });
}

IwasawaSeries iwasawa_series_of(const CylinderMeasure& mu,
                                const DirichletChar& tame, const PadicElem& u,
                                int M_S) {
  long p = mu.p;
  if (mu.ring_order % tame.order() != 0)
    throw input_error("iwasawa_series_of: character order not in ring");
  long mn = mu.level_modulus(mu.n_max);
  PadicElem logu = iwasawa_log(u);
  std::vector<ExtElem> cj(M_S, ExtElem::zero(mu.ring, mu.prec));
  for (long a = 0; a < mn; ++a) {
    if (gcd_long(a, mn) != 1 && mn > 1) continue;
    CycloNum tv = tame.value(a);
    if (tv.is_zero()) continue;
    PadicElem au = PadicElem::from_integer(a == 0 ? 1 : a, p, mu.prec);
    PadicElem ell = iwasawa_log(one_unit_decompose(au).second) / logu;
    IwasawaSeries bin = one_unit_power_series(ell, M_S);
    ExtElem base = mu.values[mu.n_max][a];
    if (!(tv.is_rational() && tv.rational() == 1))
      base = base * embed_padic(tv, p, mu.prec, mu.ring_order);
    for (int j = 0; j < M_S; ++j)
      cj[j] = cj[j] + base.scale(bin.coeff(j));
  }
  std::vector<PadicElem> coeffs(M_S);
  long vmin = std::min(0L, mu.min_valuation());
  for (int j = 0; j < M_S; ++j) {
    auto red = cj[j].as_padic();
    if (!red)
      throw precision_error(
          "iwasawa_series_of: coefficient not p-rational at this precision");
    long cap = mu.n_max - 1 - fact_valuation(j, p) + vmin;
    PadicElem c = *red;
    long abs = cap;
    if (!c.is_exact_zero()) abs = std::min(abs, c.abs_prec());
    if (c.is_zero() || abs <= c.val())
      c = PadicElem::zero_at(p, abs);
    else
      c = c.cap_prec(static_cast<int>(abs - c.val()));
    coeffs[j] = c;
  }
  return IwasawaSeries(p, std::move(coeffs));
}

}  // namespace symsq
