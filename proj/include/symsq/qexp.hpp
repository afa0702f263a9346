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

#ifndef SYMSQ_QEXP_HPP
#define SYMSQ_QEXP_HPP

#include <functional>
#include <optional>
#include <vector>

#include "symsq/cyclo.hpp"
#include "symsq/dirichlet.hpp"
#include "symsq/iwasawa.hpp"

namespace symsq {

// ---------------------------------------------------------------------------
// Coefficient-ring traits.  PolyQX is generic over exact rationals, exact
// cyclotomics, capped-precision p-adics, and Iwasawa series (weight
// families); arithmetic uses the ring's own operators, the traits only
// manufacture constants.
// ---------------------------------------------------------------------------

template <class R>
struct qx_ring;

/// Canonicalized rational n/d (GMP's two-argument constructor does not
/// reduce, and non-canonical mpq values break comparisons).
inline mpq_class qx_frac(long n, long d) {
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

template <>
struct qx_ring<mpq_class> {
  struct Desc {};
  static mpq_class zero(const Desc&) { return mpq_class(0); }
  static mpq_class from_mpq(const Desc&, const mpq_class& x) { return x; }
  static bool is_zero(const mpq_class& x) { return x == 0; }
};

template <>
struct qx_ring<CycloNum> {
  struct Desc {};
  static CycloNum zero(const Desc&) { return CycloNum(mpq_class(0)); }
  static CycloNum from_mpq(const Desc&, const mpq_class& x) {
    return CycloNum(x);
  }
  static bool is_zero(const CycloNum& x) { return x.is_zero(); }
};

template <>
struct qx_ring<PadicElem> {
  struct Desc {
    long p = 5;
    int M = 12;
  };
  static PadicElem zero(const Desc& d) { return PadicElem::zero(d.p); }
  static PadicElem from_mpq(const Desc& d, const mpq_class& x) {
    return PadicElem::from_rational(x, d.p, d.M);
  }
  static bool is_zero(const PadicElem& x) { return x.is_zero(); }
};

template <>
struct qx_ring<IwasawaSeries> {
  struct Desc {
    long p = 5;
    int M = 12;
    int len = 8;  ///< S-series truncation length
  };
  static IwasawaSeries zero(const Desc& d) {
    return IwasawaSeries::zero(d.p, d.len);
  }
  static IwasawaSeries from_mpq(const Desc& d, const mpq_class& x) {
    return IwasawaSeries::constant(PadicElem::from_rational(x, d.p, d.M),
                                   d.len);
  }
  static bool is_zero(const IwasawaSeries& x) {
    for (int j = 0; j < x.length(); ++j)
      if (!x.coeff(j).is_zero()) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// Truncated polynomial q-expansions  sum_{i <= r} sum_{n <= K} a[i][n] X^i q^n.
//
// The weight tag is stored doubled (w2 = 2 * weight) so half-integral
// weights remain integers.  For families (R = IwasawaSeries) the weight tag
// is the shift t of the symbol kappa[t]; specializing at S = u^k - 1 then
// produces weight k + t.
// ---------------------------------------------------------------------------

template <class R>
struct PolyQX {
  using Traits = qx_ring<R>;
  using Desc = typename Traits::Desc;

  Desc ring;
  long K = 0;         ///< coefficients stored for q^0..q^K
  long r = 0;         ///< X-degree bound; a.size() == r + 1
  long w2 = 0;        ///< twice the weight tag
  long level = 1;     ///< level tag (bookkeeping only)
  long fs2 = 0;       ///< twice the t in kappa[t] (families only); doubled so
                      ///< half-integral shifts stay integral, like w2
  std::vector<std::vector<R>> a;

  static PolyQX zero(const Desc& d, long K, long r = 0) {
    PolyQX f;
    f.ring = d;
    f.K = K;
    f.r = r;
    f.a.assign(r + 1, std::vector<R>(K + 1, Traits::zero(d)));
    return f;
  }

  const R& at(long i, long n) const { return a.at(i).at(n); }
  R& at(long i, long n) { return a.at(i).at(n); }

  bool row_is_zero(long i) const {
    for (const R& x : a[i])
      if (!Traits::is_zero(x)) return false;
    return true;
  }

  bool is_zero() const {
    for (long i = 0; i <= r; ++i)
      if (!row_is_zero(i)) return false;
    return true;
  }

  /// Drop q-coefficients beyond newK (newK <= K).
  PolyQX truncated(long newK) const {
    PolyQX g = *this;
    g.K = std::min(newK, K);
    for (auto& row : g.a) row.resize(g.K + 1);
    return g;
  }
};

using FamilyQX = PolyQX<IwasawaSeries>;

// ---------------------------------------------------------------------------
// Linear-space helpers.
// ---------------------------------------------------------------------------

template <class R>
PolyQX<R> qx_add(const PolyQX<R>& f, const PolyQX<R>& g) {
  long K = std::min(f.K, g.K);
  long r = std::max(f.r, g.r);
  PolyQX<R> h = PolyQX<R>::zero(f.ring, K, r);
  h.w2 = f.w2;
  h.level = std::max(f.level, g.level);
  h.fs2 = f.fs2;
  for (long i = 0; i <= r; ++i)
    for (long n = 0; n <= K; ++n) {
      if (i <= f.r) h.a[i][n] = h.a[i][n] + f.a[i][n];
      if (i <= g.r) h.a[i][n] = h.a[i][n] + g.a[i][n];
    }
  return h;
}

template <class R>
PolyQX<R> qx_neg(const PolyQX<R>& f) {
  PolyQX<R> h = f;
  for (auto& row : h.a)
    for (R& x : row) x = -x;
  return h;
}

template <class R>
PolyQX<R> qx_sub(const PolyQX<R>& f, const PolyQX<R>& g) {
  return qx_add(f, qx_neg(g));
}

template <class R>
PolyQX<R> qx_scale(const PolyQX<R>& f, const R& c) {
  PolyQX<R> h = f;
  for (auto& row : h.a)
    for (R& x : row) x = x * c;
  return h;
}

template <class R>
PolyQX<R> qx_scale_mpq(const PolyQX<R>& f, const mpq_class& c) {
  return qx_scale(f, qx_ring<R>::from_mpq(f.ring, c));
}

/// Multiply by X^j (degree bound grows).
template <class R>
PolyQX<R> x_mul(const PolyQX<R>& f, long j) {
  PolyQX<R> h = PolyQX<R>::zero(f.ring, f.K, f.r + j);
  h.w2 = f.w2;
  h.level = f.level;
  h.fs2 = f.fs2;
  for (long i = 0; i <= f.r; ++i) h.a[i + j] = f.a[i];
  return h;
}

/// Cauchy product; q-truncations take the min, X-degrees and weight tags
/// add, level tags combine by max (callers track true levels).
template <class R>
PolyQX<R> qx_mul(const PolyQX<R>& f, const PolyQX<R>& g) {
  long K = std::min(f.K, g.K);
  PolyQX<R> h = PolyQX<R>::zero(f.ring, K, f.r + g.r);
  h.w2 = f.w2 + g.w2;
  h.level = std::max(f.level, g.level);
  h.fs2 = f.fs2 + g.fs2;
  for (long i = 0; i <= f.r; ++i)
    for (long j = 0; j <= g.r; ++j)
      for (long n = 0; n <= K; ++n) {
        if (qx_ring<R>::is_zero(f.a[i][n])) continue;
        for (long m = 0; n + m <= K; ++m)
          h.a[i + j][n + m] = h.a[i + j][n + m] + f.a[i][n] * g.a[j][m];
      }
  return h;
}

// ---------------------------------------------------------------------------
// Operator calculus.
// ---------------------------------------------------------------------------

/// Theta = q d/dq iterated t times: a[i][n] -> n^t a[i][n]; weight +2t.
template <class R>
PolyQX<R> theta_op(const PolyQX<R>& f, long t = 1) {
  PolyQX<R> h = f;
  h.w2 = f.w2 + 4 * t;
  for (long n = 0; n <= f.K; ++n) {
    mpq_class nt = 1;
    for (long s = 0; s < t; ++s) nt *= n;
    R c = qx_ring<R>::from_mpq(f.ring, nt);
    for (long i = 0; i <= f.r; ++i) h.a[i][n] = f.a[i][n] * c;
  }
  return h;
}

/// Formal d/dX: degree drops by one; weight -2.
template <class R>
PolyQX<R> eps_op(const PolyQX<R>& f) {
  PolyQX<R> h = PolyQX<R>::zero(f.ring, f.K, std::max(f.r - 1, 0L));
  h.w2 = f.w2 - 4;
  h.level = f.level;
  h.fs2 = f.fs2;
  for (long i = 1; i <= f.r; ++i) {
    R c = qx_ring<R>::from_mpq(f.ring, mpq_class(i));
    for (long n = 0; n <= f.K; ++n) h.a[i - 1][n] = f.a[i][n] * c;
  }
  return h;
}

/// The weight-raising (Maass) operator delta_k = Theta + k X - X^2 eps on
/// expansions of any degree, with k read off the weight tag (k = w2/2,
/// half-integral allowed).  On X^i-components this is
///   Theta(f_i) X^i + (k - i) f_i X^{i+1}.
template <class R>
PolyQX<R> delta_one(const PolyQX<R>& f) {
  PolyQX<R> h = PolyQX<R>::zero(f.ring, f.K, f.r + 1);
  h.w2 = f.w2 + 4;
  h.level = f.level;
  h.fs2 = f.fs2;
  for (long i = 0; i <= f.r; ++i) {
    R ki = qx_ring<R>::from_mpq(f.ring, qx_frac(f.w2 - 2 * i, 2));
    for (long n = 0; n <= f.K; ++n) {
      R cn = qx_ring<R>::from_mpq(f.ring, mpq_class(n));
      h.a[i][n] = h.a[i][n] + f.a[i][n] * cn;
      h.a[i + 1][n] = h.a[i + 1][n] + f.a[i][n] * ki;
    }
  }
  return h;
}

/// Closed-form power  delta_k^s = sum_j binom(s,j) (k+s-1)...(k+s-j)
/// Theta^{s-j} X^j  applied verbatim (equals the s-fold iterate of delta_one
/// on holomorphic input).  Output degree r+s, weight k+2s.
template <class R>
PolyQX<R> delta_pow(const PolyQX<R>& f, long s) {
  PolyQX<R> h = PolyQX<R>::zero(f.ring, f.K, f.r + s);
  h.w2 = f.w2 + 4 * s;
  h.level = f.level;
  h.fs2 = f.fs2;
  for (long j = 0; j <= s; ++j) {
    // binom(s, j) * (k+s-1)(k+s-2)...(k+s-j), with k = w2/2.
    mpq_class c(binomial_mpz(s, j));
    for (long t = 1; t <= j; ++t) c *= qx_frac(f.w2 + 2 * s - 2 * t, 2);
    if (c == 0) continue;
    PolyQX<R> term = x_mul(theta_op(f, s - j), j);
    h = qx_add(h, qx_scale_mpq(term, c));
    h.w2 = f.w2 + 4 * s;
  }
  return h;
}

/// Family weight-raising operator: Theta F_i X^i + (logkappa + t - i) F_i
/// X^{i+1}, where logkappa is the series log(1+S)/log(u) and t = fs2/2 the
/// family's kappa[t] shift (half-integral t allowed).  Specializing at
/// S = u^k - 1 commutes with delta_one.
inline FamilyQX delta_family(const FamilyQX& F, const IwasawaSeries& logkappa) {
  FamilyQX h = FamilyQX::zero(F.ring, F.K, F.r + 1);
  h.level = F.level;
  h.fs2 = F.fs2 + 4;
  for (long i = 0; i <= F.r; ++i) {
    IwasawaSeries ki =
        logkappa + IwasawaSeries::constant(
                       PadicElem::from_rational(qx_frac(F.fs2 - 2 * i, 2),
                                                F.ring.p, F.ring.M),
                       F.ring.len);
    for (long n = 0; n <= F.K; ++n) {
      PadicElem cn = PadicElem::from_integer(n, F.ring.p, F.ring.M);
      h.a[i][n] = h.a[i][n] + F.a[i][n].scale(cn);
      h.a[i + 1][n] = h.a[i + 1][n] + F.a[i][n] * ki;
    }
  }
  return h;
}

/// U_p: a[i][n] -> p^i a[i][pn]; the q-truncation drops to floor(K/p).
template <class R>
PolyQX<R> up_op(const PolyQX<R>& f, long p) {
  PolyQX<R> h = PolyQX<R>::zero(f.ring, f.K / p, f.r);
  h.w2 = f.w2;
  h.level = f.level;
  h.fs2 = f.fs2;
  mpq_class pi = 1;
  for (long i = 0; i <= f.r; ++i) {
    R c = qx_ring<R>::from_mpq(f.ring, pi);
    for (long n = 0; n <= h.K; ++n) h.a[i][n] = f.a[i][p * n] * c;
    pi *= p;
  }
  return h;
}

/// [t]: f(q) -> f(q^t).  K unchanged (upper coefficients are zero-padded
/// from the source's low coefficients).
template <class R>
PolyQX<R> shift_op(const PolyQX<R>& f, long t) {
  PolyQX<R> h = PolyQX<R>::zero(f.ring, f.K, f.r);
  h.w2 = f.w2;
  h.level = f.level * t;
  h.fs2 = f.fs2;
  for (long i = 0; i <= f.r; ++i)
    for (long n = 0; n * t <= f.K; ++n) h.a[i][n * t] = f.a[i][n];
  return h;
}

/// Coefficient twist a[i][n] -> w(n) a[i][n].
template <class R>
PolyQX<R> twist_op(const PolyQX<R>& f, const std::function<R(long)>& w) {
  PolyQX<R> h = f;
  for (long n = 0; n <= f.K; ++n) {
    R c = w(n);
    for (long i = 0; i <= f.r; ++i) h.a[i][n] = f.a[i][n] * c;
  }
  return h;
}

/// Twist by a quadratic (or trivial) character via its +-1/0 values.
template <class R>
PolyQX<R> twist_quadratic(const PolyQX<R>& f, const DirichletChar& chi) {
  return twist_op<R>(f, [&](long n) {
    return qx_ring<R>::from_mpq(f.ring, mpq_class(chi.value_int(n)));
  });
}

/// Restriction iota_N: kill coefficients with gcd(n, N) > 1.
template <class R>
PolyQX<R> iota_op(const PolyQX<R>& f, long N) {
  return twist_op<R>(f, [&](long n) {
    return qx_ring<R>::from_mpq(f.ring,
                                mpq_class(gcd_long(n, N) == 1 ? 1 : 0));
  });
}

/// Hecke operator at a prime l coprime to the level, on weight w = w2/2
/// (integer).  psi_l is the nebentypus value at l as a ring element.  On
/// X^i-rows:  out[i][n] = l^i a[i][nl] + psi_l l^{w-1-i} a[i][n/l],
/// which for r = 0 is the classical formula and satisfies
/// l * delta(f|T_l) = (delta f)|T_l.
template <class R>
PolyQX<R> hecke_tl(const PolyQX<R>& f, long l, const R& psi_l) {
  if (f.w2 % 2 != 0)
    throw input_error("hecke_tl: integral weight required");
  long w = f.w2 / 2;
  PolyQX<R> h = PolyQX<R>::zero(f.ring, f.K / l, f.r);
  h.w2 = f.w2;
  h.level = f.level;
  h.fs2 = f.fs2;
  for (long i = 0; i <= f.r; ++i) {
    mpq_class li = 1;
    for (long t = 0; t < i; ++t) li *= l;
    R cli = qx_ring<R>::from_mpq(f.ring, li);
    long e = w - 1 - i;
    mpq_class le = 1;
    for (long t = 0; t < (e >= 0 ? e : -e); ++t) le *= l;
    if (e < 0) le = 1 / le;
    R cfac = psi_l * qx_ring<R>::from_mpq(f.ring, le);
    for (long n = 0; n <= h.K; ++n) {
      h.a[i][n] = f.a[i][n * l] * cli;
      if (n % l == 0)
        h.a[i][n] = h.a[i][n] + f.a[i][n / l] * cfac;
    }
  }
  return h;
}

/// Hecke T_l with trivial nebentypus on a weight-k holomorphic form.
template <class R>
PolyQX<R> hecke_tl(const PolyQX<R>& f, long l) {
  return hecke_tl(f, l, qx_ring<R>::from_mpq(f.ring, mpq_class(1)));
}

/// X -> 0: the degree-0 (ordinary) part.
template <class R>
PolyQX<R> ordinary_value(const PolyQX<R>& f) {
  PolyQX<R> h = PolyQX<R>::zero(f.ring, f.K, 0);
  h.w2 = f.w2;
  h.level = f.level;
  h.fs2 = f.fs2;
  h.a[0] = f.a[0];
  return h;
}

// ---------------------------------------------------------------------------
// Special degree-1 series and the holomorphic decomposition.
// ---------------------------------------------------------------------------

/// E_2(q, X) = -1/24 + sum sigma_1(n) q^n - X/2  (weight 2, degree 1).
template <class R>
PolyQX<R> e2_poly(const typename qx_ring<R>::Desc& d, long K) {
  PolyQX<R> h = PolyQX<R>::zero(d, K, 1);
  h.w2 = 4;
  h.a[0][0] = qx_ring<R>::from_mpq(d, mpq_class(-1, 24));
  for (long n = 1; n <= K; ++n) {
    long s1 = 0;
    for (long dd = 1; dd <= n; ++dd)
      if (n % dd == 0) s1 += dd;
    h.a[0][n] = qx_ring<R>::from_mpq(d, mpq_class(s1));
  }
  h.a[1][0] = qx_ring<R>::from_mpq(d, mpq_class(-1, 2));
  return h;
}

template <class R>
struct ShimuraDecomp {
  /// f = sum_i delta_{k-2i}^i g[i]  (+ e2_coeff * delta^{r-1} E_2 when
  /// k = 2r), with g[i] holomorphic of weight k - 2i.
  std::vector<PolyQX<R>> g;
  std::optional<R> e2_coeff;
};

/// Unique decomposition of a degree-r weight-k form into delta-powers of
/// holomorphic forms, by top-degree peeling.  The excluded case (k, r) =
/// (2, 1) throws.  When k = 2r the E_2-term (the genuine delta-iterate of
/// E_2(q, X) up to weight k) absorbs the degenerate top stage.
template <class R>
ShimuraDecomp<R> shimura_decompose(const PolyQX<R>& f) {
  if (f.w2 % 4 != 0)
    throw input_error("shimura_decompose: even integral weight required");
  long k = f.w2 / 2;
  long r = f.r;
  if (k == 2 && r == 1)
    throw input_error("shimura_decompose: (k, r) = (2, 1) is excluded");
  ShimuraDecomp<R> out;
  out.g.assign(r + 1, PolyQX<R>::zero(f.ring, f.K, 0));
  PolyQX<R> rest = f;
  for (long i = r; i >= 1; --i) {
    if (rest.row_is_zero(i)) {
      out.g[i].w2 = f.w2 - 4 * i;
      continue;
    }
    // Top X^i coefficient of delta_{k-2i}^i g is (k-i-1)...(k-2i) * g.
    mpq_class den = 1;
    for (long t = i + 1; t <= 2 * i; ++t) den *= mpq_class(k - t);
    if (den == 0) {
      if (k != 2 * i)
        throw input_error("shimura_decompose: vanishing leading factor");
      // E_2 stage: b = delta-iterate of E_2 up to degree i.
      PolyQX<R> b = e2_poly<R>(f.ring, f.K);
      for (long t = 1; t < i; ++t) b = delta_one(b);
      // Its top row is a nonzero constant.
      for (long n = 1; n <= f.K; ++n)
        if (!qx_ring<R>::is_zero(b.a[i][n]))
          throw input_error("shimura_decompose: E_2 top row not constant");
      R c = rest.a[i][0] / b.a[i][0];
      out.e2_coeff = c;
      rest = qx_sub(rest, qx_scale(b, c));
      rest.w2 = f.w2;
      continue;
    }
    PolyQX<R> gi = PolyQX<R>::zero(f.ring, f.K, 0);
    gi.w2 = f.w2 - 4 * i;
    gi.level = f.level;
    R dinv = qx_ring<R>::from_mpq(f.ring, 1 / den);
    for (long n = 0; n <= f.K; ++n) gi.a[0][n] = rest.a[i][n] * dinv;
    out.g[i] = gi;
    rest = qx_sub(rest, delta_pow(gi, i));
    rest.w2 = f.w2;
  }
  for (long i = 1; i <= rest.r && i <= r; ++i)
    if (!rest.row_is_zero(i))
      throw precision_error("shimura_decompose: residue not holomorphic");
  out.g[0] = ordinary_value(rest);
  out.g[0].w2 = f.w2;
  return out;
}

/// The holomorphic (degree-0) member g_0 of the decomposition.
template <class R>
PolyQX<R> overconvergent_projection(const PolyQX<R>& f) {
  return shimura_decompose(f).g[0];
}

/// Specialize a family at weight k: coefficients at S = u^k - 1; the result
/// carries weight k + fs2/2.
inline PolyQX<PadicElem> specialize_family(const FamilyQX& F, long k,
                                           const PadicElem& u) {
  typename qx_ring<PadicElem>::Desc d{F.ring.p, F.ring.M};
  PolyQX<PadicElem> h = PolyQX<PadicElem>::zero(d, F.K, F.r);
  h.w2 = 2 * k + F.fs2;
  h.level = F.level;
  PadicElem s0 =
      u.pow(k) - PadicElem::from_integer(1, F.ring.p, F.ring.M);
  for (long i = 0; i <= F.r; ++i)
    for (long n = 0; n <= F.K; ++n) h.a[i][n] = F.a[i][n].eval(s0);
  return h;
}

/// Specialization for families whose coefficients are complete Newton
/// interpolation polynomials rather than truncated bounded series (the
/// critical-side families): evaluates without a truncation-tail allowance,
/// so node weights are reproduced exactly.
inline PolyQX<PadicElem> specialize_family_poly(const FamilyQX& F, long k,
                                                const PadicElem& u) {
  typename qx_ring<PadicElem>::Desc d{F.ring.p, F.ring.M};
  PolyQX<PadicElem> h = PolyQX<PadicElem>::zero(d, F.K, F.r);
  h.w2 = 2 * k + F.fs2;
  h.level = F.level;
  PadicElem s0 =
      u.pow(k) - PadicElem::from_integer(1, F.ring.p, F.ring.M);
  for (long i = 0; i <= F.r; ++i)
    for (long n = 0; n <= F.K; ++n) h.a[i][n] = F.a[i][n].eval_poly(s0);
  return h;
}

}  // namespace symsq

#endif  // SYMSQ_QEXP_HPP
