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

#ifndef SYMSQ_EISEN_HPP
#define SYMSQ_EISEN_HPP

#include "symsq/klmeasure.hpp"
#include "symsq/qexp.hpp"

namespace symsq {

// ---------------------------------------------------------------------------
// Classical series with exact (cyclotomic) coefficients.
// ---------------------------------------------------------------------------

/// theta(xi) = sum_{n >= 1} n^beta xi(n) q^{n^2}, beta = 0 or 1 according to
/// xi even or odd.  Weight tag beta + 1/2, level tag 4 cond(xi)^2.
/// Requires xi nontrivial (the trivial-character theta is theta0_series).
PolyQX<CycloNum> theta_series(const DirichletChar& xi, long K);

/// theta0 = 1 + 2 sum_{n >= 1} q^{n^2}  (weight 1/2, level 4).
PolyQX<CycloNum> theta0_series(long K);

/// The critical-slope weight-2 series E_2(z) - E_2(pz) completed:
///   E_2^cr = ((1-p)/2p) X + sum_{n p^m, (n,p)=1} p^m sigma_1(n) q^{n p^m},
/// a U_p-eigenvector with eigenvalue p.  (The X-slot of the [p]-shifted copy
/// scales by 1/p, so the X-coefficient is -1/2 + 1/2p.)
PolyQX<CycloNum> e2_critical(long p, long K);

/// Half-integral Eisenstein series E_{k-1/2}(chi) of weight k - 1/2:
///   L_N(3-2k, chi^2)
///     + sum_n q^n L_N(2-k, chi sigma_n)
///       * sum_{t1^2 t2^2 | n, gcd(t1 t2, N) = 1}
///           mu(t1) chi(t1 t2^2) sigma_n(t1) t2 (t1 t2^2)^{k-2},
/// where N = modulus(chi), sigma_n is the Kronecker character of n, and L_N
/// strips the Euler factors at the primes dividing N.  Requires k >= 2 and
/// chi(-1) = (-1)^{k-1}.
PolyQX<CycloNum> eis_half_integral(long k, const DirichletChar& chi, long K);

/// The companion value-at-zero series E_{k-1/2}(z, 0; chi), normalized slot
/// by slot against the algebraic period:  coefficient n >= 1 is
///   [L_N(k-1, chi sigma_n) / Omega(k-1)]
///     * sum mu(t1) chi(t1 t2^2) sigma_n(t1) t2 (t1 t2^2)^{1-k},
/// with the bracket realized exactly through the functional equation
/// (critical_L_over_period).  The constant term L(2k-3, chi^2) sits at a
/// non-critical argument and has no algebraic normalization against this
/// period, so it is set to 0; all cross-checks use coefficients n >= 1.
PolyQX<CycloNum> eis_half_integral_s0(long k, const DirichletChar& chi,
                                      long K);

// ---------------------------------------------------------------------------
// p-adic embedding helpers.
// ---------------------------------------------------------------------------

/// Embed a cyclotomic number into Q_p through the fixed embedding of
/// embed_padic; throws input_error if the value does not land in Q_p.
PadicElem cyclo_to_padic(const CycloNum& x, long p, int M);

/// Coefficient-wise p-adic embedding of an exact expansion.
PolyQX<PadicElem> qx_embed(const PolyQX<CycloNum>& f, long p, int M);

// ---------------------------------------------------------------------------
// One-variable L-series in the weight variable.
// ---------------------------------------------------------------------------

/// The Iwasawa series L_p(kappa[t], eps, tame, b) of the regularized
/// measure: its value at S = u^k - 1 is
///   int eps(z) z^t <z>^k d mu_{tame, b}(z)
///     = kl_moment(ctx, tame, eps omega^{-k-t} omega^t, k + t + 1).
/// Recovered from T node values at k = max(0, -t) + i by divided
/// differences; supply T comfortably larger than len.
IwasawaSeries lp_series(const KLContext& ctx, const DirichletChar& eps,
                        const DirichletChar& tame, long t, int len, int T);

/// Same, for the plus (critical-side) measure via klplus_moment.  Node
/// values must land in Q_p (tame Gauss sums split), else input_error.
/// The critical moments grow unboundedly in the weight, so no Iwasawa
/// truncation converges: the returned series is the full degree-(T-1)
/// Newton interpolation polynomial through the T nodes (len is a floor,
/// not the length).  Specialize with eval_poly / specialize_family_poly,
/// which reproduce the node weights exactly.
IwasawaSeries lp_plus_series(const KLContext& ctx, const DirichletChar& eps,
                             const DirichletChar& tame, long t, int len,
                             int T);

// ---------------------------------------------------------------------------
// Eisenstein families over weight space.
// ---------------------------------------------------------------------------

/// The p-deprived Eisenstein family
///   Etilde(kappa) = zeta*(kappa)/2 + sum_n sigma*_n(kappa) q^n,
///   sigma*_n(kappa) = sum_{d | n, p nmid d} kappa(d) d^{-1},
/// on the identity branch: kappa(d) = (1+S)^{log<d>/log u}.  zeta* has a
/// simple pole at S = 0, so the family is stored regularized:
///   reg = S * Etilde(kappa)   (every coefficient multiplied by S),
/// together with zstar_s = S * zeta*(S) (an honest Iwasawa series, nonzero
/// at S = 0 with value residue * log u).
struct EisTilde {
  FamilyQX reg;           ///< S * Etilde(kappa)
  IwasawaSeries zstar_s;  ///< S * zeta*(S)
  PadicElem u;            ///< <b>, the weight-space generator
};

EisTilde eis_family_tilde(long p, long b, long K, int len, int M);

/// E(kappa) = (2 / zeta*(kappa)) Etilde(kappa): the pole cancels and the
/// constant term is exactly 1.
FamilyQX eis_family_normalized(const EisTilde& E);

/// The half-integral Eisenstein measure-family
///   cal_E(eps) = sum_{(n,p)=1} L_p(kappa[-2], eps, sigma_n, b) q^n
///     * sum_{t1^2 t2^2 | n, gcd(t1 t2, Dp) = 1}
///         t1^{-2} t2^{-3} mu(t1) eps(t1 t2^2) sigma_n(t1) kappa(t1 t2^2).
/// Specializing at S = u^k - 1 gives
///   (1 - (sigma_n eps omega^{-k})(b) b^{k-1}) per slot times the
/// prime-to-p coefficients of E_{k-1/2}(eps omega^{-k}).
FamilyQX cal_E(const DirichletChar& eps, const KLContext& ctx, long K,
               int len, int T);

/// The plus-side family built on the critical-value measure:
///   cal_E_plus(chi) = sum_{(n,p)=1} Lplus_p(kappa[-2], chi, sigma_n, b) q^n
///     * sum t1 t2^3 mu(t1) chi(t1 t2^2) sigma_n(t1) kappa^{-1}(t1 t2^2).
/// (Inner weight t1^1: the unique choice making the weight-k specialization
/// match E_{k-1/2}(z, 0; omega^k chi) twisted by the p-Euler ratio; chi
/// quadratic.)  Each q^n-slot is stored multiplied by the Gauss sum of the
/// tame part of chi sigma_n: that constant clears the inverse tame Gauss sum
/// carried by every critical value of the slot, keeping the series
/// Z_p-coefficient (the wild Gauss sums cancel node by node).  The slots
/// are complete interpolation polynomials (see lp_plus_series); use
/// specialize_family_poly.
FamilyQX cal_E_plus(const DirichletChar& chi, const KLContext& ctx, long K,
                    int len, int T);

/// The improved (one-variable) family, for chi' = sigma_{-1} psi' xi' and
/// chi = chi' omega^{2-k0}:
///   (1 - chi'(b) kappa(u) b^{1-k0}) L_p(kappa^2[-4-2k0], chi'^2, 1, b)
///   + (1 - chi'^2(b) kappa(b^2) b^{-2k0-4})
///       sum_{(n,p)=1} L_p(kappa[-k0], chi, sigma_n, b) q^n
///       * sum t1^{-2} t2^{-3} mu(t1) chi(t1 t2^2) sigma_n(t1)
///             kappa(t1 t2^2).
FamilyQX cal_E_improved(const DirichletChar& xi_pr, const DirichletChar& psi_pr,
                        long k0, const KLContext& ctx, long K, int len, int T);

/// The coefficient twist
///   nu_k(n) = (1 - (n|p) (chi omega^k)_0(p) p^{k-3})
///           / (1 - (n|p) (chi^{-1} omega^{-k})_0(p) p^{2-k}),
/// with (n|p) the Legendre symbol and (.)_0 the primitive character.
PadicElem nu_k_value(const DirichletChar& chi, long k, long n, long p, int M);

}  // namespace symsq

#endif  // SYMSQ_EISEN_HPP
