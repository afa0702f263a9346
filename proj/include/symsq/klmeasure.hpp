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

#ifndef SYMSQ_KLMEASURE_HPP
#define SYMSQ_KLMEASURE_HPP

#include <functional>
#include <vector>

#include "symsq/dirichlet.hpp"
#include "symsq/iwasawa.hpp"

namespace symsq {

/// Ambient data for the regularized Kubota-Leopoldt measures on
/// Z_{p,D}^* = (Z/D)^* x Z_p^*: the prime p, the tame level D (prime to p),
/// the regulator b (a unit mod Dp, generating 1 + pZ_p via <b>), and the
/// working precision.
struct KLContext {
  long p = 5;
  long D = 1;
  long b = 2;
  int prec = 12;
  long n_max = 3;
};

/// Exact moment of the regularized Kubota-Leopoldt measure mu_{chi,b}:
///   int eps(z) z_p^{m-1} d mu_{chi,b}(z)
///     = (1 - eps'chi'(b) b^m) * L_{Dp}(1-m, chi eps),
/// where eps'chi' is the prime-to-p part of eps*chi and L_{Dp} strips the
/// Euler factors at all primes dividing Dp.
CycloNum kl_moment(const KLContext& ctx, const DirichletChar& chi,
                   const DirichletChar& eps, long m);

/// Exact moment of the plus (critical-side) measure:
///   (1 - eps'chi'(b) b^m) (1 - (eps chi)_0(p) p^{m-1})
///     * G((eps chi)_p) p^{(m-1) c_p} * L_D(m, (chi eps)^{-1}) / Omega(m),
/// with (eps chi)_0 the primitive character, (eps chi)_p its p-part of
/// conductor p^{c_p}, and the critical value taken over the fixed period.
/// Returns exact 0 when m does not match the parity of eps*chi.
CycloNum klplus_moment(const KLContext& ctx, const DirichletChar& chi,
                       const DirichletChar& eps, long m);

/// Moment oracle: (eta, m) |-> int eta(z) z_p^{m-1} d mu as an exact
/// cyclotomic number, for eta any character modulo D p^n.
using MomentOracle = std::function<CycloNum(const DirichletChar&, long)>;

/// The mu_{chi,b} moments as an oracle (for cylinder reconstruction).
MomentOracle kl_oracle(const KLContext& ctx, const DirichletChar& chi);

/// A measure on Z_{p,D}^* stored extensionally by its values on all
/// cylinders a + (D p^n) for n <= n_max, with values in a fixed extension
/// ring of Z_p (big enough to hold every character value that was folded
/// in during reconstruction).
struct CylinderMeasure {
  long p = 0;
  long D = 1;
  long n_max = 0;
  long ring_order = 1;  ///< values live in embed_ring(ring_order, p)
  ExtRingPtr ring;
  int prec = 0;
  /// values[n][a] = mu(a + (D p^n)); index a in [0, D p^n), zero on
  /// non-units.
  std::vector<std::vector<ExtElem>> values;

  long level_modulus(long n) const;
  const ExtElem& value(long a, long n) const;

  /// Verify mu(a + (D p^{n-1})) = sum over lifts of the next-level values,
  /// certified modulo p^tol, at every level and residue.
  bool distribution_check(long tol) const;

  /// Smallest valuation over all stored cylinder values (boundedness).
  long min_valuation() const;
};

/// Reconstruct cylinder values from moments by finite Fourier inversion:
///   mu(a + (D p^n)) = phi(D p^n)^{-1} sum_{eta mod D p^n} eta(a)^{-1}
///                     * oracle(eta, 1).
/// ring_order is lcm(exponent of (Z/D p^{n_max})^*, extra_order); pass
/// extra_order = p^{n_max} when the oracle values involve wild Gauss sums.
CylinderMeasure cylinders_from_moments(const MomentOracle& oracle, long p,
                                       long D, long n_max, int M,
                                       long extra_order = 1);

/// Riemann-sum Mellin transform over the deepest cylinders:
///   sum_a eps(a) <a>^s mu(a + (D p^{n_max})),
/// with the result capped to its certified absolute precision
/// (n_max + O(1) digits).  The integer-exponent overload avoids exp/log.
ExtElem mellin_eval(const CylinderMeasure& mu, const DirichletChar& eps,
                    const PadicElem& s);
ExtElem mellin_eval(const CylinderMeasure& mu, const DirichletChar& eps,
                    long s);

/// The Iwasawa power series G(S) of the measure twisted by a tame character:
///   G(u^m - 1) ~ int tame(z) <z>^m d mu(z),
/// computed from the deepest cylinders by expanding (1+S)^{log<z>/log u}.
/// Coefficient j is certified to n_max - 1 - v_p(j!) digits.  Requires the
/// twisted coefficient sums to land in Z_p.
IwasawaSeries iwasawa_series_of(const CylinderMeasure& mu,
                                const DirichletChar& tame, const PadicElem& u,
                                int M_S);

}  // namespace symsq

#endif  // SYMSQ_KLMEASURE_HPP
