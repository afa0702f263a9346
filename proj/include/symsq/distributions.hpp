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

#ifndef SYMSQ_DISTRIBUTIONS_HPP
#define SYMSQ_DISTRIBUTIONS_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "symsq/eisen.hpp"
#include "symsq/io.hpp"
#include "symsq/slope.hpp"

namespace symsq {

// ---------------------------------------------------------------------------
// Context shared by the measure constructions: the run configuration, the
// ambient measure context, and the weight-2 working basis with its U_p
// matrix and ordinary projector (used by the trivial-branch consumers).
// ---------------------------------------------------------------------------

struct DistContext {
  RunConfig cfg;
  KLContext klctx;
  long k0 = 2;            ///< weight of the fixed ordinary eigenform
  DirichletChar xi;       ///< twist character (even)
  DirichletChar psi;      ///< nebentypus (even)
  PadicElem u;            ///< <b>, the weight-space generator
  BasisFile w2_exact;     ///< rational weight-2 basis at level N p
  UpMatrix up;            ///< U_p on the embedded basis
  PMatrix proj;           ///< ordinary projector e on that basis
};

/// Build the context: loads the weight-2 basis and eigen package from
/// cfg.fixture_dir and assembles U_p and the ordinary projector.
DistContext make_dist_context(const RunConfig& cfg);

// ---------------------------------------------------------------------------
// Theta series and the measure-valued forms, one character at a time.
// ---------------------------------------------------------------------------

/// Sieved theta series  sum_{m >= 1, gcd(m, sieve) = 1} m^beta chi(m) q^{m^2}
/// with beta the parity of chi.  Unlike theta_series, chi may be trivial and
/// is evaluated at its stored modulus; the extra sieve removes the indices
/// sharing a factor with `sieve`.
PolyQX<CycloNum> theta_imprimitive(const DirichletChar& chi, long sieve,
                                   long K);

/// The weight-2 form attached to a character eps (p-power conductor) at
/// moment s in {0, 1}:
///   theta(eps xi omega^s) * [E-measure-family(psi xi eps sigma_{-1}) at
///   weight k0 - s],
/// with the theta factor sieved at 2 p C.  This is the form before the
/// U_p-power and finite-slope projection are applied; its coefficients
/// supported on the deep q-grid are what the cylinder engine reproduces.
PolyQX<PadicElem> mu_s(const DistContext& ctx, const DirichletChar& eps,
                       long s, long K);

/// Critical-side companion: theta factor times the weight-(k0 - s)
/// specialization of the critical-value measure family (complete
/// interpolation polynomials: node weights exact, no series tail).
PolyQX<PadicElem> mu_plus_s(const DistContext& ctx, const DirichletChar& eps,
                            long s, long K);

/// theta0 times the improved one-variable family, as a family in the weight
/// variable (used by the one-variable special-value route; no cyclotomic
/// tower, no deep U_p powers).
FamilyQX theta_dot_E(const DistContext& ctx, long K, int len, int T);

// ---------------------------------------------------------------------------
// Cylinder moments.
//
// The cyclotomic variable lives on the 1-units: evaluation characters are
// kappa'(z) = eps(<z>) z^s with eps a finite-order character of 1 + p Z_p.
// For each level n >= 1 the cylinders are a (1 + p^n Z_p) with a a 1-unit,
// and the stored moment data is the pair of <z>^j-weighted restrictions
// (j = 0, 1, trivial Teichmuller branch)
//   m_j(a, n) = U_p^{2n-1}( (1/p^{n-1}) sum_{eps wild mod p^n}
//               eps(a)^{-1} [<mm>^j-weighted theta(eps xi) x
//               E-part(psi xi eps^{-1} sigma_{-1}) at weight node k0 - j] ),
// a q-expansion on the coefficient grid it is known on.  The wild-character
// average is never formed character by character: a Bernoulli bucket pass
// per Eisenstein slot collapses it into one-unit-class lookups.
//
// Storage is projection-free on purpose: the growth condition that makes
// the measure h-admissible is a statement about q-expansion norms of the
// recentered moments before the slope projection (which only shrinks them),
// so it is certified on the raw coefficient grids.
// ---------------------------------------------------------------------------

/// Engine output for one level: for j < 2 and each 1-unit cylinder a mod
/// p^n, the q-expansion coefficients at the requested indices nu of
/// U_p^{2n-1} applied to the averaged measure form (coefficient at q^nu of
/// the stored object = coefficient at q^{nu p^{2n-1}} of the product form).
struct RawCylinderLevel {
  long n = 0;
  long Q = 0;                ///< p^n
  std::vector<long> nus;     ///< stored coefficient indices
  std::vector<long> units;   ///< cylinder representatives (1-units mod p^n)
  /// vals[j][a] = coefficients aligned with nus
  std::array<std::map<long, std::vector<PadicElem>>, 2> vals;
};

/// Run the bucket engine at level n for the given coefficient indices.
/// T is the number of weight nodes used for the edge-node extrapolation of
/// the j = 1 moment.
RawCylinderLevel cylinder_engine(const DistContext& ctx, long n,
                                 const std::vector<long>& nus, int T);

/// Convenience overload: indices 0..K_solve.
RawCylinderLevel cylinder_engine(const DistContext& ctx, long n, long K_solve,
                                 int T);

struct AdmissibleFamily {
  long h = 2;
  long n_max = 0;
  long p = 0;
  long K_solve = 0;
  int T = 0;
  int cert0 = 0, cert1 = 0;  ///< certified absolute digits per moment
  /// levels[n-1]: the stored moment grids m_0 (vals[0]) and m_1 (vals[1]).
  /// Levels below n_max also carry the p^2-multiplied index grid so the
  /// level-compatibility relation is checkable.
  std::vector<RawCylinderLevel> levels;
};

/// Build the stored family for h = 2 through level n_max (cached in
/// cfg.cache_dir when set).
AdmissibleFamily build_admissible(const DistContext& ctx, long h, long n_max,
                                  long K_solve = 8, int T = 8);

struct AdmissReport {
  bool ok = false;
  long bound_margin = 0;  ///< min valuation of m_0 coefficients (boundedness)
  long decay_margin = 0;  ///< min over levels of v(m_1 - a m_0) - n
  long dist_margin = 0;   ///< certified digits of agreement in the
                          ///< level-compatibility sums minus the floor
  std::string worst;      ///< location of the worst margin
  std::string summary;
};

/// Growth and compatibility checks on the stored q-expansion grids:
/// boundedness of the zeroth moments, recentered first-moment decay
/// v(m_1(a) - a m_0(a)) >= n, and the level-compatibility relation
/// sum_{a' = a (p^n)} m_j(a', n+1) = U_p^2 m_j(a, n) (exact on the stored
/// data: the coarse grid carries the p^2-multiplied indices).
AdmissReport admissibility_check(const DistContext& ctx,
                                 const AdmissibleFamily& fam);

/// Evaluate the glued measure against kappa'(z) = eps(<z>) <z>^s over the
/// deepest stored cylinders:
///   sum_a eps(a) <a>^s [ (1-s) m_0(a) + (s/a) m_1(a) ],
/// returned as a q-expansion on the primary stored grid (normalization: the
/// U_p^{2 n_max - 1}-image, like the stored moments).  Exact at the defining
/// moments s in {0,1}, where the bracket collapses to m_s; for p-adic s the
/// h = 2 locally-analytic truncation error |s(s-1)/2| p^{-2 n_max} is folded
/// into the precision caps of the result.  eps must take values in Q_p on
/// the 1-units (in practice: the trivial character; ramified wild values
/// leave Q_p).
PolyQX<PadicElem> two_var_eval(const DistContext& ctx,
                               const AdmissibleFamily& fam,
                               const DirichletChar& eps, long s);
PolyQX<PadicElem> two_var_eval(const DistContext& ctx,
                               const AdmissibleFamily& fam,
                               const DirichletChar& eps, const PadicElem& s);

}  // namespace symsq

#endif  // SYMSQ_DISTRIBUTIONS_HPP
