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

#ifndef SYMSQ_SLOPE_HPP
#define SYMSQ_SLOPE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "symsq/qexp.hpp"

namespace symsq {

// ---------------------------------------------------------------------------
// Dense p-adic matrices (row-major, square unless noted).
// ---------------------------------------------------------------------------

using PMatrix = std::vector<std::vector<PadicElem>>;

PMatrix mat_zero(long n, long p);
PMatrix mat_identity(long n, long p, int M);
PMatrix mat_add(const PMatrix& A, const PMatrix& B);
PMatrix mat_sub(const PMatrix& A, const PMatrix& B);
PMatrix mat_mul(const PMatrix& A, const PMatrix& B);
PMatrix mat_scale(const PMatrix& A, const PadicElem& c);
PMatrix mat_pow(const PMatrix& A, long e, int M);
std::vector<PadicElem> mat_apply(const PMatrix& A,
                                 const std::vector<PadicElem>& v);
/// Evaluate the polynomial sum_i c[i] T^i at the matrix A (Horner).
PMatrix mat_poly(const std::vector<PadicElem>& c, const PMatrix& A, int M);
/// Inverse by Gauss-Jordan; throws input_error when singular at precision.
PMatrix mat_inv(const PMatrix& A, int M);
bool mat_eq_mod(const PMatrix& A, const PMatrix& B, long n);

/// Characteristic polynomial det(T - A), monic, coefficients c[0..n]
/// (Berkowitz: division-free, so no spurious precision loss at pivots).
std::vector<PadicElem> charpoly(const PMatrix& A, int M);

/// Solve for the coordinates of `target` in the span of `cols` (each a
/// vector of the same length >= cols.size()), by Gaussian elimination with
/// minimal-valuation pivoting.  Appends the pivot valuations to *pivots if
/// given.  Throws input_error if the columns are dependent at precision or
/// the residual does not vanish at precision minus the pivot losses.
std::vector<PadicElem> solve_in_span(const std::vector<std::vector<PadicElem>>& cols,
                                     const std::vector<PadicElem>& target,
                                     int M, std::vector<long>* pivots = nullptr);

// ---------------------------------------------------------------------------
// U_p on an ingested basis of polynomial q-expansions.
// ---------------------------------------------------------------------------

struct UpMatrix {
  std::vector<PolyQX<PadicElem>> basis;  ///< q-expansions through K_solve
  PMatrix matrix;       ///< column j = coordinates of U_p(basis_j)
  long p = 0;
  int M = 0;
  long K_solve = 0;     ///< truncation used for the linear solve
  std::vector<long> conditioning;  ///< pivot valuations of the solve
};

/// Express U_p on the span of `basis` (which must be U_p-stable through
/// q^{K_solve/p}): each U_p(basis_j) is re-solved in the basis by
/// coefficient matching and the reconstruction residual is checked.
UpMatrix up_matrix(const std::vector<PolyQX<PadicElem>>& basis, long p,
                   long K_solve);

/// Flatten a q-expansion to the coefficient vector used by up_matrix's
/// solver ((X-degree, q-index) slots through q^Ktrunc).
std::vector<PadicElem> qx_flatten(const PolyQX<PadicElem>& f, long Ktrunc,
                                  long rmax);

// ---------------------------------------------------------------------------
// Newton polygons and slope projectors.
// ---------------------------------------------------------------------------

/// Slopes (= valuations of the roots) with multiplicities, in increasing
/// order, from the lower convex hull of (i, v(c_i)).  Coefficients that are
/// zero at working precision contribute roots of slope marked by
/// `infinite_slope` (numerator) below.  Throws input_error when the leading
/// coefficient is not a unit at precision.
std::vector<std::pair<mpq_class, long>> newton_polygon(
    const std::vector<PadicElem>& c);

/// Sentinel slope for roots indistinguishable from 0 at precision.
mpq_class infinite_slope();

/// Monic factorization c = R * S with R carrying the roots of valuation
/// <= alpha and S the rest, by Newton-polygon initial split refined by
/// quadratic Hensel iteration, plus a Bezout pair A R + B S = 1.
struct SlopeFactors {
  std::vector<PadicElem> R, S;  ///< monic factors
  std::vector<PadicElem> A, B;  ///< A R + B S = 1
};

/// Riesz projector onto the slope-<= alpha part of A (a polynomial in A):
/// P = B(A) S(A) with the factorization above; P^2 = P, P A = A P, and
/// rank P = deg R = Newton count of slopes <= alpha.  Requires alpha to
/// separate the Newton polygon at a vertex (no segment straddles alpha).
struct SlopeProjector {
  PMatrix projector;
  SlopeFactors factors;
};

SlopeProjector slope_projector(const PMatrix& A, const mpq_class& alpha,
                               int M);
SlopeProjector slope_projector(const UpMatrix& Mx, const mpq_class& alpha);

/// Ordinary projector e = lim_n A^{n!}, iterated to stabilization mod p^M;
/// equals slope_projector(alpha = 0).  Throws precision_error if the
/// iteration does not stabilize within the cap.
PMatrix ordinary_projector(const PMatrix& A, int M);
PMatrix ordinary_projector(const UpMatrix& Mx);

/// Projector onto the generalized kernel of B (eigenvalues indistinguishable
/// from 0 at precision): used as the Hecke annihilator
/// prod (T - mu)/(lambda - mu) over the competing eigensystems.  Throws
/// input_error when the kernel is trivial (eigenvalue collision: no
/// eigenvalue of B is 0 at working precision).
PMatrix kernel_projector(const PMatrix& B, int M);

// ---------------------------------------------------------------------------
// Eigen-projection onto an oldform span.
// ---------------------------------------------------------------------------

/// Project g (coordinates in the working basis) onto the joint generalized
/// eigenspace { T_ell = lambda_ell } by composing kernel projectors of
/// T_ell - lambda_ell, then solve for the coordinates along `span` (the
/// coordinate vectors of the oldforms f|[d]).  hecke entries are
/// (matrix of T_ell on the basis, lambda_ell).
std::vector<PadicElem> eigen_project(
    const std::vector<PadicElem>& g,
    const std::vector<std::pair<PMatrix, PadicElem>>& hecke,
    const std::vector<std::vector<PadicElem>>& span, int M);

/// Degree-slope witness: a U_p-eigenvector whose expansion has effective
/// X-degree r must have slope >= r; returns false when v(lambda) < r (such
/// inputs are structurally impossible and indicate corrupted data).
bool degree_slope_ok(const PolyQX<PadicElem>& g, const PadicElem& lambda);

// ---------------------------------------------------------------------------
// Ingested eigenform data.
// ---------------------------------------------------------------------------

/// Local type of the automorphic representation at a prime q | level:
/// case tags "i".."iv" with the supercuspidal subcase (0..3, or -1 when not
/// applicable) and the local Hecke parameter lambda_q (0 when not minimal
/// or supercuspidal).
struct LocalType {
  std::string case_tag;       ///< "i", "ii", "iii", "iv"
  int sigma4_subcase = -1;
  CycloNum lambda_q;
};

struct EigenPackage {
  long k = 0;                 ///< weight
  long N = 1;                 ///< level
  DirichletChar nebentypus;
  std::vector<CycloNum> an;   ///< a_0 (=0), a_1, ..., a_{n_max}
  CycloNum lambda_p;          ///< U_p-eigenvalue
  mpq_class alpha;            ///< slope = v_p(lambda_p)
  std::map<long, LocalType> local_types;   ///< per prime q | N
  CycloNum root_number_prime_to_p;         ///< W'
  std::vector<std::pair<long, CycloNum>> hida_table;  ///< (k_j, lambda_p(k_j))

  long n_max() const { return static_cast<long>(an.size()) - 1; }

  /// a_1 = 1 and multiplicativity a_{mn} = a_m a_n for coprime (m, n)
  /// spot-checked across the stored range; throws input_error on failure.
  void validate() const;

  /// q-expansion sum a_n q^n through q^K (K <= n_max).
  PolyQX<CycloNum> q_expansion(long K) const;
};

}  // namespace symsq

#endif  // SYMSQ_SLOPE_HPP
