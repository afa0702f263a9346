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

#include "symsq/slope.hpp"

#include <algorithm>
#include <sstream>

namespace symsq {

namespace {

long mat_p(const PMatrix& A) {
  for (const auto& row : A)
    for (const auto& x : row)
      if (x.p() != 0) return x.p();
  throw input_error("matrix has no p-adic entries");
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrix helpers.
// ---------------------------------------------------------------------------

PMatrix mat_zero(long n, long p) {
  return PMatrix(n, std::vector<PadicElem>(n, PadicElem::zero(p)));
}

PMatrix mat_identity(long n, long p, int M) {
  PMatrix I = mat_zero(n, p);
  for (long i = 0; i < n; ++i) I[i][i] = PadicElem::from_integer(1, p, M);
  return I;
}

PMatrix mat_add(const PMatrix& A, const PMatrix& B) {
  PMatrix C = A;
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) C[i][j] = A[i][j] + B[i][j];
  return C;
}

PMatrix mat_sub(const PMatrix& A, const PMatrix& B) {
  PMatrix C = A;
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) C[i][j] = A[i][j] - B[i][j];
  return C;
}

PMatrix mat_mul(const PMatrix& A, const PMatrix& B) {
  size_t n = A.size(), m = B[0].size(), l = B.size();
  long p = mat_p(A);
  PMatrix C(n, std::vector<PadicElem>(m, PadicElem::zero(p)));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < l; ++k) {
      if (A[i][k].is_exact_zero()) continue;
      for (size_t j = 0; j < m; ++j)
        C[i][j] = C[i][j] + A[i][k] * B[k][j];
    }
  return C;
}

PMatrix mat_scale(const PMatrix& A, const PadicElem& c) {
  PMatrix C = A;
  for (auto& row : C)
    for (auto& x : row) x = x * c;
  return C;
}

PMatrix mat_pow(const PMatrix& A, long e, int M) {
  long p = mat_p(A);
  PMatrix R = mat_identity(A.size(), p, M);
  PMatrix B = A;
  while (e > 0) {
    if (e & 1) R = mat_mul(R, B);
    e >>= 1;
    if (e) B = mat_mul(B, B);
  }
  return R;
}

std::vector<PadicElem> mat_apply(const PMatrix& A,
                                 const std::vector<PadicElem>& v) {
  long p = mat_p(A);
  std::vector<PadicElem> w(A.size(), PadicElem::zero(p));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      w[i] = w[i] + A[i][j] * v[j];
  return w;
}

PMatrix mat_poly(const std::vector<PadicElem>& c, const PMatrix& A, int M) {
  long p = mat_p(A);
  long n = A.size();
  PMatrix R = mat_zero(n, p);
  for (long j = static_cast<long>(c.size()) - 1; j >= 0; --j) {
    R = mat_mul(R, A);
    for (long i = 0; i < n; ++i) R[i][i] = R[i][i] + c[j];
  }
  (void)M;
  return R;
}

PMatrix mat_inv(const PMatrix& A, int M) {
  long n = A.size();
  long p = mat_p(A);
  std::vector<std::vector<PadicElem>> cols(n);
  for (long j = 0; j < n; ++j) {
    cols[j].resize(n, PadicElem::zero(p));
    for (long i = 0; i < n; ++i) cols[j][i] = A[i][j];
  }
  PMatrix inv = mat_zero(n, p);
  for (long i = 0; i < n; ++i) {
    std::vector<PadicElem> e(n, PadicElem::zero(p));
    e[i] = PadicElem::from_integer(1, p, M);
    auto x = solve_in_span(cols, e, M);
    for (long r = 0; r < n; ++r) inv[r][i] = x[r];
  }
  return inv;
}

bool mat_eq_mod(const PMatrix& A, const PMatrix& B, long n) {
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j)
      if (!A[i][j].eq_mod(B[i][j], n)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Characteristic polynomial (Berkowitz).
// ---------------------------------------------------------------------------

std::vector<PadicElem> charpoly(const PMatrix& A, int M) {
  long n = A.size();
  long p = mat_p(A);
  PadicElem one = PadicElem::from_integer(1, p, M);
  // C holds the coefficients of det(T I - A_r) for the leading principal
  // r x r block, highest degree first.
  std::vector<PadicElem> C{one};
  for (long r = 1; r <= n; ++r) {
    std::vector<PadicElem> t(r + 1, PadicElem::zero(p));
    t[0] = one;
    t[1] = -A[r - 1][r - 1];
    // w = M_{r-1}^{j-2} * S with S the column A[0..r-2][r-1].
    std::vector<PadicElem> w(r - 1, PadicElem::zero(p));
    for (long i = 0; i < r - 1; ++i) w[i] = A[i][r - 1];
    for (long j = 2; j <= r; ++j) {
      if (j > 2) {
        std::vector<PadicElem> w2(r - 1, PadicElem::zero(p));
        for (long i = 0; i < r - 1; ++i)
          for (long l = 0; l < r - 1; ++l) w2[i] = w2[i] + A[i][l] * w[l];
        w = std::move(w2);
      }
      PadicElem dot = PadicElem::zero(p);
      for (long l = 0; l < r - 1; ++l) dot = dot + A[r - 1][l] * w[l];
      t[j] = -dot;
    }
    std::vector<PadicElem> Cn(r + 1, PadicElem::zero(p));
    for (long i = 0; i <= r; ++i)
      for (long j = 0; j <= std::min(i, r); ++j) {
        long idx = i - j;
        if (idx < static_cast<long>(C.size())) Cn[i] = Cn[i] + t[j] * C[idx];
      }
    C = std::move(Cn);
  }
  // Convert to ascending order c[0] + c[1] T + ... + c[n] T^n.
  std::vector<PadicElem> c(n + 1, PadicElem::zero(p));
  for (long i = 0; i <= n; ++i) c[i] = C[n - i];
  return c;
}

// ---------------------------------------------------------------------------
// Linear solve in a spanning set.
// ---------------------------------------------------------------------------

std::vector<PadicElem> solve_in_span(
    const std::vector<std::vector<PadicElem>>& cols,
    const std::vector<PadicElem>& target, int M, std::vector<long>* pivots) {
  size_t k = cols.size();
  size_t m = target.size();
  long p = 0;
  for (const auto& col : cols)
    for (const auto& x : col)
      if (x.p() != 0) { p = x.p(); break; }
  if (p == 0)
    for (const auto& x : target)
      if (x.p() != 0) { p = x.p(); break; }
  if (p == 0) throw input_error("solve_in_span: no p-adic data");
  // Augmented m x (k+1) system.
  std::vector<std::vector<PadicElem>> W(
      m, std::vector<PadicElem>(k + 1, PadicElem::zero(p)));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < k; ++j) W[i][j] = cols[j][i];
    W[i][k] = target[i];
  }
  std::vector<long> pivot_row(k, -1);
  std::vector<bool> used(m, false);
  for (size_t j = 0; j < k; ++j) {
    long best = -1;
    long best_val = 0;
    for (size_t i = 0; i < m; ++i) {
      if (used[i] || W[i][j].is_zero()) continue;
      long v = W[i][j].val();
      if (best < 0 || v < best_val) {
        best = static_cast<long>(i);
        best_val = v;
      }
    }
    if (best < 0) {
      std::ostringstream os;
      os << "solve_in_span: columns dependent at precision (column " << j
         << ")";
      throw input_error(os.str());
    }
    used[best] = true;
    pivot_row[j] = best;
    if (pivots) pivots->push_back(best_val);
    PadicElem inv = W[best][j].inv();
    for (size_t c = j; c <= k; ++c) W[best][c] = W[best][c] * inv;
    for (size_t i = 0; i < m; ++i) {
      if (static_cast<long>(i) == best || W[i][j].is_zero()) continue;
      PadicElem f = W[i][j];
      for (size_t c = j; c <= k; ++c)
        W[i][c] = W[i][c] - f * W[best][c];
    }
  }
  std::vector<PadicElem> x(k, PadicElem::zero(p));
  for (size_t j = 0; j < k; ++j) x[j] = W[pivot_row[j]][k];
  // Residual check: the reconstruction must vanish on every coordinate to
  // roughly half the working precision (the elimination itself can consume
  // pivot-valuation digits).
  long tol = std::max<long>(1, M / 2);
  for (size_t i = 0; i < m; ++i) {
    PadicElem r = target[i];
    for (size_t j = 0; j < k; ++j) r = r - cols[j][i] * x[j];
    if (!r.is_zero() && r.val() < tol) {
      std::ostringstream os;
      os << "solve_in_span: residual " << r.to_string() << " at row " << i
         << " exceeds tolerance p^-" << tol;
      throw input_error(os.str());
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// U_p matrix on a q-expansion basis.
// ---------------------------------------------------------------------------

std::vector<PadicElem> qx_flatten(const PolyQX<PadicElem>& f, long Ktrunc,
                                  long rmax) {
  std::vector<PadicElem> v;
  v.reserve((rmax + 1) * (Ktrunc + 1));
  for (long i = 0; i <= rmax; ++i)
    for (long n = 0; n <= Ktrunc; ++n)
      v.push_back(i <= f.r && n <= f.K ? f.at(i, n)
                                       : PadicElem::zero(f.ring.p));
  return v;
}

UpMatrix up_matrix(const std::vector<PolyQX<PadicElem>>& basis, long p,
                   long K_solve) {
  if (basis.empty()) throw input_error("up_matrix: empty basis");
  long Ktrunc = K_solve / p;
  long rmax = 0;
  for (const auto& f : basis) {
    rmax = std::max(rmax, f.r);
    if (f.K < K_solve)
      throw input_error("up_matrix: basis truncation below K_solve");
  }
  UpMatrix out;
  out.basis = basis;
  out.p = p;
  out.M = basis[0].ring.M;
  out.K_solve = K_solve;
  std::vector<std::vector<PadicElem>> cols;
  cols.reserve(basis.size());
  for (const auto& f : basis) cols.push_back(qx_flatten(f, Ktrunc, rmax));
  long n = static_cast<long>(basis.size());
  out.matrix = mat_zero(n, p);
  for (long j = 0; j < n; ++j) {
    auto target = qx_flatten(up_op(basis[j], p), Ktrunc, rmax);
    std::vector<long> piv;
    std::vector<PadicElem> x;
    try {
      x = solve_in_span(cols, target, out.M, &piv);
    } catch (const input_error& e) {
      std::ostringstream os;
      os << "up_matrix: column " << j << ": " << e.what();
      throw input_error(os.str());
    }
    if (j == 0) out.conditioning = piv;
    for (long i = 0; i < n; ++i) out.matrix[i][j] = x[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Newton polygons.
// ---------------------------------------------------------------------------

mpq_class infinite_slope() { return mpq_class(1000000000); }

std::vector<std::pair<mpq_class, long>> newton_polygon(
    const std::vector<PadicElem>& c) {
  long n = static_cast<long>(c.size()) - 1;
  if (n < 1) throw input_error("newton_polygon: degree 0");
  if (c[n].is_zero() || c[n].val() > 0)
    throw input_error("newton_polygon: leading coefficient is not a unit");
  long i0 = 0;
  while (i0 <= n && c[i0].is_zero()) ++i0;
  // Lower convex hull of (i, v(c_i)) for the nonzero coefficients.
  std::vector<std::pair<long, long>> pts;
  for (long i = i0; i <= n; ++i)
    if (!c[i].is_zero()) pts.emplace_back(i, c[i].val());
  std::vector<std::pair<long, long>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      // Drop b if it lies on or above the segment a -> pt.
      if ((b.second - a.second) * (pt.first - a.first) >=
          (pt.second - a.second) * (b.first - a.first))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  std::vector<std::pair<mpq_class, long>> out;
  // Right-to-left: hull slopes decrease, root valuations increase.
  for (long s = static_cast<long>(hull.size()) - 1; s >= 1; --s) {
    long di = hull[s].first - hull[s - 1].first;
    long dv = hull[s - 1].second - hull[s].second;
    mpq_class slope(dv, di);
    slope.canonicalize();
    out.emplace_back(slope, di);
  }
  if (i0 > 0) out.emplace_back(infinite_slope(), i0);
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial arithmetic over capped-precision coefficients (ascending).
// ---------------------------------------------------------------------------

namespace {

using Poly = std::vector<PadicElem>;

long poly_deg(const Poly& f) {
  for (long i = static_cast<long>(f.size()) - 1; i >= 0; --i)
    if (!f[i].is_zero()) return i;
  return -1;
}

Poly poly_trim(Poly f) {
  long d = poly_deg(f);
  f.resize(std::max<long>(d + 1, 1),
           PadicElem::zero(f.empty() ? 0 : f[0].p()));
  return f;
}

Poly poly_add(const Poly& f, const Poly& g) {
  long p = f.at(0).p();
  Poly h(std::max(f.size(), g.size()), PadicElem::zero(p));
  for (size_t i = 0; i < h.size(); ++i) {
    if (i < f.size()) h[i] = h[i] + f[i];
    if (i < g.size()) h[i] = h[i] + g[i];
  }
  return h;
}

Poly poly_sub(const Poly& f, const Poly& g) {
  long p = f.at(0).p();
  Poly h(std::max(f.size(), g.size()), PadicElem::zero(p));
  for (size_t i = 0; i < h.size(); ++i) {
    if (i < f.size()) h[i] = h[i] + f[i];
    if (i < g.size()) h[i] = h[i] - g[i];
  }
  return h;
}

Poly poly_mul(const Poly& f, const Poly& g) {
  long p = f.at(0).p();
  Poly h(f.size() + g.size() - 1, PadicElem::zero(p));
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_exact_zero()) continue;
    for (size_t j = 0; j < g.size(); ++j) h[i + j] = h[i + j] + f[i] * g[j];
  }
  return h;
}

/// Remainder of f modulo g (leading coefficient of g inverted).
Poly poly_mod(Poly f, const Poly& g) {
  long dg = poly_deg(g);
  if (dg < 0) throw input_error("poly_mod: zero divisor");
  PadicElem lg = g[dg].inv();
  for (long df = poly_deg(f); df >= dg; df = poly_deg(f)) {
    PadicElem q = f[df] * lg;
    for (long i = 0; i <= dg; ++i)
      f[df - dg + i] = f[df - dg + i] - q * g[i];
    f[df] = PadicElem::zero(f[df].p());  // force exact cancellation
  }
  f.resize(std::max<long>(dg, 1), PadicElem::zero(f.at(0).p()));
  return f;
}

/// Extended Euclid: A f + B g = 1 for coprime f, g (throws when the gcd is
/// non-constant at precision).
void poly_xgcd(const Poly& f, const Poly& g, Poly& A, Poly& B) {
  long p = f.at(0).p();
  int prc = 1;
  for (const auto& x : f)
    if (!x.is_exact_zero()) prc = std::max(prc, x.prec());
  for (const auto& x : g)
    if (!x.is_exact_zero()) prc = std::max(prc, x.prec());
  Poly r0 = poly_trim(f), r1 = poly_trim(g);
  Poly s0{PadicElem::from_integer(1, p, prc)};
  Poly s1{PadicElem::zero(p)};
  Poly t0{PadicElem::zero(p)};
  Poly t1{s0};
  while (poly_deg(r1) > 0) {
    // r0 = q r1 + r2
    Poly r2 = r0;
    long dg = poly_deg(r1);
    PadicElem lg = r1[dg].inv();
    Poly q(std::max<long>(poly_deg(r0) - dg + 1, 1), PadicElem::zero(p));
    for (long df = poly_deg(r2); df >= dg; df = poly_deg(r2)) {
      PadicElem qc = r2[df] * lg;
      q[df - dg] = qc;
      for (long i = 0; i <= dg; ++i)
        r2[df - dg + i] = r2[df - dg + i] - qc * r1[i];
      r2[df] = PadicElem::zero(p);
    }
    Poly s2 = poly_sub(s0, poly_mul(q, s1));
    Poly t2 = poly_sub(t0, poly_mul(q, t1));
    r0 = std::move(r1);
    r1 = poly_trim(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (poly_deg(r1) == 0) {
    PadicElem inv = r1[0].inv();
    A = poly_trim(poly_mul(s1, Poly{inv}));
    B = poly_trim(poly_mul(t1, Poly{inv}));
    return;
  }
  // r1 == 0: gcd = r0, must be constant.
  if (poly_deg(r0) != 0)
    throw precision_error(
        "poly_xgcd: factors not coprime at working precision");
  PadicElem inv = r0[0].inv();
  A = poly_trim(poly_mul(s0, Poly{inv}));
  B = poly_trim(poly_mul(t0, Poly{inv}));
}

bool poly_is_zero_at(const Poly& f, long tol) {
  for (const auto& x : f)
    if (!x.is_zero() && x.val() < tol) return false;
  return true;
}

/// Split the monic polynomial c as R * S where S is monic of degree e
/// holding the e highest-valuation roots; refined by quadratic Hensel
/// iteration from the Newton-polygon initial factors.
SlopeFactors split_at_degree(const Poly& c, long e, long p, int M) {
  long n = poly_deg(c);
  PadicElem one = PadicElem::from_integer(1, p, M);
  SlopeFactors out;
  if (e == 0) {
    out.R = c;
    out.S = {one};
    out.A = {PadicElem::zero(p)};
    out.B = {one};
    return out;
  }
  if (e == n) {
    out.R = {one};
    out.S = c;
    out.A = {one};
    out.B = {PadicElem::zero(p)};
    return out;
  }
  PadicElem ce_inv = c[e].inv();
  Poly S(e + 1, PadicElem::zero(p));
  for (long i = 0; i < e; ++i) S[i] = c[i] * ce_inv;
  S[e] = one;
  Poly R(n - e + 1, PadicElem::zero(p));
  for (long i = e; i <= n; ++i) R[i - e] = c[i];
  long tol = std::max<long>(1, M - 2);
  Poly A, B;
  for (int it = 0; it < 60; ++it) {
    poly_xgcd(R, S, A, B);
    Poly E = poly_sub(c, poly_mul(R, S));
    if (poly_is_zero_at(E, tol)) {
      out.R = poly_trim(R);
      out.S = poly_trim(S);
      out.A = A;
      out.B = B;
      return out;
    }
    Poly dR = poly_mod(poly_mul(B, E), R);
    Poly dS = poly_mod(poly_mul(A, E), S);
    R = poly_add(R, dR);
    S = poly_add(S, dS);
  }
  throw precision_error(
      "slope_projector: factorization not liftable at this precision "
      "(slopes too close for M)");
}

}  // namespace

// ---------------------------------------------------------------------------
// Projectors.
// ---------------------------------------------------------------------------

SlopeProjector slope_projector(const PMatrix& A, const mpq_class& alpha,
                               int M) {
  long n = A.size();
  long p = mat_p(A);
  Poly c = charpoly(A, M);
  auto np = newton_polygon(c);
  long d = 0;
  for (const auto& [s, mult] : np)
    if (s <= alpha) d += mult;
  SlopeProjector out;
  out.factors = split_at_degree(c, n - d, p, M);
  if (d == 0) {
    out.projector = mat_zero(n, p);
  } else if (d == n) {
    out.projector = mat_identity(n, p, M);
  } else {
    out.projector = mat_mul(mat_poly(out.factors.B, A, M),
                            mat_poly(out.factors.S, A, M));
  }
  return out;
}

SlopeProjector slope_projector(const UpMatrix& Mx, const mpq_class& alpha) {
  return slope_projector(Mx.matrix, alpha, Mx.M);
}

PMatrix ordinary_projector(const PMatrix& A, int M) {
  long tol = std::max<long>(1, M - 2);
  PMatrix X = A;
  for (long t = 2; t <= 400; ++t) {
    PMatrix Y = mat_pow(X, t, M);  // Y = A^{t!}
    if (mat_eq_mod(X, Y, tol)) {
      // Entries that vanish mod p^tol are zeros of the limit idempotent
      // (surviving eigenvalues are 1): record them as such.
      for (auto& row : Y)
        for (auto& x : row)
          if (!x.is_zero() && x.val() >= tol)
            x = PadicElem::zero_at(x.p(), x.val());
      return Y;
    }
    X = std::move(Y);
  }
  throw precision_error(
      "ordinary_projector: iteration did not stabilize (precision or basis "
      "problem)");
}

PMatrix ordinary_projector(const UpMatrix& Mx) {
  return ordinary_projector(Mx.matrix, Mx.M);
}

PMatrix kernel_projector(const PMatrix& B, int M) {
  long n = B.size();
  long p = mat_p(B);
  Poly c = charpoly(B, M);
  long m = 0;
  while (m < n && c[m].is_zero()) ++m;
  if (m == 0)
    throw input_error(
        "kernel_projector: eigenvalue collision at working precision (no "
        "kernel eigenvalue)");
  if (m == n) return mat_identity(n, p, M);
  // Zero the vanishing coefficients exactly: c = R * T^m with R unit at 0.
  for (long i = 0; i < m; ++i) c[i] = PadicElem::zero(p);
  auto fac = split_at_degree(c, m, p, M);
  // Projector onto the S-block (the generalized kernel) = A(B) R(B).
  return mat_mul(mat_poly(fac.A, B, M), mat_poly(fac.R, B, M));
}

// ---------------------------------------------------------------------------
// Eigen-projection.
// ---------------------------------------------------------------------------

std::vector<PadicElem> eigen_project(
    const std::vector<PadicElem>& g,
    const std::vector<std::pair<PMatrix, PadicElem>>& hecke,
    const std::vector<std::vector<PadicElem>>& span, int M) {
  std::vector<PadicElem> v = g;
  for (const auto& [T, lambda] : hecke) {
    long n = T.size();
    long p = mat_p(T);
    PMatrix B = T;
    for (long i = 0; i < n; ++i) B[i][i] = B[i][i] - lambda;
    v = mat_apply(kernel_projector(B, M), v);
  }
  return solve_in_span(span, v, M);
}

bool degree_slope_ok(const PolyQX<PadicElem>& g, const PadicElem& lambda) {
  long r_eff = -1;
  for (long i = 0; i <= g.r; ++i)
    if (!g.row_is_zero(i)) r_eff = i;
  if (r_eff <= 0) return true;
  if (lambda.is_zero()) return true;  // infinite slope
  return lambda.val() >= r_eff;
}

// ---------------------------------------------------------------------------
// EigenPackage.
// ---------------------------------------------------------------------------

void EigenPackage::validate() const {
  if (n_max() < 1) throw input_error("EigenPackage: empty a_n list");
  if (!(an[1] - CycloNum(mpq_class(1))).is_zero())
    throw input_error("EigenPackage: a_1 != 1");
  long nm = n_max();
  for (long m = 2; m <= std::min<long>(nm, 20); ++m)
    for (long n = m + 1; m * n <= nm; ++n) {
      if (gcd_long(m, n) != 1) continue;
      if (!(an[m * n] - an[m] * an[n]).is_zero()) {
        std::ostringstream os;
        os << "EigenPackage: multiplicativity fails at (" << m << ", " << n
           << ")";
        throw input_error(os.str());
      }
    }
}

PolyQX<CycloNum> EigenPackage::q_expansion(long K) const {
  if (K > n_max())
    throw input_error("EigenPackage: q-expansion request beyond n_max");
  qx_ring<CycloNum>::Desc d;
  PolyQX<CycloNum> f = PolyQX<CycloNum>::zero(d, K, 0);
  f.w2 = 2 * k;
  f.level = N;
  for (long n = 1; n <= K; ++n) f.a[0][n] = an[n];
  return f;
}

}  // namespace symsq
