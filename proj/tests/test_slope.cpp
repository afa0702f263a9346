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
#include "symsq/slope.hpp"

using namespace symsq;

namespace {

PadicElem q_(const mpq_class& x, long p, int M) {
  return PadicElem::from_rational(x, p, M);
}

PMatrix from_rows(const std::vector<std::vector<mpq_class>>& rows, long p,
                  int M) {
  PMatrix A(rows.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (const auto& x : rows[i]) A[i].push_back(q_(x, p, M));
  return A;
}

bool is_idempotent(const PMatrix& P, long n) {
  return mat_eq_mod(mat_mul(P, P), P, n);
}

PadicElem mat_trace(const PMatrix& A) {
  PadicElem t = PadicElem::zero(A[0][0].p() ? A[0][0].p() : 5);
  for (size_t i = 0; i < A.size(); ++i) t = t + A[i][i];
  return t;
}

}  // namespace

TEST_CASE("characteristic polynomial") {
  long p = 5;
  int M = 20;
  auto A = from_rows({{1, 0}, {0, 5}}, p, M);
  auto c = charpoly(A, M);
  // (T-1)(T-5) = 5 - 6T + T^2.
  CHECK(c.size() == 3);
  CHECK(c[0].eq_mod(q_(5, p, M), 15));
  CHECK(c[1].eq_mod(q_(-6, p, M), 15));
  CHECK(c[2].eq_mod(q_(1, p, M), 15));

  // Non-diagonal 3x3 with known polynomial: companion of T^3 - 2T + 7.
  auto B = from_rows({{0, 0, -7}, {1, 0, 2}, {0, 1, 0}}, p, M);
  auto cb = charpoly(B, M);
  CHECK(cb[0].eq_mod(q_(7, p, M), 15));
  CHECK(cb[1].eq_mod(q_(-2, p, M), 15));
  CHECK(cb[2].is_zero());
  CHECK(cb[3].eq_mod(q_(1, p, M), 15));
}

TEST_CASE("newton polygon") {
  long p = 5;
  int M = 20;
  // (T-1)(T-5): slopes 0 and 1.
  auto np = newton_polygon({q_(5, p, M), q_(-6, p, M), q_(1, p, M)});
  REQUIRE(np.size() == 2);
  CHECK(np[0].first == 0);
  CHECK(np[0].second == 1);
  CHECK(np[1].first == 1);
  CHECK(np[1].second == 1);

  // T^2 - 5: slope 1/2, multiplicity 2.
  auto np2 = newton_polygon({q_(-5, p, M), PadicElem::zero(p), q_(1, p, M)});
  REQUIRE(np2.size() == 1);
  CHECK(np2[0].first == mpq_class(1, 2));
  CHECK(np2[0].second == 2);

  // Product of linear factors with prescribed valuations {0, 0, 1, 2, 3}:
  // exact multiset recovery.
  std::vector<mpq_class> c{1};
  for (mpq_class root : {mpq_class(2), mpq_class(3), mpq_class(5 * 2),
                         mpq_class(25 * 3), mpq_class(125 * 4)}) {
    std::vector<mpq_class> nc(c.size() + 1, 0);
    for (size_t i = 0; i < c.size(); ++i) {
      nc[i + 1] += c[i];
      nc[i] -= root * c[i];
    }
    c = nc;
  }
  std::vector<PadicElem> cp;
  for (const auto& x : c) cp.push_back(q_(x, p, M));
  auto np3 = newton_polygon(cp);
  REQUIRE(np3.size() == 4);
  CHECK(np3[0] == std::make_pair(mpq_class(0), 2L));
  CHECK(np3[1] == std::make_pair(mpq_class(1), 1L));
  CHECK(np3[2] == std::make_pair(mpq_class(2), 1L));
  CHECK(np3[3] == std::make_pair(mpq_class(3), 1L));

  // Leading coefficient not a unit.
  CHECK_THROWS_AS(newton_polygon({q_(1, p, M), q_(5, p, M)}), input_error);
}

TEST_CASE("U_p matrix on expansions") {
  long p = 5;
  int M = 16;
  long K = 100;
  qx_ring<PadicElem>::Desc d{p, M};

  // Geometric series (U_p-eigenvalue 1) and the critical E_2 (eigenvalue p).
  auto g1 = PolyQX<PadicElem>::zero(d, K, 1);
  for (long n = 0; n <= K; ++n) g1.a[0][n] = q_(1, p, M);
  auto g2 = qx_embed(e2_critical(p, K), p, M);
  auto Mx = up_matrix({g1, g2}, p, K);
  CHECK(Mx.matrix[0][0].eq_mod(q_(1, p, M), 12));
  CHECK(Mx.matrix[1][0].is_zero());
  CHECK(Mx.matrix[0][1].is_zero());
  CHECK(Mx.matrix[1][1].eq_mod(q_(5, p, M), 12));

  // Eisenstein pair E_4, E_4|[5]: U_5 E_4 = 126 E_4 - 125 E_4|[5],
  // U_5 (E_4|[5]) = E_4 (classical stabilization identities).
  auto E4 = PolyQX<PadicElem>::zero(d, K, 0);
  E4.w2 = 8;
  E4.a[0][0] = q_(mpq_class(1, 240), p, M);
  for (long n = 1; n <= K; ++n) {
    long s3 = 0;
    for (long t = 1; t <= n; ++t)
      if (n % t == 0) s3 += t * t * t;
    E4.a[0][n] = q_(s3, p, M);
  }
  auto E4p = shift_op(E4, 5);
  auto Mx2 = up_matrix({E4, E4p}, p, K);
  CHECK(Mx2.matrix[0][0].eq_mod(q_(126, p, M), 12));
  CHECK(Mx2.matrix[1][0].eq_mod(q_(-125, p, M), 12));
  CHECK(Mx2.matrix[0][1].eq_mod(q_(1, p, M), 12));
  CHECK(Mx2.matrix[1][1].is_zero());

  // Dependent basis rejected.
  CHECK_THROWS_AS(up_matrix({E4, E4}, p, K), input_error);
}

TEST_CASE("slope projector") {
  long p = 5;
  int M = 20;
  auto D = from_rows({{1, 0}, {0, 5}}, p, M);
  auto P0 = slope_projector(D, 0, M);
  CHECK(P0.projector[0][0].eq_mod(q_(1, p, M), 15));
  CHECK(P0.projector[1][1].is_zero());
  CHECK(P0.projector[0][1].is_zero());
  CHECK(P0.projector[1][0].is_zero());
  auto P1 = slope_projector(D, 1, M);
  CHECK(mat_eq_mod(P1.projector, mat_identity(2, p, M), 15));

  // 4x4 conjugated diagonal with slopes {0, 0, 1, 2}, alpha = 1: rank-3
  // idempotent commuting with the matrix; eigenvectors kept/killed.
  auto C = from_rows({{1, 2, 0, 1},
                      {0, 1, 1, 3},
                      {2, 0, 1, 1},
                      {1, 1, 0, 1}},
                     p, M);
  auto Cinv = mat_inv(C, M);
  auto Ddiag = from_rows(
      {{2, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 10, 0}, {0, 0, 0, 75}}, p, M);
  auto A = mat_mul(mat_mul(C, Ddiag), Cinv);
  auto SP = slope_projector(A, 1, M);
  const auto& P = SP.projector;
  CHECK(is_idempotent(P, 12));
  CHECK(mat_eq_mod(mat_mul(P, A), mat_mul(A, P), 12));
  // rank = trace for an idempotent = 3.
  CHECK(mat_trace(P).eq_mod(q_(3, p, M), 12));
  // Columns of C are eigenvectors: the first three are fixed, the last dies.
  for (long j = 0; j < 4; ++j) {
    std::vector<PadicElem> v;
    for (long i = 0; i < 4; ++i) v.push_back(C[i][j]);
    auto w = mat_apply(P, v);
    for (long i = 0; i < 4; ++i) {
      if (j < 3)
        CHECK(w[i].eq_mod(v[i], 12));
      else
        CHECK((w[i].is_zero() || w[i].val() >= 12));
    }
  }
  // Factor slopes split cleanly around alpha.
  for (const auto& [s, mult] : newton_polygon(SP.factors.R))
    CHECK(s <= 1);
  for (const auto& [s, mult] : newton_polygon(SP.factors.S))
    CHECK(s > 1);

  // Fractional slope: companion of T^2 - 5 (both roots slope 1/2).
  auto F = from_rows({{0, 5}, {1, 0}}, p, M);
  CHECK(mat_eq_mod(slope_projector(F, 0, M).projector, mat_zero(2, p), 15));
  CHECK(mat_eq_mod(slope_projector(F, mpq_class(1, 2), M).projector,
                   mat_identity(2, p, M), 15));
}

TEST_CASE("ordinary projector") {
  long p = 5;
  int M = 18;
  auto D = from_rows({{1, 0}, {0, 5}}, p, M);
  auto e = ordinary_projector(D, M);
  CHECK(e[0][0].eq_mod(q_(1, p, M), 14));
  CHECK(e[1][1].is_zero());

  // Agreement with slope_projector(alpha = 0) on a conjugated matrix with
  // units and non-units mixed; e^2 = e.
  auto C = from_rows({{1, 1, 0}, {2, 1, 1}, {0, 1, 1}}, p, M);
  auto A = mat_mul(mat_mul(C, from_rows({{3, 0, 0}, {0, 7, 0}, {0, 0, 5}},
                                        p, M)),
                   mat_inv(C, M));
  auto e2 = ordinary_projector(A, M);
  CHECK(is_idempotent(e2, 12));
  CHECK(mat_eq_mod(e2, slope_projector(A, 0, M).projector, 12));
}

TEST_CASE("eigen projection onto an oldform span") {
  long p = 5;
  int M = 18;
  // Basis of dimension 3: span vectors v1, v2 (the oldform copies) carry
  // T-eigenvalue 2; the complement w carries 9.
  auto C = from_rows({{1, 0, 1}, {1, 1, 2}, {0, 1, 2}}, p, M);
  auto T = mat_mul(mat_mul(C, from_rows({{2, 0, 0}, {0, 2, 0}, {0, 0, 9}},
                                        p, M)),
                   mat_inv(C, M));
  std::vector<PadicElem> v1, v2, w;
  for (long i = 0; i < 3; ++i) {
    v1.push_back(C[i][0]);
    v2.push_back(C[i][1]);
    w.push_back(C[i][2]);
  }
  PadicElem lam = q_(2, p, M);

  // g = f itself.
  auto c1 = eigen_project(v1, {{T, lam}}, {v1, v2}, M);
  CHECK(c1[0].eq_mod(q_(1, p, M), 12));
  CHECK(c1[1].is_zero());
  // g = 3 f|[d0].
  std::vector<PadicElem> g2;
  for (auto& x : v2) g2.push_back(x * q_(3, p, M));
  auto c2 = eigen_project(g2, {{T, lam}}, {v1, v2}, M);
  CHECK(c2[0].is_zero());
  CHECK(c2[1].eq_mod(q_(3, p, M), 12));
  // Mixed input: the competing component is annihilated.
  std::vector<PadicElem> g3(3, PadicElem::zero(p));
  for (long i = 0; i < 3; ++i)
    g3[i] = v1[i] * q_(2, p, M) + v2[i] * q_(3, p, M) + w[i] * q_(7, p, M);
  auto c3 = eigen_project(g3, {{T, lam}}, {v1, v2}, M);
  CHECK(c3[0].eq_mod(q_(2, p, M), 12));
  CHECK(c3[1].eq_mod(q_(3, p, M), 12));
  // Hecke equivariance: projecting T g multiplies the coordinates by lambda.
  auto c4 = eigen_project(mat_apply(T, g3), {{T, lam}}, {v1, v2}, M);
  CHECK(c4[0].eq_mod(q_(4, p, M), 12));
  CHECK(c4[1].eq_mod(q_(6, p, M), 12));

  // Collision: T - 3 has no kernel at all, which must be reported.
  CHECK_THROWS_AS(eigen_project(v1, {{T, q_(3, p, M)}}, {v1, v2}, M),
                  input_error);
}

TEST_CASE("degree-slope witness") {
  long p = 5;
  int M = 12;
  auto g = qx_embed(e2_critical(p, 40), p, M);
  CHECK(degree_slope_ok(g, q_(5, p, M)));       // slope 1, degree 1
  CHECK_FALSE(degree_slope_ok(g, q_(1, p, M)));  // slope 0 < degree 1
}

TEST_CASE("eigen package validation") {
  EigenPackage f;
  f.k = 2;
  f.N = 14;
  f.nebentypus = DirichletChar::trivial(1);
  f.an.push_back(CycloNum(mpq_class(0)));
  for (long n = 1; n <= 30; ++n) f.an.push_back(CycloNum(mpq_class(n)));
  f.validate();

  auto bad = f;
  bad.an[6] = CycloNum(mpq_class(5));
  CHECK_THROWS_AS(bad.validate(), input_error);
  auto bad2 = f;
  bad2.an[1] = CycloNum(mpq_class(2));
  CHECK_THROWS_AS(bad2.validate(), input_error);

  auto qe = f.q_expansion(10);
  CHECK(qe.w2 == 4);
  CHECK(qe.level == 14);
  CHECK(qe.a[0][7].rational() == 7);
}
