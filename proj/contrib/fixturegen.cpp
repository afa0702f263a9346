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

// Generates the fixture files consumed by the library:
//   eigen_20a.json   - the weight-2 level-20 rational newform (an eta
//                      product), its local data, and the eigenvalue tables
//                      of its ordinary weight family at p = 5;
//   basis_w2_20.json - exact basis of M_2(Gamma_0(20));
//   basis_w4_20.json - exact basis of M_4(Gamma_0(20));
//   basis_w6_20.json - exact basis of M_6(Gamma_0(20)).
//
// Everything here is derived from scratch: eta-product expansions, explicit
// weight-2 Eisenstein combinations, greedy product bases in higher weight,
// and 5-adic Hecke linear algebra at level 4 for the family eigenvalues.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "symsq/eisen.hpp"
#include "symsq/io.hpp"
#include "symsq/slope.hpp"

using namespace symsq;

namespace {

// ---------------------------------------------------------------------------
// Exact integer power series (index = q-exponent).
// ---------------------------------------------------------------------------

using ZSeries = std::vector<mpz_class>;

ZSeries zmul(const ZSeries& a, const ZSeries& b, long K,
             const mpz_class* mod = nullptr) {
  ZSeries c(K + 1, mpz_class(0));
  for (long i = 0; i <= K && i < static_cast<long>(a.size()); ++i) {
    if (a[i] == 0) continue;
    long jmax = std::min<long>(K - i, static_cast<long>(b.size()) - 1);
    for (long j = 0; j <= jmax; ++j) {
      if (b[j] == 0) continue;
      c[i + j] += a[i] * b[j];
    }
  }
  if (mod)
    for (auto& x : c) x %= *mod;
  return c;
}

/// prod_n (1 - q^{scale n})^e  through q^K (e >= 1).
ZSeries eta_part(long scale, long e, long K) {
  ZSeries r(K + 1, mpz_class(0));
  r[0] = 1;
  for (long rep = 0; rep < e; ++rep) {
    for (long n = 1; scale * n <= K; ++n) {
      for (long i = K - scale * n; i >= 0; --i) r[i + scale * n] -= r[i];
    }
  }
  return r;
}

/// q^shift * series  (drop overflow).
ZSeries qshift(const ZSeries& a, long shift, long K) {
  ZSeries r(K + 1, mpz_class(0));
  for (long i = 0; i + shift <= K && i < static_cast<long>(a.size()); ++i)
    r[i + shift] = a[i];
  return r;
}

long sigma1(long n) {
  long s = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    s += d;
    if (d != n / d) s += n / d;
  }
  return s;
}

/// P_d = d E_2(d z) - E_2(z), weight 2, level d (E_2 = 1 - 24 sum sigma_1 q^n).
ZSeries eis2_pair(long d, long K) {
  ZSeries r(K + 1, mpz_class(0));
  r[0] = d - 1;
  for (long n = 1; n <= K; ++n) {
    long v = 24 * sigma1(n);
    if (n % d == 0) v -= 24 * d * sigma1(n / d);
    r[n] = v;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Exact rational row echelon (for rank checks / greedy selection).
// ---------------------------------------------------------------------------

struct Echelon {
  std::vector<std::vector<mpq_class>> rows;
  std::vector<long> pivots;

  /// Returns true (and absorbs the row) when it enlarges the span.
  bool add(std::vector<mpq_class> v) {
    for (size_t i = 0; i < rows.size(); ++i) {
      long pc = pivots[i];
      if (v[pc] == 0) continue;
      mpq_class f = v[pc];
      for (size_t j = 0; j < v.size(); ++j) v[j] -= f * rows[i][j];
    }
    long pc = -1;
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) {
        pc = static_cast<long>(j);
        break;
      }
    if (pc < 0) return false;
    mpq_class f = v[pc];
    for (auto& x : v) x /= f;
    rows.push_back(std::move(v));
    pivots.push_back(pc);
    return true;
  }
};

std::vector<mpq_class> to_row(const ZSeries& s, long K) {
  std::vector<mpq_class> r(K + 1);
  for (long i = 0; i <= K && i < static_cast<long>(s.size()); ++i)
    r[i] = mpq_class(s[i]);
  return r;
}

PolyQX<mpq_class> to_form(const ZSeries& s, long K, long w2, long level) {
  qx_ring<mpq_class>::Desc d{};
  auto f = PolyQX<mpq_class>::zero(d, K, 0);
  f.w2 = w2;
  f.level = level;
  for (long n = 0; n <= K && n < static_cast<long>(s.size()); ++n)
    f.a[0][n] = mpq_class(s[n]);
  return f;
}

void require(bool ok, const std::string& what) {
  if (!ok) {
    std::cerr << "fixturegen: check failed: " << what << "\n";
    std::exit(1);
  }
}

// ---------------------------------------------------------------------------
// Level-4 Hecke eigen-data along the ordinary weight family at p = 5.
// ---------------------------------------------------------------------------

struct FamilyMember {
  long k = 0;
  mpz_class a3, a5;   // exact integers (Hecke-bound recognized)
  mpz_class lam40;    // unit root of X^2 - a5 X + 5^{k-1}, lift mod 5^40
};

mpz_class sym_lift(const PadicElem& x, int digits) {
  mpz_class mod = 1;
  for (int i = 0; i < digits; ++i) mod *= 5;
  mpz_class v = x.lift(digits);
  v = ((v % mod) + mod) % mod;
  if (v * 2 > mod) v -= mod;
  return v;
}

/// Unit root of X^2 - a X + 5^{k-1} for a 5-adic unit a, lift mod 5^40.
mpz_class unit_root_lift(const mpz_class& a, long k) {
  const long p = 5;
  const int M = 44;
  PadicElem ap = PadicElem::from_integer(a, p, M);
  mpz_class pe = 1;
  for (long i = 0; i < k - 1; ++i) pe *= p;
  PadicElem c = PadicElem::from_integer(pe, p, M);
  PadicElem x = ap;  // the unit root is congruent to a mod 5^{k-1}
  for (int it = 0; it < 40; ++it) {
    PadicElem fx = x * x - ap * x + c;
    if (fx.is_zero()) break;
    x = x - fx / (x + x - ap);
  }
  require((x * x - ap * x + c).is_zero(), "unit root refinement");
  mpz_class mod = 1;
  for (int i = 0; i < 40; ++i) mod *= 5;
  mpz_class v = x.lift(40);
  return ((v % mod) + mod) % mod;
}

/// Is `col` in the 5-adic span of `cols` at precision M?  (solve_in_span
/// throws exactly when it is not: the stored columns are kept independent.)
bool in_span(const std::vector<std::vector<PadicElem>>& cols,
             const std::vector<PadicElem>& col, int M) {
  if (cols.empty()) return false;
  try {
    solve_in_span(cols, col, M);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

/// a3, a5 of the normalized 5-ordinary member of weight k at level 4 whose
/// T_3 eigenvalue is congruent to a3_seed (mod seed_mod), by 5-adic linear
/// algebra on the monomial basis in the two weight-2 Eisenstein generators
/// of the level-4 graded ring.
FamilyMember family_member(long k, const ZSeries& gen2, const ZSeries& gen4,
                           long seed_mod, long a3_seed) {
  const long p = 5;
  const int M = 80;
  const long dim = k / 2 + 1;
  const long K_solve = dim + 8;
  const long K = 5 * (K_solve + 2);
  qx_ring<PadicElem>::Desc d{p, M};
  mpz_class modbig = 1;
  for (int i = 0; i < 86; ++i) modbig *= 5;

  // Monomial basis A^{deg-i} B^i of the weight-k graded piece, mod 5^66.
  long deg = k / 2;
  ZSeries a2K(gen2.begin(), gen2.begin() + (K + 1));
  ZSeries a4K(gen4.begin(), gen4.begin() + (K + 1));
  std::vector<ZSeries> apows, bpows;
  ZSeries one(K + 1, mpz_class(0));
  one[0] = 1;
  apows.push_back(one);
  bpows.push_back(one);
  for (long i = 1; i <= deg; ++i) {
    apows.push_back(zmul(apows.back(), a2K, K, &modbig));
    bpows.push_back(zmul(bpows.back(), a4K, K, &modbig));
  }
  std::vector<PolyQX<PadicElem>> basis;
  for (long i = 0; i <= deg; ++i) {
    ZSeries mono = zmul(apows[deg - i], bpows[i], K, &modbig);
    auto f = PolyQX<PadicElem>::zero(d, K, 0);
    f.w2 = 2 * k;
    f.level = 4;
    for (long n = 0; n <= K; ++n)
      f.a[0][n] = PadicElem::from_integer(mono[n], p, M);
    basis.push_back(std::move(f));
  }
  require(static_cast<long>(basis.size()) == dim, "level-4 monomial count");

  std::vector<std::vector<PadicElem>> cols;
  for (const auto& f : basis) cols.push_back(qx_flatten(f, K_solve, 0));

  auto op_matrix = [&](long l) {
    PMatrix A(dim, std::vector<PadicElem>(dim, PadicElem::zero(p)));
    for (long j = 0; j < dim; ++j) {
      auto img = hecke_tl(basis[j], l);
      auto x = solve_in_span(cols, qx_flatten(img, K_solve, 0), M);
      for (long i = 0; i < dim; ++i) A[i][j] = x[i];
    }
    return A;
  };
  PMatrix T3 = op_matrix(3);
  PMatrix T5 = op_matrix(5);

  // Ordinary part of T_5: independent columns of the limit projector.
  PMatrix e = ordinary_projector(T5, M);
  std::vector<std::vector<PadicElem>> wcols;
  for (long j = 0; j < dim; ++j) {
    std::vector<PadicElem> col(dim, PadicElem::zero(p));
    bool nonzero = false;
    for (long i = 0; i < dim; ++i) {
      col[i] = e[i][j];
      if (!col[i].is_zero()) nonzero = true;
    }
    if (nonzero && !in_span(wcols, col, M - 8)) wcols.push_back(col);
  }
  long rdim = static_cast<long>(wcols.size());
  require(rdim >= 2, "ordinary rank at level 4");
  std::cerr << "[fixturegen] weight " << k << ": ordinary rank " << rdim
            << "\n";

  auto restrict_to_w = [&](const PMatrix& A) {
    PMatrix R(rdim, std::vector<PadicElem>(rdim, PadicElem::zero(p)));
    for (long j = 0; j < rdim; ++j) {
      auto img = mat_apply(A, wcols[j]);
      auto x = solve_in_span(wcols, img, M - 8);
      for (long i = 0; i < rdim; ++i) R[i][j] = x[i];
    }
    return R;
  };
  PMatrix T3W = restrict_to_w(T3);
  PMatrix T5W = restrict_to_w(T5);

  // Newton-refine the branch's T_3 eigenvalue from the congruence seed.
  auto cp = charpoly(T3W, M - 8);
  auto ev = [&](const PadicElem& t) {
    PadicElem v = PadicElem::zero(p);
    for (long i = static_cast<long>(cp.size()) - 1; i >= 0; --i)
      v = v * t + cp[i];
    return v;
  };
  auto evd = [&](const PadicElem& t) {
    PadicElem v = PadicElem::zero(p);
    for (long i = static_cast<long>(cp.size()) - 1; i >= 1; --i)
      v = v * t + cp[i] * PadicElem::from_integer(i, p, M - 8);
    return v;
  };
  PadicElem x = PadicElem::from_integer(a3_seed, p, M - 8);
  for (int it = 0; it < 80; ++it) {
    PadicElem fx = ev(x);
    if (fx.is_zero()) break;
    x = x - fx / evd(x);
  }
  require(ev(x).is_zero(), "T_3 eigenvalue Newton convergence");
  PadicElem sep = evd(x);
  require(!sep.is_zero() && sep.val() <= 8, "eigenvalue separation");
  long digits_ok = (M - 8) - sep.val();
  require(digits_ok >= 58, "eigenvalue certified digits");

  mpz_class seed_check = x.lift(3);
  require((seed_check - a3_seed) % seed_mod == 0, "family branch congruence");

  // Eigenvector and the T_5 eigenvalue on it.
  PMatrix B = T3W;
  for (long i = 0; i < rdim; ++i) B[i][i] = B[i][i] - x;
  PMatrix PK = kernel_projector(B, M - 12);
  long besti = -1, bestj = -1, bestval = 1 << 20;
  for (long j = 0; j < rdim; ++j)
    for (long i = 0; i < rdim; ++i) {
      if (PK[i][j].is_zero()) continue;
      if (PK[i][j].val() < bestval) {
        bestval = PK[i][j].val();
        besti = i;
        bestj = j;
      }
    }
  require(bestj >= 0 && bestval <= 2, "usable eigenvector column");
  std::vector<PadicElem> v(rdim, PadicElem::zero(p));
  for (long i = 0; i < rdim; ++i) v[i] = PK[i][bestj] / PK[besti][bestj];
  auto tv = mat_apply(T5W, v);
  PadicElem a5p = tv[besti];  // v[besti] = 1
  for (long i = 0; i < rdim; ++i) {
    if (v[i].is_zero()) {
      require(tv[i].is_zero() || tv[i].val() >= 40,
              "T_5 eigenvalue coordinate consistency (zero slot)");
      continue;
    }
    require((tv[i] - a5p * v[i]).is_zero() ||
                (tv[i] - a5p * v[i]).val() >= std::min<long>(40, digits_ok - 6),
            "T_5 eigenvalue coordinate consistency");
  }
  require(a5p.val() == 0, "ordinarity of the member");

  FamilyMember out;
  out.k = k;
  out.a3 = sym_lift(x, 54);
  out.a5 = sym_lift(a5p, 54);
  // Hecke bounds certify the symmetric lifts are exact integers at the
  // digits carried (2 l^{(k-1)/2} < 5^54 / 2 for l = 3, 5 and k <= 102).
  out.lam40 = unit_root_lift(out.a5, k);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string outdir = argc > 1 ? argv[1] : "fixtures";

  // -------------------------------------------------------------------------
  // The newform f = eta(2z)^2 eta(10z)^2 of weight 2, level 20.
  // -------------------------------------------------------------------------
  const long K2 = 620;
  ZSeries prod = zmul(eta_part(2, 2, K2), eta_part(10, 2, K2), K2);
  ZSeries f20 = qshift(prod, 1, K2);
  require(f20[1] == 1 && f20[2] == 0 && f20[3] == -2 && f20[5] == -1,
          "eta product leading coefficients");
  for (long n = 1; 5 * n <= K2; ++n)
    require(f20[5 * n] == -f20[n], "U_5 eigenrelation for f");
  for (long n = 1; 3 * n <= K2; ++n) {
    mpz_class lhs = f20[3 * n];
    if (n % 3 == 0) lhs += 3 * f20[n / 3];
    require(lhs == -2 * f20[n], "T_3 eigenrelation for f");
  }
  for (long n = 1; 7 * n <= K2; ++n) {
    mpz_class lhs = f20[7 * n];
    if (n % 7 == 0) lhs += 7 * f20[n / 7];
    require(lhs == 2 * f20[n], "T_7 eigenrelation for f");
  }
  std::cerr << "[fixturegen] eta newform verified through q^" << K2 << "\n";

  // -------------------------------------------------------------------------
  // Weight-2 basis of M_2(Gamma_0(20)): f and the Eisenstein pairs.
  // -------------------------------------------------------------------------
  const long KB2 = 600;
  std::vector<long> ds{2, 4, 5, 10, 20};
  std::vector<ZSeries> w2series{f20};
  std::vector<std::string> w2labels{"f20"};
  for (long dd : ds) {
    w2series.push_back(eis2_pair(dd, KB2));
    w2labels.push_back("P" + std::to_string(dd));
  }
  {
    Echelon ech;
    for (const auto& s : w2series) require(ech.add(to_row(s, 40)), "w2 rank");
    require(ech.rows.size() == 6, "dim M_2(Gamma_0(20)) = 6");
  }
  BasisFile b2;
  b2.weight2 = 4;
  b2.level = 20;
  b2.K = KB2;
  b2.r = 0;
  b2.labels = w2labels;
  for (const auto& s : w2series) b2.forms.push_back(to_form(s, KB2, 4, 20));
  save_basis(b2, outdir + "/basis_w2_20.json");
  std::cerr << "[fixturegen] wrote basis_w2_20.json\n";

  // -------------------------------------------------------------------------
  // Weight-4 and weight-6 bases by greedy products.
  // -------------------------------------------------------------------------
  const long KB4 = 420;
  std::vector<ZSeries> gens4;
  gens4.push_back(
      qshift(zmul(eta_part(2, 2, KB4), eta_part(10, 2, KB4), KB4), 1, KB4));
  for (long dd : ds) gens4.push_back(eis2_pair(dd, KB4));

  std::vector<ZSeries> w4series;
  std::vector<std::string> w4labels;
  {
    Echelon ech;
    for (size_t i = 0; i < gens4.size() && ech.rows.size() < 12; ++i)
      for (size_t j = i; j < gens4.size(); ++j) {
        ZSeries cand = zmul(gens4[i], gens4[j], KB4);
        if (ech.add(to_row(cand, 80))) {
          w4series.push_back(std::move(cand));
          w4labels.push_back(w2labels[i] + "*" + w2labels[j]);
        }
        if (ech.rows.size() == 12) break;
      }
    require(ech.rows.size() == 12, "dim M_4(Gamma_0(20)) = 12");
  }
  BasisFile b4;
  b4.weight2 = 8;
  b4.level = 20;
  b4.K = KB4;
  b4.r = 0;
  b4.labels = w4labels;
  for (const auto& s : w4series) b4.forms.push_back(to_form(s, KB4, 8, 20));
  save_basis(b4, outdir + "/basis_w4_20.json");
  std::cerr << "[fixturegen] wrote basis_w4_20.json\n";

  std::vector<ZSeries> w6series;
  std::vector<std::string> w6labels;
  {
    Echelon ech;
    for (size_t i = 0; i < gens4.size() && ech.rows.size() < 18; ++i)
      for (size_t j = 0; j < w4series.size(); ++j) {
        ZSeries cand = zmul(gens4[i], w4series[j], KB4);
        if (ech.add(to_row(cand, 110))) {
          w6series.push_back(std::move(cand));
          w6labels.push_back(w2labels[i] + "*" + w4labels[j]);
        }
        if (ech.rows.size() == 18) break;
      }
    require(ech.rows.size() == 18, "dim M_6(Gamma_0(20)) = 18");
  }
  BasisFile b6;
  b6.weight2 = 12;
  b6.level = 20;
  b6.K = KB4;
  b6.r = 0;
  b6.labels = w6labels;
  for (const auto& s : w6series) b6.forms.push_back(to_form(s, KB4, 12, 20));
  save_basis(b6, outdir + "/basis_w6_20.json");
  std::cerr << "[fixturegen] wrote basis_w6_20.json\n";

  // -------------------------------------------------------------------------
  // The ordinary weight family at p = 5: eigenvalue tables at level 4.
  // -------------------------------------------------------------------------
  // Weight 6: the unique cusp form of level 4 is eta(2z)^12; exact values.
  const long K6 = 60;
  ZSeries g6 = qshift(eta_part(2, 12, K6), 1, K6);
  mpz_class a3_6 = g6[3], a5_6 = g6[5];
  for (long n = 1; 3 * n <= K6; ++n) {
    mpz_class lhs = g6[3 * n];
    if (n % 3 == 0) lhs += pow_si(3, 5) * g6[n / 3];
    require(lhs == a3_6 * g6[n], "T_3 eigenrelation for eta(2z)^12");
  }
  for (long n = 1; 5 * n <= K6; ++n) {
    mpz_class lhs = g6[5 * n];
    if (n % 5 == 0) lhs += pow_si(5, 5) * g6[n / 5];
    require(lhs == a5_6 * g6[n], "T_5 eigenrelation for eta(2z)^12");
  }
  std::cerr << "[fixturegen] weight 6 member: a3 = " << a3_6
            << ", a5 = " << a5_6 << "\n";

  const long KG = 600;
  ZSeries gen2 = eis2_pair(2, KG);
  ZSeries gen4_l4 = eis2_pair(4, KG);

  FamilyMember m22 = family_member(22, gen2, gen4_l4, 25, -2);
  std::cerr << "[fixturegen] weight 22 member: a3 = " << m22.a3
            << ", a5 = " << m22.a5 << "\n";
  FamilyMember m102 = family_member(102, gen2, gen4_l4, 125, -2);
  std::cerr << "[fixturegen] weight 102 member: a3 = " << m102.a3
            << ", a5 = " << m102.a5 << "\n";

  // -------------------------------------------------------------------------
  // Assemble the eigen package.
  // -------------------------------------------------------------------------
  EigenFile ef;
  ef.p = 5;
  ef.truncation = 300;
  auto& pkg = ef.pkg;
  pkg.k = 2;
  pkg.N = 20;
  pkg.nebentypus = DirichletChar::trivial(20);
  pkg.an.clear();
  for (long n = 0; n <= 300; ++n) pkg.an.push_back(CycloNum(mpq_class(f20[n])));
  pkg.lambda_p = CycloNum(mpq_class(-1));
  pkg.alpha = 0;
  // q = 2: conductor exponent 2 with no ramified quadratic character of
  // conductor 2 available forces a depth-zero supercuspidal attached to the
  // unramified quadratic extension; it is self-twist under the unramified
  // quadratic character (subcase 0), and lambda_2 = 0.
  LocalType t2;
  t2.case_tag = "iv";
  t2.sigma4_subcase = 0;
  t2.lambda_q = CycloNum(mpq_class(0));
  pkg.local_types[2] = t2;
  // q = 5: conductor exponent 1: Steinberg, lambda_5 = a_5 = -1.
  LocalType t5;
  t5.case_tag = "iii";
  t5.sigma4_subcase = -1;
  t5.lambda_q = CycloNum(mpq_class(-1));
  pkg.local_types[5] = t5;
  pkg.root_number_prime_to_p = CycloNum(mpq_class(1));
  pkg.hida_table = {
      {2, CycloNum(mpq_class(-1))},
      {6, CycloNum(mpq_class(unit_root_lift(a5_6, 6)))},
      {22, CycloNum(mpq_class(m22.lam40))},
      {102, CycloNum(mpq_class(m102.lam40))},
  };
  ef.hida_a3 = {
      {2, CycloNum(mpq_class(-2))},
      {6, CycloNum(mpq_class(a3_6))},
      {22, CycloNum(mpq_class(m22.a3))},
      {102, CycloNum(mpq_class(m102.a3))},
  };
  ef.hida_a5 = {
      {2, CycloNum(mpq_class(-1))},
      {6, CycloNum(mpq_class(a5_6))},
      {22, CycloNum(mpq_class(m22.a5))},
      {102, CycloNum(mpq_class(m102.a5))},
  };
  save_eigen_package(ef, outdir + "/eigen_20a.json");
  std::cerr << "[fixturegen] wrote eigen_20a.json\n";
  return 0;
}
