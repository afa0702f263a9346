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

#include "symsq/distributions.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace symsq {

namespace {

using json = nlohmann::json;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

// ---------------------------------------------------------------------------
// Small modular arithmetic (the bucket pass runs billions of iterations, so
// it stays in machine words; the modulus is a prime power < 2^61).
// ---------------------------------------------------------------------------

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}
inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return s >= m ? s - m : s;
}
inline u64 submod(u64 a, u64 b, u64 m) { return addmod(a, m - b, m); }

u64 powmod_u64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 invmod_u64(u64 a, u64 m) {
  long long t = 0, nt = 1;
  long long r = static_cast<long long>(m), nr = static_cast<long long>(a % m);
  while (nr != 0) {
    long long q = r / nr;
    long long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw input_error("invmod_u64: not invertible");
  if (t < 0) t += static_cast<long long>(m);
  return static_cast<u64>(t);
}

long lcm_long(long a, long b) { return a / gcd_long(a, b) * b; }

long mobius_long(long n) {
  long m = 1;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    n /= q;
    if (n % q == 0) return 0;
    m = -m;
  }
  if (n > 1) m = -m;
  return m;
}

/// Positive fundamental discriminant attached to n > 0 (discriminant of
/// Q(sqrt(n))): d = squarefree part s when s = 1 mod 4, else 4s.
long fundamental_disc(long n) {
  long s = 1;
  for (long q = 2; q * q <= n; ++q) {
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e & 1) s *= q;
  }
  s *= n;  // leftover prime
  return (s % 4 == 1) ? s : 4 * s;
}

/// Jacobi symbol (a|n) for odd n > 0.
int jacobi_sym(long a, long n) {
  a %= n;
  if (a < 0) a += n;
  int s = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long r = n % 8;
      if (r == 3 || r == 5) s = -s;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) s = -s;
    a %= n;
  }
  return n == 1 ? s : 0;
}

/// Kronecker symbol (d|c) for d > 0, c > 0.
int kron_sym(long d, long c) {
  int s = 1;
  while (c % 2 == 0) {
    if (d % 2 == 0) return 0;
    c /= 2;
    long r = d % 8;
    if (r == 3 || r == 5) s = -s;
  }
  return s * jacobi_sym(d, c);
}

/// Reduce a rational to the fixed-point residue ring Z/p^MM; the
/// denominator must be prime to p.
u64 qred_u64(const mpq_class& x, long p, u64 m) {
  mpz_class num = x.get_num(), den = x.get_den();
  bool neg = num < 0;
  if (neg) num = -num;
  if (mpz_divisible_ui_p(den.get_mpz_t(), p))
    throw precision_error("qred_u64: p in denominator");
  u64 nu = mpz_fdiv_ui(num.get_mpz_t(), m);
  u64 de = mpz_fdiv_ui(den.get_mpz_t(), m);
  u64 r = mulmod(nu, invmod_u64(de, m), m);
  return neg ? (m - r) % m : r;
}

/// Cap the absolute precision of x to A digits.
PadicElem cap_abs(const PadicElem& x, long A) {
  if (x.is_zero())
    return PadicElem::zero_at(x.p() ? x.p() : 5,
                              std::min<long>(A, x.is_exact_zero() ? A : x.abs_prec()));
  if (x.val() >= A) return PadicElem::zero_at(x.p(), A);
  long rel = A - x.val();
  if (rel >= x.prec()) return x;
  return x.cap_prec(static_cast<int>(rel));
}

PolyQX<PadicElem> qx_embed_rational(const PolyQX<mpq_class>& f, long p,
                                    int M) {
  typename qx_ring<PadicElem>::Desc d{p, M};
  auto h = PolyQX<PadicElem>::zero(d, f.K, f.r);
  h.w2 = f.w2;
  h.level = f.level;
  for (long i = 0; i <= f.r; ++i)
    for (long n = 0; n <= f.K; ++n)
      h.a[i][n] = PadicElem::from_rational(f.a[i][n], p, M);
  return h;
}

// PadicElem <-> JSON, for the moment cache.
json padic_to_json(const PadicElem& x) {
  if (x.is_exact_zero()) return json{{"z", true}};
  if (x.is_zero()) return json{{"z", false}, {"v", x.abs_prec()}, {"u", "0"}};
  return json{{"z", false},
              {"v", x.val()},
              {"m", x.prec()},
              {"u", x.unit().get_str()}};
}

PadicElem padic_from_json(const json& j, long p) {
  if (j.at("z").get<bool>()) return PadicElem::zero(p);
  if (j.at("u").get<std::string>() == "0")
    return PadicElem::zero_at(p, j.at("v").get<long>());
  return PadicElem::from_unit(mpz_class(j.at("u").get<std::string>()),
                              j.at("v").get<long>(), p, j.at("m").get<int>());
}

}  // namespace

// ---------------------------------------------------------------------------
// Context.
// ---------------------------------------------------------------------------

DistContext make_dist_context(const RunConfig& cfg) {
  cfg.validate();
  DistContext ctx;
  ctx.cfg = cfg;
  ctx.klctx = KLContext{cfg.p, cfg.D, cfg.b, cfg.M, cfg.n_max};
  ctx.xi = char_from_spec(cfg.xi);
  ctx.psi = char_from_spec(cfg.psi);
  ctx.u = one_unit_decompose(
              PadicElem::from_integer(cfg.b, cfg.p, cfg.M + 10))
              .second.cap_prec(cfg.M + 10);

  if (cfg.fixture_dir.empty())
    throw input_error("make_dist_context: fixture_dir not set");
  ctx.w2_exact = load_basis(cfg.fixture_dir + "/basis_w2_20.json", 600);
  auto eig = load_eigen_package(cfg.fixture_dir + "/eigen_20a.json");
  ctx.k0 = eig.pkg.k;

  std::vector<PolyQX<PadicElem>> emb;
  emb.reserve(ctx.w2_exact.forms.size());
  for (const auto& f : ctx.w2_exact.forms)
    emb.push_back(qx_embed_rational(f, cfg.p, cfg.M));
  ctx.up = up_matrix(emb, cfg.p, 120);
  ctx.proj = ordinary_projector(ctx.up);
  return ctx;
}

// ---------------------------------------------------------------------------
// Theta series and per-character measure forms.
// ---------------------------------------------------------------------------

PolyQX<CycloNum> theta_imprimitive(const DirichletChar& chi, long sieve,
                                   long K) {
  typename qx_ring<CycloNum>::Desc d{};
  auto h = PolyQX<CycloNum>::zero(d, K, 0);
  long beta = chi.is_odd() ? 1 : 0;
  h.w2 = 2 * beta + 1;
  long cond = chi.conductor();
  h.level = 4 * cond * cond;
  for (long m = 1; m * m <= K; ++m) {
    if (gcd_long(m, sieve) != 1) continue;
    CycloNum v = chi.value(m);
    if (v.is_zero()) continue;
    if (beta) v = v.scale(mpq_class(m));
    h.a[0][m * m] = v;
  }
  return h;
}

namespace {

PolyQX<PadicElem> mu_s_impl(const DistContext& ctx, const DirichletChar& eps,
                            long s, long K, bool plus) {
  const RunConfig& cfg = ctx.cfg;
  long p = cfg.p;
  // The measure variable pairs eps(mm) on the theta side against
  // eps(dd c)^{-1} on the Eisenstein side (indistinguishable for quadratic
  // eps, forced by the cylinder decomposition for wild eps).
  auto omega_s = DirichletChar::teichmuller_power(p, s);
  auto chi_theta = eps * ctx.xi * omega_s;
  auto chi_E = ctx.psi * ctx.xi * eps.inverse() * DirichletChar::kronecker(-1);
  long sieve = 2 * p * cfg.C;
  auto th = qx_embed(theta_imprimitive(chi_theta, sieve, K), p, cfg.M);

  int len = cfg.M_S, T = cfg.M_S + 6;
  PolyQX<PadicElem> spec;
  if (plus) {
    auto F = cal_E_plus(chi_E, ctx.klctx, K, len, T);
    spec = specialize_family_poly(F, ctx.k0 - s, ctx.u);
  } else {
    auto F = cal_E(chi_E, ctx.klctx, K, len, T);
    spec = specialize_family(F, ctx.k0 - s, ctx.u);
  }
  auto prod = qx_mul(th, spec);
  prod.level = lcm_long(th.level, static_cast<long>(spec.level));
  return prod;
}

}  // namespace

PolyQX<PadicElem> mu_s(const DistContext& ctx, const DirichletChar& eps,
                       long s, long K) {
  return mu_s_impl(ctx, eps, s, K, false);
}

PolyQX<PadicElem> mu_plus_s(const DistContext& ctx, const DirichletChar& eps,
                            long s, long K) {
  return mu_s_impl(ctx, eps, s, K, true);
}

FamilyQX theta_dot_E(const DistContext& ctx, long K, int len, int T) {
  long p = ctx.cfg.p;
  int M = ctx.cfg.M;
  auto th = qx_embed(theta0_series(K), p, M);
  auto F = cal_E_improved(ctx.xi.primitive(), ctx.psi.primitive(), ctx.k0,
                          ctx.klctx, K, len, T);
  FamilyQX h = FamilyQX::zero(F.ring, std::min(K, F.K), 0);
  h.level = lcm_long(static_cast<long>(F.level), 4L);
  h.fs2 = F.fs2 + 1;
  for (long m = 0; m * m <= h.K; ++m) {
    long mq = m * m;
    const PadicElem& c = th.a[0][mq];
    if (c.is_zero()) continue;
    for (long n = 0; n + mq <= h.K; ++n)
      h.a[0][n + mq] = h.a[0][n + mq] + F.a[0][n].scale(c);
  }
  return h;
}

// ---------------------------------------------------------------------------
// The cylinder engine.
//
// Level n, Q = p^n, cylinders a(1 + p^n Z_p) with a running over 1-units.
// The two stored moments per cylinder are the <z>^j-weighted restrictions of
// the glued measure form (trivial Teichmuller branch):
//   m_j(a) = (1/p^{n-1}) sum_{eta wild mod p^n} eta(a)^{-1}
//            [ <mm>^j-weighted theta(eta xi) x
//              E-part(psi xi eta^{-1} sigma_{-1}) at weight node k0 - j ],
// each as the U_p^{2n-1}-image coefficient grid.  The average over the wild
// characters eta is collapsed analytically: eta is evaluated at an explicit
// product X of the theta index, the divisor-sum argument, the Bernoulli
// summation variable and (for the regularization term) the regulator b, so
// summing eta(a)^{-1} eta(X) leaves the 1-unit-class indicator
// <X> = <a> mod p^n.  The L-values are realized by one Bernoulli-sum bucket
// pass per Eisenstein slot, binned by the summation variable mod p^n and
// then aggregated into 1-unit classes.
// ---------------------------------------------------------------------------

RawCylinderLevel cylinder_engine(const DistContext& ctx, long n,
                                 const std::vector<long>& nus, int T) {
  const RunConfig& cfg = ctx.cfg;
  const long p = cfg.p, D = cfg.D, C = cfg.C, b = cfg.b;
  if (n < 1) throw input_error("cylinder_engine: level n >= 1 required");
  if (ctx.k0 != 2)
    throw input_error("cylinder_engine: weight-2 eigenform required");
  if (!ctx.xi.is_quadratic() || !ctx.psi.is_quadratic())
    throw input_error("cylinder_engine: quadratic xi and psi required");
  if (ctx.xi.is_odd() || ctx.psi.is_odd())
    throw input_error("cylinder_engine: even xi and psi required");
  if (T < 2 || nus.empty()) throw input_error("cylinder_engine: bad nus/T");
  for (long nu : nus)
    if (nu < 1) throw input_error("cylinder_engine: coefficient index >= 1");

  // Fixed-point modulus p^MM in a machine word.
  int MM = 0;
  u64 m_ = 1;
  while (m_ <= (u64(1) << 61) / static_cast<u64>(p)) {
    m_ *= static_cast<u64>(p);
    ++MM;
  }
  const long s0 = n + 1;  // fixed-point shift: p-part of the slot modulus
                          // (the B_1 term carries 1/M) plus one digit for
                          // Bernoulli denominators.

  long Q = 1;
  for (long i = 0; i < n; ++i) Q *= p;
  long p2n1 = 1;
  for (long i = 0; i < 2 * n - 1; ++i) p2n1 *= p;
  const long n_cyl = Q / p;  // number of 1-unit classes mod p^n

  // Teichmuller lifts mod p^MM and mod Q.
  std::vector<u64> teich(p, 0), teichinv(p, 0);
  std::vector<long> tQinv(p, 0);
  for (long i = 1; i < p; ++i) {
    mpz_class tl = symsq::teichmuller(mpz_class(i), p, MM).lift(MM);
    teich[i] = static_cast<u64>(mpz_fdiv_ui(tl.get_mpz_t(), m_));
    teichinv[i] = invmod_u64(teich[i], m_);
    long tq = static_cast<long>(mpz_fdiv_ui(tl.get_mpz_t(), Q));
    tQinv[i] = static_cast<long>(
        invmod_u64(static_cast<u64>(tq), static_cast<u64>(Q)));
  }
  // 1-unit class index of a unit x mod Q: <x> = x teich(x)^{-1} is 1 + p t.
  auto cls_idx = [&](long x) { return ((x * tQinv[x % p]) % Q - 1) / p; };

  const u64 u_mod = mulmod(static_cast<u64>(b) % m_, teichinv[b % p], m_);
  std::vector<u64> upow(T + 2, 1);
  for (int w = 1; w <= T + 1; ++w) upow[w] = mulmod(upow[w - 1], u_mod, m_);
  const u64 invb_m = invmod_u64(static_cast<u64>(b % m_), m_);
  const long invb_Q =
      static_cast<long>(invmod_u64(static_cast<u64>(b % Q), static_cast<u64>(Q)));

  // sigma_{-1} psi xi value table.
  auto chifix = DirichletChar::kronecker(-1) * ctx.psi * ctx.xi;
  const long Mfix = chifix.modulus();
  std::vector<int> cfix(Mfix);
  for (long c = 0; c < Mfix; ++c) cfix[c] = chifix.value_int(c);
  const long Mxi = ctx.xi.modulus();
  std::vector<int> xiv(Mxi);
  for (long c = 0; c < Mxi; ++c) xiv[c] = ctx.xi.value_int(c);

  auto bern = bernoulli_numbers(T + 1);

  RawCylinderLevel out;
  out.n = n;
  out.Q = Q;
  out.nus = nus;
  for (long t = 0; t < n_cyl; ++t) out.units.push_back(1 + p * t);
  const long nnus = static_cast<long>(nus.size());

  // Units mod Q (for the bucket tables).
  std::vector<long> units_all;
  for (long r = 1; r < Q; ++r)
    if (r % p != 0) units_all.push_back(r);

  const long sieve = 2 * p * C;
  std::map<long, std::vector<std::pair<long, long>>> slots;  // n' -> (pos, mm)
  for (long pos = 0; pos < nnus; ++pos) {
    long N = nus[pos] * p2n1;
    for (long mm = 1; mm * mm < N; ++mm) {
      if (gcd_long(mm, sieve) != 1) continue;
      long nprime = N - mm * mm;
      if (nprime % p == 0) continue;
      slots[nprime].push_back({pos, mm});
    }
  }

  // Node accumulators: acc[j][cyl][pos][w-idx], w = 2..T+1.
  auto idx_of = [&](long j, long ci, long pos, long wi) {
    return ((j * n_cyl + ci) * nnus + pos) * T + wi;
  };
  std::vector<u64> acc(2 * n_cyl * nnus * T, 0);

  const long base =
      lcm_long(Q, lcm_long(std::max(C, 1L), lcm_long(Mfix, D)));
  std::vector<long> base_primes;
  for (auto& [q, e] : factorize(base)) base_primes.push_back(q);

  std::vector<u64> S((T + 1) * Q);
  std::vector<u64> Phat(n_cyl * T);  // 1-unit class sums
  std::vector<long> inva(n_cyl);     // a^{-1} mod Q per cylinder
  for (long ci = 0; ci < n_cyl; ++ci)
    inva[ci] = static_cast<long>(invmod_u64(
        static_cast<u64>(out.units[ci]), static_cast<u64>(Q)));

  for (const auto& [nprime, occs] : slots) {
    const long dprime = fundamental_disc(nprime);
    const long Mslot = lcm_long(dprime, base);

    // Bucket pass: S[e][r] = sum over admissible c = r mod Q of
    // sigma_{n'} chifix (c) * c^e.
    std::fill(S.begin(), S.end(), 0);
    for (long c = 1; c < Mslot; ++c) {
      bool skip = false;
      for (long q : base_primes)
        if (c % q == 0) {
          skip = true;
          break;
        }
      if (skip) continue;
      int jc = kron_sym(dprime, c);
      if (jc == 0) continue;
      int sg = jc * cfix[c % Mfix];
      if (sg == 0) continue;
      u64 x = (sg > 0) ? 1 : m_ - 1;
      const u64 cm = static_cast<u64>(c) % m_;
      u64* row = S.data() + (c % Q);
      for (int e = 0; e <= T; ++e) {
        row[static_cast<size_t>(e) * Q] =
            addmod(row[static_cast<size_t>(e) * Q], x, m_);
        x = mulmod(x, cm, m_);
      }
    }

    // Scaled Bernoulli-value tables per residue, aggregated into 1-unit
    // classes: Phat[cls][w] = sum over units r in the class of
    //   p^{s0} M^{w-2} B_{w-1}(c/M)-weighted bucket sums at r, times
    //   omega(r)^{-w}.
    std::vector<std::vector<u64>> gmod(T + 2);
    for (int w = 2; w <= T + 1; ++w) {
      int m = w - 1;
      gmod[w].assign(m + 1, 0);
      for (int e = 0; e <= m; ++e) {
        mpq_class g(binomial_mpz(m, e));
        g *= bern[m - e];
        mpq_class Mp(Mslot);
        int ex = w - 2 - e;
        mpq_class Mpow = 1;
        for (int t = 0; t < (ex >= 0 ? ex : -ex); ++t) Mpow *= Mp;
        if (ex < 0) Mpow = 1 / Mpow;
        g *= Mpow;
        g *= mpq_class(pow_si(p, s0));
        gmod[w][e] = qred_u64(g, p, m_);
      }
    }
    std::fill(Phat.begin(), Phat.end(), 0);
    for (long r : units_all) {
      const long ci = cls_idx(r);
      const u64 ti = teichinv[r % p];
      u64 tpow = mulmod(ti, ti, m_);  // ti^w starting at w = 2
      for (int w = 2; w <= T + 1; ++w) {
        u64 v = 0;
        for (int e = 0; e <= w - 1; ++e)
          v = addmod(v, mulmod(gmod[w][e], S[static_cast<size_t>(e) * Q + r], m_),
                     m_);
        u64& sv = Phat[ci * T + (w - 2)];
        sv = addmod(sv, mulmod(v, tpow, m_), m_);
        tpow = mulmod(tpow, ti, m_);
      }
    }

    // Regularization lookup weight: the eta(b)-shifted indicator carries
    // X(w) = sigma_{n'}(b) chifix(b) omega(b)^{-w} b^{w-1}
    //      = sign * <b>^w b^{-1}.
    std::vector<u64> Xw(T + 2, 0);
    {
      int sb = kron_sym(dprime, b) * cfix[b % Mfix];
      if (sb != 0) {
        for (int w = 2; w <= T + 1; ++w) {
          u64 v = mulmod(upow[w], invb_m, m_);
          Xw[w] = (sb > 0) ? v : (m_ - v) % m_;
        }
      }
    }

    // Divisor pairs t1^2 t2^2 | n', gcd(t1 t2, D p) = 1.
    struct TP {
      long dd;
      int sign;                // mu(t1) sigma_{n'}(t1) chifix(dd)
      u64 wconst;              // 1/(t1^2 t2^3)
      std::vector<u64> ddpow;  // <dd>^w
    };
    std::vector<TP> tpairs;
    for (long t1 = 1; t1 * t1 <= nprime; ++t1) {
      if (nprime % (t1 * t1)) continue;
      long mu1 = mobius_long(t1);
      if (mu1 == 0 || gcd_long(t1, D * p) != 1) continue;
      int st1 = kron_sym(dprime, t1);
      if (st1 == 0) continue;
      long rest = nprime / (t1 * t1);
      for (long t2 = 1; t2 * t2 <= rest; ++t2) {
        if (rest % (t2 * t2) || gcd_long(t2, D * p) != 1) continue;
        long dd = t1 * t2 * t2;
        int cv = cfix[dd % Mfix];
        if (cv == 0) continue;
        TP tp;
        tp.dd = dd;
        tp.sign = static_cast<int>(mu1) * st1 * cv;
        u64 den = mulmod(
            mulmod(static_cast<u64>(t1) % m_, static_cast<u64>(t1) % m_, m_),
            powmod_u64(static_cast<u64>(t2) % m_, 3, m_), m_);
        tp.wconst = invmod_u64(den, m_);
        u64 ddu = mulmod(static_cast<u64>(dd) % m_, teichinv[dd % p], m_);
        tp.ddpow.assign(T + 2, 1);
        for (int w = 1; w <= T + 1; ++w)
          tp.ddpow[w] = mulmod(tp.ddpow[w - 1], ddu, m_);
        tpairs.push_back(std::move(tp));
      }
    }
    if (tpairs.empty()) continue;

    // The measure variable of the glued distribution is the unit
    // z = mm / (dd c): the wild character collapses through
    // eta(mm) eta(dd c)^{-1}, and the first moment carries the explicit
    // <mm> theta-side weight while the <dd c>^{-1} part is the step to the
    // edge node of the same slot family.
    for (const auto& [pos, mm] : occs) {
      int th_sign = xiv[mm % Mxi];
      if (th_sign == 0) continue;
      const u64 th1 =
          mulmod(static_cast<u64>(mm) % m_, teichinv[mm % p], m_);  // <mm>
      for (const auto& tp : tpairs) {
        int sg = th_sign * tp.sign;
        long invdd = static_cast<long>(
            invmod_u64(static_cast<u64>(tp.dd % Q), static_cast<u64>(Q)));
        long tgt = (mm % Q) * invdd % Q;
        for (long ci_a = 0; ci_a < n_cyl; ++ci_a) {
          long x0 = tgt * inva[ci_a] % Q;
          long ci0 = cls_idx(x0);
          long cib = cls_idx(x0 * invb_Q % Q);
          const u64* P0 = Phat.data() + ci0 * T;
          const u64* Pb = Phat.data() + cib * T;
          for (int w = 2; w <= T + 1; ++w) {
            int wi = w - 2;
            u64 val = submod(P0[wi], mulmod(Xw[w], Pb[wi], m_), m_);
            val = mulmod(val, mulmod(tp.wconst, tp.ddpow[w], m_), m_);
            u64& s0v = acc[idx_of(0, ci_a, pos, wi)];
            s0v = (sg > 0) ? addmod(s0v, val, m_) : submod(s0v, val, m_);
            u64 val1 = mulmod(val, th1, m_);
            u64& s1v = acc[idx_of(1, ci_a, pos, wi)];
            s1v = (sg > 0) ? addmod(s1v, val1, m_) : submod(s1v, val1, m_);
          }
        }
      }
    }
  }

  // Convert accumulators to p-adic node values and assemble the moments:
  // j = 0 reads the weight node w = k0 = 2 directly; j = 1 extrapolates the
  // slot-analytic node data to the edge node w = k0 - 1 = 1 through the
  // Lagrange weights at S = u^w - 1.
  const int MP = MM;
  auto mk = [&](u64 v) {
    if (v == 0) return PadicElem::zero_at(p, MM);
    return cap_abs(PadicElem::from_integer(mpz_class(v), p, MP), MM);
  };
  const PadicElem pshift =
      PadicElem::from_rational(mpq_class(1, pow_si(p, s0)), p, MP);
  const long cert_node = MM - s0;

  PadicElem uu = one_unit_decompose(PadicElem::from_integer(b, p, MP)).second;
  PadicElem one = PadicElem::from_integer(1, p, MP);
  std::vector<PadicElem> Sw(T + 2, PadicElem::zero(p));
  for (int w = 1; w <= T + 1; ++w) Sw[w] = uu.pow(w) - one;
  // Lagrange weights to S_1 and the certified tail (the interpolated node
  // functions are bounded measures, so the dropped divided difference is
  // integral times prod (S_1 - S_w)).
  std::vector<PadicElem> lag(T + 2, PadicElem::zero(p));
  long tail_cert = 0;
  for (int w = 2; w <= T + 1; ++w) tail_cert += (Sw[1] - Sw[w]).val();
  tail_cert = std::min(tail_cert, cert_node);
  for (int w = 2; w <= T + 1; ++w) {
    PadicElem num = one, den = one;
    for (int w2 = 2; w2 <= T + 1; ++w2) {
      if (w2 == w) continue;
      num = num * (Sw[1] - Sw[w2]);
      den = den * (Sw[w] - Sw[w2]);
    }
    lag[w] = num / den;
  }

  for (int j = 0; j < 2; ++j) {
    for (long ci = 0; ci < n_cyl; ++ci) {
      std::vector<PadicElem> coef(nnus, PadicElem::zero(p));
      for (long pos = 0; pos < nnus; ++pos) {
        std::vector<PadicElem> node(T + 2, PadicElem::zero(p));
        for (int w = 2; w <= T + 1; ++w) {
          PadicElem v = mk(acc[idx_of(j, ci, pos, w - 2)]) * pshift;
          node[w] = v * PadicElem::from_rational(mpq_class(-1, w - 1), p, MP);
        }
        if (j == 0) {
          coef[pos] = cap_abs(node[2], cert_node);
        } else {
          PadicElem s = PadicElem::zero(p);
          for (int w = 2; w <= T + 1; ++w) s = s + lag[w] * node[w];
          coef[pos] = cap_abs(s, tail_cert);
        }
      }
      out.vals[j][out.units[ci]] = std::move(coef);
    }
  }
  return out;
}

RawCylinderLevel cylinder_engine(const DistContext& ctx, long n, long K_solve,
                                 int T) {
  std::vector<long> nus;
  for (long nu = 1; nu <= K_solve; ++nu) nus.push_back(nu);
  return cylinder_engine(ctx, n, nus, T);
}

// ---------------------------------------------------------------------------
// Admissible family assembly.
// ---------------------------------------------------------------------------

namespace {

std::string family_cache_key(const RunConfig& cfg, long h, long n_max,
                             long K_solve, int T) {
  std::ostringstream os;
  os << "cyl_p" << cfg.p << "_D" << cfg.D << "_C" << cfg.C << "_b" << cfg.b
     << "_xi_" << cfg.xi << "_psi_" << cfg.psi << "_h" << h << "_n" << n_max
     << "_K" << K_solve << "_T" << T << "_M" << cfg.M << "_v2";
  std::string k = os.str();
  for (char& c : k)
    if (c == ':' || c == ',' || c == '/') c = '.';
  return k;
}

json level_to_json(const RawCylinderLevel& lvl) {
  json j;
  j["n"] = lvl.n;
  j["Q"] = lvl.Q;
  j["nus"] = lvl.nus;
  j["units"] = lvl.units;
  for (int m = 0; m < 2; ++m) {
    json vm = json::object();
    for (const auto& [a, cv] : lvl.vals[m]) {
      json arr = json::array();
      for (const auto& c : cv) arr.push_back(padic_to_json(c));
      vm[std::to_string(a)] = std::move(arr);
    }
    j["vals" + std::to_string(m)] = std::move(vm);
  }
  return j;
}

RawCylinderLevel level_from_json(const json& j, long p) {
  RawCylinderLevel lvl;
  lvl.n = j.at("n").get<long>();
  lvl.Q = j.at("Q").get<long>();
  lvl.nus = j.at("nus").get<std::vector<long>>();
  lvl.units = j.at("units").get<std::vector<long>>();
  for (int m = 0; m < 2; ++m) {
    for (const auto& [ak, cv] : j.at("vals" + std::to_string(m)).items()) {
      std::vector<PadicElem> coef;
      for (const auto& e : cv) coef.push_back(padic_from_json(e, p));
      lvl.vals[m][std::stol(ak)] = std::move(coef);
    }
  }
  return lvl;
}

long demonstrated_val(const PadicElem& x) {
  if (x.is_exact_zero()) return 1 << 20;
  if (x.is_zero()) return x.abs_prec();
  return x.val();
}

}  // namespace

AdmissibleFamily build_admissible(const DistContext& ctx, long h, long n_max,
                                  long K_solve, int T) {
  const RunConfig& cfg = ctx.cfg;
  if (h != 2) throw input_error("build_admissible: h = 2 is the stored shape");
  if (n_max < 1 || n_max > 4) throw input_error("build_admissible: n_max");
  const long p2 = cfg.p * cfg.p;

  const std::string key = family_cache_key(cfg, h, n_max, K_solve, T);
  AdmissibleFamily fam;
  fam.h = 2;
  fam.n_max = n_max;
  fam.p = cfg.p;
  fam.K_solve = K_solve;
  fam.T = T;

  if (!cfg.cache_dir.empty()) {
    if (auto hit = cache_get(cfg.cache_dir, key)) {
      json j = json::parse(*hit);
      fam.cert0 = j.at("cert0").get<int>();
      fam.cert1 = j.at("cert1").get<int>();
      for (const auto& lj : j.at("levels"))
        fam.levels.push_back(level_from_json(lj, cfg.p));
      return fam;
    }
  }

  long cert0 = 1 << 20, cert1 = 1 << 20;
  for (long n = 1; n <= n_max; ++n) {
    std::set<long> nuset;
    for (long nu = 1; nu <= K_solve; ++nu) {
      nuset.insert(nu);
      if (n < n_max) nuset.insert(nu * p2);  // level-compatibility grid
    }
    std::vector<long> nus(nuset.begin(), nuset.end());
    auto raw = cylinder_engine(ctx, n, nus, T);
    for (int j = 0; j < 2; ++j)
      for (const auto& [a, coef] : raw.vals[j])
        for (const auto& c : coef)
          if (!c.is_exact_zero())
            (j == 0 ? cert0 : cert1) =
                std::min(j == 0 ? cert0 : cert1, c.abs_prec());
    fam.levels.push_back(std::move(raw));
  }
  fam.cert0 = static_cast<int>(std::min<long>(cert0, 1 << 16));
  fam.cert1 = static_cast<int>(std::min<long>(cert1, 1 << 16));

  if (!cfg.cache_dir.empty()) {
    json levels = json::array();
    for (const auto& lvl : fam.levels) levels.push_back(level_to_json(lvl));
    json payload{
        {"cert0", fam.cert0}, {"cert1", fam.cert1}, {"levels", levels}};
    cache_put(cfg.cache_dir, key, payload.dump());
  }
  return fam;
}

AdmissReport admissibility_check(const DistContext& ctx,
                                 const AdmissibleFamily& fam) {
  const long p = fam.p;
  const int M = ctx.cfg.M;
  AdmissReport rep;
  const long INF = 1 << 20;
  long bound = INF, decay = INF, dist = INF;
  std::string bound_at = "-", decay_at = "-", dist_at = "-";

  for (const auto& lvl : fam.levels) {
    // Boundedness of the zeroth moments.
    for (const auto& [a, c0] : lvl.vals[0])
      for (size_t i = 0; i < c0.size(); ++i)
        if (!c0[i].is_zero() && c0[i].val() < bound) {
          bound = c0[i].val();
          std::ostringstream os;
          os << "j=0 n=" << lvl.n << " a=" << a << " nu=" << lvl.nus[i];
          bound_at = os.str();
        }
    // Recentered first-moment decay: v(m_1(a) - a m_0(a)) >= n.
    for (const auto& [a, c1] : lvl.vals[1]) {
      const auto& c0 = lvl.vals[0].at(a);
      PadicElem av = PadicElem::from_integer(a, p, M);
      for (size_t i = 0; i < c1.size(); ++i) {
        long v = demonstrated_val(c1[i] - av * c0[i]) - lvl.n;
        if (v < decay) {
          decay = v;
          std::ostringstream os;
          os << "j=1 n=" << lvl.n << " a=" << a << " nu=" << lvl.nus[i];
          decay_at = os.str();
        }
      }
    }
  }

  // Level compatibility: summing the children of a cylinder recovers the
  // U_p^2-image of the parent moment, which on the stored grids is the
  // coefficient re-indexing nu -> p^2 nu.  Exact on the certified digits.
  for (size_t li = 0; li + 1 < fam.levels.size(); ++li) {
    const auto& par = fam.levels[li];
    const auto& chi = fam.levels[li + 1];
    std::map<long, size_t> par_pos, chi_pos;
    for (size_t i = 0; i < par.nus.size(); ++i) par_pos[par.nus[i]] = i;
    for (size_t i = 0; i < chi.nus.size(); ++i) chi_pos[chi.nus[i]] = i;
    for (int j = 0; j < 2; ++j) {
      long floor_j = (j == 0 ? fam.cert0 : fam.cert1) - 1;
      for (const auto& [a, pc] : par.vals[j]) {
        for (long nu : chi.nus) {
          auto it = par_pos.find(nu * p * p);
          if (it == par_pos.end()) continue;
          PadicElem sum = PadicElem::zero(p);
          for (const auto& [a2, fc] : chi.vals[j])
            if (a2 % par.Q == a) sum = sum + fc[chi_pos.at(nu)];
          long v = demonstrated_val(sum - pc[it->second]) - floor_j;
          if (v < dist) {
            dist = v;
            std::ostringstream os;
            os << "j=" << j << " n=" << chi.n << "->" << par.n << " a=" << a
               << " nu=" << nu;
            dist_at = os.str();
          }
        }
      }
    }
  }

  rep.bound_margin = bound == INF ? 0 : bound;
  rep.decay_margin = decay == INF ? 0 : decay;
  rep.dist_margin = dist == INF ? 0 : dist;
  rep.ok = rep.bound_margin >= 0 && rep.decay_margin >= 0 &&
           rep.dist_margin >= 0;
  long worst_m = std::min({rep.bound_margin, rep.decay_margin, rep.dist_margin});
  rep.worst = worst_m == rep.decay_margin
                  ? decay_at
                  : (worst_m == rep.dist_margin ? dist_at : bound_at);
  std::ostringstream os;
  os << "bound=" << rep.bound_margin << " (worst " << bound_at << ") decay="
     << rep.decay_margin << " (worst " << decay_at << ") compat="
     << rep.dist_margin << " (worst " << dist_at << "; certified "
     << fam.cert0 << "/" << fam.cert1 << " digits)";
  rep.summary = os.str();
  return rep;
}

// ---------------------------------------------------------------------------
// Two-variable evaluation.
// ---------------------------------------------------------------------------

namespace {

PolyQX<PadicElem> two_var_impl(const DistContext& ctx,
                               const AdmissibleFamily& fam,
                               const DirichletChar& eps, const PadicElem* s_p,
                               long s_int) {
  const long p = fam.p;
  const int M = ctx.cfg.M;
  const auto& lvl = fam.levels.back();

  typename qx_ring<PadicElem>::Desc d{p, M};
  auto h = PolyQX<PadicElem>::zero(d, fam.K_solve, 0);
  h.w2 = 4;
  h.level = ctx.w2_exact.level;

  PadicElem one = PadicElem::from_integer(1, p, M);
  PadicElem s = s_p ? *s_p : PadicElem::from_integer(s_int, p, M);
  // Locally-analytic truncation error of the h = 2 expansion:
  // |s(s-1)/2| p^{-2n} per cylinder.
  PadicElem quad = s * (s - one);
  long errcap = (1 << 20);
  if (!quad.is_zero())
    errcap = quad.val() + 2 * lvl.n;
  else if (!quad.is_exact_zero())
    errcap = quad.abs_prec() + 2 * lvl.n;

  for (long a : lvl.units) {
    CycloNum ev = eps.value(a);
    if (ev.is_zero()) continue;
    if (!ev.is_rational())
      throw input_error(
          "two_var_eval: eps must take rational values on 1-units");
    PadicElem e = PadicElem::from_rational(ev.rational(), p, M);
    PadicElem av = PadicElem::from_integer(a, p, M);  // a is a 1-unit: <a> = a
    PadicElem as;  // a^s
    if (s_p)
      as = padic_exp(*s_p * iwasawa_log(av));
    else
      as = av.pow(s_int);
    PadicElem w0 = e * as * (one - s);
    PadicElem w1 = e * as * s * av.inv();
    const auto& c0 = lvl.vals[0].at(a);
    const auto& c1 = lvl.vals[1].at(a);
    for (size_t i = 0; i < lvl.nus.size(); ++i) {
      long nu = lvl.nus[i];
      if (nu > h.K) continue;
      h.a[0][nu] = h.a[0][nu] + w0 * c0[i] + w1 * c1[i];
    }
  }
  if (errcap < (1 << 20))
    for (long nu = 0; nu <= h.K; ++nu) h.a[0][nu] = cap_abs(h.a[0][nu], errcap);
  return h;
}

}  // namespace

PolyQX<PadicElem> two_var_eval(const DistContext& ctx,
                               const AdmissibleFamily& fam,
                               const DirichletChar& eps, long s) {
  return two_var_impl(ctx, fam, eps, nullptr, s);
}

PolyQX<PadicElem> two_var_eval(const DistContext& ctx,
                               const AdmissibleFamily& fam,
                               const DirichletChar& eps, const PadicElem& s) {
  return two_var_impl(ctx, fam, eps, &s, 0);
}

}  // namespace symsq
