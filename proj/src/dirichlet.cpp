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

#include "symsq/dirichlet.hpp"

#include <algorithm>
#include <numeric>

namespace symsq {

namespace {

// Generators of (Z/q^e)^x for a prime power component.
struct Component {
  long pe;                  // q^e
  std::vector<long> gens;   // one generator, or {-1, 5} style pair for 2^e
  std::vector<long> ords;   // orders of the generators
};

std::vector<Component> unit_group(long M) {
  std::vector<Component> comps;
  for (auto [q, e] : factorize(M)) {
    long pe = 1;
    for (int i = 0; i < e; ++i) pe *= q;
    Component c;
    c.pe = pe;
    if (q == 2) {
      if (pe == 2) {
        // trivial group
      } else if (pe == 4) {
        c.gens = {3};
        c.ords = {2};
      } else {
        c.gens = {pe - 1, 5};
        c.ords = {2, pe / 4};
      }
    } else {
      c.gens = {primitive_root(pe)};
      c.ords = {euler_phi(pe)};
    }
    comps.push_back(c);
  }
  return comps;
}

}  // namespace

void DirichletChar::canonicalize_order() {
  long g = R_;
  for (long a = 0; a < M_; ++a)
    if (exp_[a] > 0) g = std::gcd(g, exp_[a]);
  if (g > 1) {
    R_ /= g;
    for (auto& e : exp_)
      if (e > 0) e /= g;
  }
  if (R_ < 1) R_ = 1;
}

DirichletChar DirichletChar::trivial(long M) {
  DirichletChar c;
  c.M_ = M;
  c.R_ = 1;
  c.exp_.assign(M, -1);
  for (long a = 0; a < M; ++a)
    if (std::gcd(a, M) == 1) c.exp_[a] = 0;
  if (M == 1) c.exp_ = {0};
  return c;
}

DirichletChar DirichletChar::from_table(long M, long R,
                                        std::vector<long> exps) {
  DirichletChar c;
  c.M_ = M;
  c.R_ = R;
  c.exp_ = std::move(exps);
  c.canonicalize_order();
  return c;
}

std::vector<DirichletChar> DirichletChar::all_mod(long M) {
  auto comps = unit_group(M);
  // Collect (generator modulus, generator, order) triples across components.
  struct Gen {
    long pe, g, ord;
  };
  std::vector<Gen> gens;
  for (const auto& c : comps)
    for (size_t i = 0; i < c.gens.size(); ++i)
      gens.push_back({c.pe, c.gens[i], c.ords[i]});
  long R = 1;
  for (const auto& g : gens) R = std::lcm(R, g.ord);

  // Precompute the exponent vector of every unit a: within each component
  // enumerate the full group as products of generator powers (needed for the
  // two-generator 2^e components, where no single generator suffices).
  std::vector<std::vector<std::vector<long>>> comp_logs;  // [comp][res] -> exps
  {
    size_t gi = 0;
    for (const auto& c : comps) {
      std::vector<std::vector<long>> table(c.pe);
      size_t ng = c.gens.size();
      std::vector<long> tup(ng, 0);
      for (;;) {
        long r = 1;
        for (size_t i = 0; i < ng; ++i)
          for (long k = 0; k < tup[i]; ++k)
            r = static_cast<long>((static_cast<long long>(r) * c.gens[i]) %
                                  c.pe);
        table[r] = tup;
        size_t i = 0;
        for (; i < ng; ++i) {
          if (++tup[i] < c.ords[i]) break;
          tup[i] = 0;
        }
        if (i == ng || ng == 0) break;
      }
      comp_logs.push_back(std::move(table));
      gi += ng;
    }
    (void)gi;
  }
  std::vector<std::vector<long>> logs(M);
  std::vector<long> units;
  for (long a = 0; a < M; ++a) {
    if (std::gcd(a, M) != 1 && M > 1) continue;
    std::vector<long> l;
    for (size_t ci = 0; ci < comps.size(); ++ci) {
      const auto& t = comp_logs[ci][a % comps[ci].pe];
      l.insert(l.end(), t.begin(), t.end());
    }
    logs[a] = std::move(l);
    units.push_back(a);
  }

  std::vector<DirichletChar> out;
  std::vector<long> choice(gens.size(), 0);
  for (;;) {
    std::vector<long> exps(M, -1);
    for (long a : units) {
      long e = 0;
      for (size_t i = 0; i < gens.size(); ++i)
        e = (e + choice[i] * logs[a][i] % gens[i].ord * (R / gens[i].ord)) % R;
      exps[a] = e;
    }
    if (M == 1) exps = {0};
    out.push_back(from_table(M, R, std::move(exps)));
    // Next exponent tuple.
    size_t i = 0;
    for (; i < gens.size(); ++i) {
      if (++choice[i] < gens[i].ord) break;
      choice[i] = 0;
    }
    if (i == gens.size()) break;
  }
  // Put the trivial character first.
  for (size_t i = 0; i < out.size(); ++i)
    if (out[i].is_trivial()) {
      std::swap(out[0], out[i]);
      break;
    }
  return out;
}

DirichletChar DirichletChar::kronecker(long n) {
  if (n == 0) throw input_error("kronecker: n must be nonzero");
  long s = n < 0 ? -1 : 1;
  long m = std::abs(n);
  for (auto [q, e] : factorize(m)) {
    if (e % 2 == 1) s *= q;
  }
  if (s == 1) return trivial(1);
  long D0 = (((s % 4) + 4) % 4 == 1) ? s : 4 * s;
  long M = std::abs(D0);
  std::vector<long> exps(M, -1);
  mpz_class D(D0);
  for (long a = 0; a < M; ++a) {
    if (std::gcd(a, M) != 1) continue;
    int k = mpz_kronecker_ui(D.get_mpz_t(), static_cast<unsigned long>(a));
    exps[a] = (k == 1) ? 0 : 1;
  }
  return from_table(M, 2, std::move(exps));
}

DirichletChar DirichletChar::teichmuller_power(long p, long k) {
  long g = primitive_root(p);
  long R = p - 1;
  k = ((k % R) + R) % R;
  std::vector<long> exps(p, -1);
  long x = 1;
  for (long j = 0; j < R; ++j) {
    exps[x] = (k * j) % R;
    x = (x * g) % p;
  }
  return from_table(p, R, std::move(exps));
}

std::optional<long> DirichletChar::exponent(long a) const {
  a = ((a % M_) + M_) % M_;
  if (M_ == 1) return 0;
  if (exp_[a] < 0) return std::nullopt;
  return exp_[a];
}

CycloNum DirichletChar::value(const mpz_class& a) const {
  long r = mod_reduce(a, mpz_class(M_)).get_si();
  auto e = exponent(r);
  if (!e) return CycloNum(mpq_class(0));
  return CycloNum::zeta(R_, *e);
}

int DirichletChar::value_int(const mpz_class& a) const {
  if (R_ > 2) throw input_error("value_int: character order exceeds 2");
  long r = mod_reduce(a, mpz_class(M_)).get_si();
  auto e = exponent(r);
  if (!e) return 0;
  return *e == 0 ? 1 : -1;
}

bool DirichletChar::is_even() const {
  auto e = exponent(M_ - 1);  // -1 mod M
  if (M_ <= 2) return true;
  return e && (*e == 0);
}

long DirichletChar::conductor() const {
  for (long d = 1; d <= M_; ++d) {
    if (M_ % d != 0) continue;
    bool ok = true;
    for (long a = 1; a < M_ && ok; ++a) {
      if (a % d != 1 % d) continue;
      if (std::gcd(a, M_) != 1) continue;
      if (exp_[a] != 0) ok = false;
    }
    if (ok) return d;
  }
  return M_;
}

DirichletChar DirichletChar::primitive() const {
  long f = conductor();
  if (f == M_) return *this;
  std::vector<long> exps(f, -1);
  for (long a = 0; a < f; ++a) {
    if (std::gcd(a, f) != 1) continue;
    // Lift a to a unit mod M_ congruent to a mod f.
    long x = a;
    while (std::gcd(x, M_) != 1) x += f;
    exps[a] = exp_[x % M_];
  }
  if (f == 1) exps = {0};
  return from_table(f, R_, std::move(exps));
}

DirichletChar DirichletChar::extend(long M2) const {
  DirichletChar prim = primitive();
  if (M2 % prim.M_ != 0)
    throw input_error("DirichletChar::extend: conductor must divide");
  std::vector<long> exps(M2, -1);
  for (long a = 0; a < M2; ++a) {
    if (std::gcd(a, M2) != 1) continue;
    exps[a] = *prim.exponent(a % prim.M_);
  }
  if (M2 == 1) exps = {0};
  return from_table(M2, prim.R_, std::move(exps));
}

DirichletChar DirichletChar::operator*(const DirichletChar& o) const {
  long M = std::lcm(M_, o.M_);
  DirichletChar x = this->primitive().extend(M);
  DirichletChar y = o.primitive().extend(M);
  long R = std::lcm(x.R_, y.R_);
  std::vector<long> exps(x.M_, -1);
  for (long t = 0; t < x.M_; ++t) {
    if (x.exp_[t] < 0 || y.exp_[t] < 0) continue;
    exps[t] = (x.exp_[t] * (R / x.R_) + y.exp_[t] * (R / y.R_)) % R;
  }
  if (x.M_ == 1) exps = {0};
  return from_table(x.M_, R, std::move(exps));
}

DirichletChar DirichletChar::inverse() const {
  std::vector<long> exps = exp_;
  for (auto& e : exps)
    if (e > 0) e = R_ - e;
  return from_table(M_, R_, std::move(exps));
}

DirichletChar DirichletChar::pow(long k) const {
  k = ((k % R_) + R_) % R_;
  std::vector<long> exps = exp_;
  for (auto& e : exps)
    if (e >= 0) e = (e * k) % R_;
  return from_table(M_, R_, std::move(exps));
}

bool DirichletChar::operator==(const DirichletChar& o) const {
  DirichletChar a = primitive(), b = o.primitive();
  return a.M_ == b.M_ && a.R_ == b.R_ && a.exp_ == b.exp_;
}

std::pair<DirichletChar, DirichletChar> DirichletChar::split_at(long p) const {
  long pe = 1;
  long Mp = M_;
  while (Mp % p == 0) {
    Mp /= p;
    pe *= p;
  }
  // chi'(a) = chi(x), x = a mod M', x = 1 mod p^e; chi_p similarly.
  std::vector<long> eprime(Mp, -1), ep(pe, -1);
  for (long a = 0; a < Mp; ++a) {
    if (std::gcd(a, Mp) != 1) continue;
    long x = pe == 1 ? a : crt(a, Mp, 1, pe).get_si();
    eprime[a] = exp_[x % M_];
  }
  for (long a = 0; a < pe; ++a) {
    if (std::gcd(a, pe) != 1) continue;
    long x = Mp == 1 ? a : crt(1, Mp, a, pe).get_si();
    ep[a] = exp_[x % M_];
  }
  if (Mp == 1) eprime = {0};
  if (pe == 1) ep = {0};
  return {from_table(Mp, R_, std::move(eprime)),
          from_table(pe, R_, std::move(ep))};
}

// ---------------------------------------------------------------------------
// Gauss sums, generalized Bernoulli numbers, L-values
// ---------------------------------------------------------------------------

CycloNum gauss_sum(const DirichletChar& chi) {
  long M = chi.modulus();
  long R = chi.order();
  long L = std::lcm(R, M);
  std::vector<mpq_class> raw(L, mpq_class(0));
  for (long a = 0; a < M; ++a) {
    auto e = chi.exponent(a);
    if (!e) continue;
    long k = (*e * (L / R) + a * (L / M)) % L;
    raw[k] += 1;
  }
  return CycloNum(L, std::move(raw));
}

CycloNum gen_bernoulli(long m, const DirichletChar& chi) {
  long f = chi.modulus();
  long R = chi.order();
  // f^{m-1} sum_{a=1}^{f} chi(a) B_m(a/f); bucket the rational sums by
  // exponent.  Summing to a = f (not f-1) matters only for the trivial
  // character and m = 1, where it yields the standard B_{1,triv} = +1/2.
  std::vector<mpq_class> bucket(R, mpq_class(0));
  for (long a = 1; a <= f; ++a) {
    auto e = chi.exponent(a);
    if (!e) continue;
    if (a == f && f > 1) continue;  // chi(0) = 0 unless f = 1
    mpq_class x(a, f);
    x.canonicalize();
    bucket[*e] += bernoulli_poly(static_cast<int>(m), x);
  }
  mpq_class fpow = 1;
  for (long i = 0; i < m - 1; ++i) fpow *= f;
  if (m == 0) fpow = mpq_class(1, f);
  CycloNum out;
  for (long e = 0; e < R; ++e) {
    if (bucket[e] == 0) continue;
    out = out + CycloNum::zeta(R, e).scale(bucket[e] * fpow);
  }
  return out;
}

CycloNum dirichlet_L_nonpos(long m, const DirichletChar& chi,
                            const std::vector<long>& strip) {
  if (m < 1) throw input_error("dirichlet_L_nonpos: need m >= 1");
  long M = chi.conductor();
  for (long q : strip) M = std::lcm(M, q);
  DirichletChar c = chi.primitive().extend(M);
  CycloNum B = gen_bernoulli(m, c);
  return (-B).scale(mpq_class(1, m));
}

namespace {
mpz_class factorial_helper(long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
  return r;
}
}  // namespace

CycloNum critical_L_over_period(long m, const DirichletChar& chi,
                                const std::vector<long>& strip) {
  DirichletChar chi0 = chi.primitive();
  long a = chi0.is_even() ? 0 : 1;
  if (m < 1 || (m - a) % 2 != 0)
    throw input_error("critical_L_over_period: parity mismatch");
  long f = chi0.modulus();
  long t = (m - a) / 2;
  // L(m, chibar) = (2 pi)^m L(1-m, chi) / (2 i^{-m} f^{m-1} (m-1)! G(chi));
  // dividing by the period Omega(m) cancels every transcendental factor and
  // leaves the exact cyclotomic number computed below.
  CycloNum L1m = dirichlet_L_nonpos(m, chi0);
  mpq_class rat = 1;
  // 2^{m-1} (-1)^a Gamma((m+a)/2) (2t)! / ((m-1)! 4^t t!)
  for (long i = 0; i < m - 1; ++i) rat *= 2;
  if (a == 1) rat = -rat;
  mpz_class gamma_half = (a == 0) ? (t >= 1 ? factorial_helper(t - 1) : 1)
                                  : factorial_helper(t);
  rat *= mpq_class(gamma_half);
  rat *= mpq_class(factorial_helper(2 * t));
  rat /= mpq_class(factorial_helper(m - 1));
  mpq_class fourt = 1;
  for (long i = 0; i < t; ++i) fourt *= 4;
  rat /= fourt;
  rat /= mpq_class(factorial_helper(t));
  mpq_class fpow = 1;
  for (long i = 0; i < m - 1; ++i) fpow *= f;
  rat /= fpow;
  CycloNum G = gauss_sum(chi0);
  // G(chi) * bar(G(chi)) = f for primitive chi, so 1/G = bar(G)/f.
  CycloNum Ginv = G.bar().scale(mpq_class(1, f));
  CycloNum V = L1m.scale(rat) * Ginv;
  // Euler factors for the stripped primes: (1 - chibar0(q) q^{-m}).
  for (long q : strip) {
    mpq_class qm = 1;
    for (long i = 0; i < m; ++i) qm *= q;
    CycloNum factor =
        CycloNum(mpq_class(1)) -
        chi0.inverse().value(mpz_class(q)).scale(mpq_class(1) / qm);
    V = V * factor;
  }
  return V;
}

}  // namespace symsq
