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

#include "symsq/intutil.hpp"

#include <numeric>

namespace symsq {

mpz_class powmod(const mpz_class& x, const mpz_class& e, const mpz_class& m) {
  if (e < 0) throw input_error("powmod: negative exponent");
  mpz_class r;
  mpz_powm(r.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class invmod(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  if (!mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()))
    throw input_error("invmod: element not invertible");
  return r;
}

long valuation(const mpz_class& x, long p) {
  if (x == 0) throw input_error("valuation of zero");
  mpz_class t = x < 0 ? mpz_class(-x) : x;
  long v = 0;
  mpz_class q, r;
  mpz_class P(p);
  for (;;) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), P.get_mpz_t());
    if (r != 0) break;
    t = q;
    ++v;
  }
  return v;
}

mpz_class pow_si(long p, long e) {
  if (e < 0) throw input_error("pow_si: negative exponent");
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(e));
  return r;
}

mpz_class mod_reduce(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::vector<std::pair<long, int>> factorize(long n) {
  if (n <= 0) throw input_error("factorize: need positive argument");
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

long euler_phi(long n) {
  long r = 1;
  for (auto [p, e] : factorize(n)) {
    long pe = 1;
    for (int i = 0; i < e - 1; ++i) pe *= p;
    r *= pe * (p - 1);
  }
  return r;
}

long gcd_long(long a, long b) { return std::gcd(a, b); }

long mult_order(long a, long m) {
  if (m <= 1) return 1;
  a = ((a % m) + m) % m;
  if (std::gcd(a, m) != 1) throw input_error("mult_order: not a unit");
  long phi = euler_phi(m);
  long ord = phi;
  // Reduce phi by removing prime factors while the power stays 1.
  for (auto [p, e] : factorize(phi)) {
    (void)e;
    while (ord % p == 0 &&
           powmod(mpz_class(a), mpz_class(ord / p), mpz_class(m)) == 1)
      ord /= p;
  }
  return ord;
}

long primitive_root(long pe) {
  if (pe == 1) return 1;
  if (pe == 2) return 1;
  if (pe == 4) return 3;
  auto f = factorize(pe);
  if (f.size() != 1 || f[0].first == 2)
    throw input_error("primitive_root: group is not cyclic");
  long phi = euler_phi(pe);
  for (long g = 2; g < pe; ++g) {
    if (std::gcd(g, pe) != 1) continue;
    if (mult_order(g, pe) == phi) return g;
  }
  throw input_error("primitive_root: none found");
}

mpz_class crt(const mpz_class& r1, const mpz_class& m1, const mpz_class& r2,
              const mpz_class& m2) {
  // x = r1 + m1 * t, with t = (r2 - r1)/m1 mod m2.
  mpz_class t = mod_reduce((r2 - r1) * invmod(m1, m2), m2);
  return r1 + m1 * t;
}

std::vector<mpq_class> bernoulli_numbers(int n) {
  // Standard recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
  std::vector<mpq_class> B(n + 1);
  B[0] = 1;
  for (int m = 1; m <= n; ++m) {
    mpq_class s = 0;
    for (int j = 0; j < m; ++j)
      s += mpq_class(binomial_mpz(m + 1, j)) * B[j];
    B[m] = -s / mpq_class(binomial_mpz(m + 1, m));
  }
  return B;
}

mpq_class bernoulli_poly(int m, const mpq_class& x) {
  auto B = bernoulli_numbers(m);
  mpq_class r = 0;
  mpq_class xp = 1;  // x^(m-j) built from the top down
  // B_m(x) = sum_j C(m, j) B_j x^(m-j); evaluate with Horner in x.
  for (int j = 0; j <= m; ++j) {
    r = r * x + mpq_class(binomial_mpz(m, j)) * B[j];
  }
  (void)xp;
  return r;
}

mpz_class binomial_mpz(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

mpq_class binomial_q(const mpq_class& x, long k) {
  if (k < 0) return 0;
  mpq_class num = 1;
  for (long j = 0; j < k; ++j) num *= (x - j);
  mpq_class den = 1;
  for (long j = 2; j <= k; ++j) den *= j;
  return num / den;
}

mpz_class parse_mpz(const std::string& s) {
  mpz_class r;
  if (mpz_set_str(r.get_mpz_t(), s.c_str(), 10) != 0)
    throw input_error("invalid integer literal: " + s);
  return r;
}

mpq_class parse_mpq(const std::string& s) {
  mpq_class r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw input_error("invalid rational literal: " + s);
  mpq_canonicalize(r.get_mpq_t());
  if (r.get_den() == 0) throw input_error("zero denominator: " + s);
  return r;
}

}  // namespace symsq
