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

#ifndef SYMSQ_INTUTIL_HPP
#define SYMSQ_INTUTIL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace symsq {

/// Thrown when an input violates a documented precondition.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a computation cannot certify the requested precision.
class precision_error : public std::runtime_error {
 public:
  explicit precision_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// x^e mod m for e >= 0, m > 0.
mpz_class powmod(const mpz_class& x, const mpz_class& e, const mpz_class& m);

/// Inverse of x mod m; throws input_error if gcd(x, m) != 1.
mpz_class invmod(const mpz_class& x, const mpz_class& m);

/// Largest v with p^v | x (x != 0); throws on x == 0.
long valuation(const mpz_class& x, long p);

/// p^e as an mpz (e >= 0).
mpz_class pow_si(long p, long e);

/// Canonical representative of x in [0, m).
mpz_class mod_reduce(const mpz_class& x, const mpz_class& m);

/// Prime factorization by trial division (moduli in this project are small).
/// Returns (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<long, int>> factorize(long n);

/// Euler phi.
long euler_phi(long n);

/// Smallest primitive root modulo p^e (p odd prime) or modulo 2, 4.
/// Throws input_error when the group is not cyclic.
long primitive_root(long pe);

/// Multiplicative order of a modulo m (gcd(a, m) = 1).
long mult_order(long a, long m);

/// CRT: x = r1 mod m1, x = r2 mod m2 with gcd(m1, m2) = 1; result in
/// [0, m1*m2).
mpz_class crt(const mpz_class& r1, const mpz_class& m1, const mpz_class& r2,
              const mpz_class& m2);

/// gcd for longs (non-negative result).
long gcd_long(long a, long b);

/// Bernoulli numbers B_0..B_n (even-index convention B_1 = -1/2).
std::vector<mpq_class> bernoulli_numbers(int n);

/// Bernoulli polynomial B_m(x) evaluated at a rational point.
mpq_class bernoulli_poly(int m, const mpq_class& x);

/// binomial(n, k) as mpz (n >= 0).
mpz_class binomial_mpz(long n, long k);

/// Rational binomial binom(x, k) = x(x-1)...(x-k+1)/k!.
mpq_class binomial_q(const mpq_class& x, long k);

/// Decimal string -> mpz/mpq with validation.
mpz_class parse_mpz(const std::string& s);
mpq_class parse_mpq(const std::string& s);

}  // namespace symsq

#endif  // SYMSQ_INTUTIL_HPP
