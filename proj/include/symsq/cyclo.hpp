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

#ifndef SYMSQ_CYCLO_HPP
#define SYMSQ_CYCLO_HPP

#include <string>
#include <vector>

#include "symsq/padic.hpp"

namespace symsq {

/// Exact element of the cyclotomic field Q(zeta_n), stored as a rational
/// polynomial in zeta_n reduced modulo Phi_n.  Arithmetic between elements of
/// different orders promotes both to Q(zeta_lcm).
class CycloNum {
 public:
  CycloNum() : n_(1), c_(1, mpq_class(0)) {}
  explicit CycloNum(const mpq_class& x) : n_(1), c_(1, x) {}
  CycloNum(long n, std::vector<mpq_class> coeffs);

  /// zeta_n^k.
  static CycloNum zeta(long n, long k = 1);

  long order() const { return n_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Rational value (requires is_rational()).
  mpq_class rational() const;

  CycloNum operator-() const;
  CycloNum operator+(const CycloNum& o) const;
  CycloNum operator-(const CycloNum& o) const;
  CycloNum operator*(const CycloNum& o) const;
  CycloNum operator/(const CycloNum& o) const;
  CycloNum inv() const;
  CycloNum pow(long e) const;
  bool operator==(const CycloNum& o) const;

  CycloNum scale(const mpq_class& x) const;

  /// Galois action zeta_n -> zeta_n^k (gcd(k, n) = 1).
  CycloNum conj(long k) const;
  /// Complex conjugation zeta -> zeta^{-1}.
  CycloNum bar() const { return conj(-1); }

  /// Rewrite in Q(zeta_m) for n | m.
  CycloNum promote(long m) const;
  /// Canonicalize: drop to the smallest cyclotomic subfield that contains
  /// the element (only divisor orders are tried; sufficient here).
  CycloNum demote() const;

  std::string to_string() const;

 private:
  long n_;
  std::vector<mpq_class> c_;  ///< length phi(n)

  void reduce(std::vector<mpq_class>& raw);  ///< mod Phi_n
};

/// Canonical embedding of Q(zeta_n) into the p-adic world at precision p^M.
///
/// Writes n = n' * p^r with p coprime to n'.  The tame part:
///   - if n' | p-1, zeta_{n'} is sent to the Teichmuller root
///     omega(g)^{(p-1)/n'} for g the least primitive root mod p (a genuine
///     canonical embedding into Z_p);
///   - otherwise the target contains Z_p[t]/Phi_{n'}(t) with zeta_{n'} = t
///     (etale algebra: all embeddings at once).
/// The wild part zeta_{p^r} maps to the generator of Z_p[t]/Phi_{p^r}(t).
ExtElem embed_padic(const CycloNum& x, long p, int M);

/// The ExtRing that embed_padic targets for elements of Q(zeta_n).
ExtRingPtr embed_ring(long n, long p);

/// Embed after first promoting x to Q(zeta_N) (order | N required), so that
/// values of different orders can be combined inside embed_ring(N, p).
ExtElem embed_padic(const CycloNum& x, long p, int M, long N);

}  // namespace symsq

#endif  // SYMSQ_CYCLO_HPP
