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

#ifndef SYMSQ_DIRICHLET_HPP
#define SYMSQ_DIRICHLET_HPP

#include <optional>
#include <vector>

#include "symsq/cyclo.hpp"

namespace symsq {

/// Dirichlet character modulo a (small) modulus M, stored by a full value
/// table: exponents e(a) with chi(a) = zeta_R^{e(a)} for units a, where R is
/// the exact order of chi.  The moduli in this project stay modest (at most
/// a few thousand), so tables are cheap and make products, conjugates,
/// conductors and CRT decompositions straightforward.
class DirichletChar {
 public:
  /// Trivial character mod M.
  static DirichletChar trivial(long M = 1);
  /// From generator images: chars mod M are determined by exponent choices
  /// on CRT generators; this builds the table from an evaluation callback
  /// giving the exponent of zeta_R at each unit.
  static DirichletChar from_table(long M, long R, std::vector<long> exps);
  /// Quadratic character sigma_n attached to Q(sqrt(n)): the Kronecker
  /// symbol of the fundamental discriminant of the squarefree part of n.
  /// For square n (including n = 1) this is the trivial character mod 1.
  static DirichletChar kronecker(long n);
  /// The mod-p Teichmuller character omega^k as a Dirichlet character.
  static DirichletChar teichmuller_power(long p, long k);
  /// All characters modulo M (in some fixed order; the trivial one first).
  static std::vector<DirichletChar> all_mod(long M);

  long modulus() const { return M_; }
  long order() const { return R_; }
  bool is_trivial() const { return R_ == 1; }

  /// Exponent e with chi(a) = zeta_order^e, or nullopt when gcd(a, M) > 1.
  std::optional<long> exponent(long a) const;
  /// chi(a) as an exact cyclotomic number (zero for non-units).
  CycloNum value(const mpz_class& a) const;
  /// chi(a) when the character is quadratic/trivial: -1, 0, or 1.
  int value_int(const mpz_class& a) const;

  bool is_even() const;  ///< chi(-1) = 1
  bool is_odd() const { return !is_even(); }
  bool is_quadratic() const { return R_ <= 2; }

  long conductor() const;
  DirichletChar primitive() const;  ///< the primitive character inducing chi
  /// The same character viewed modulo M2 (conductor() | M2 required).
  DirichletChar extend(long M2) const;

  DirichletChar operator*(const DirichletChar& o) const;
  DirichletChar inverse() const;  ///< complex conjugate character
  DirichletChar pow(long k) const;
  bool operator==(const DirichletChar& o) const;

  /// Split off the p-part: returns (chi_prime, chi_p) with chi = product,
  /// chi_prime of modulus prime to p and chi_p of p-power modulus.
  std::pair<DirichletChar, DirichletChar> split_at(long p) const;

 private:
  long M_ = 1;
  long R_ = 1;
  std::vector<long> exp_;  ///< size M_; exponent mod R_, or -1 for non-units

  void canonicalize_order();
};

/// Gauss sum G(chi) = sum_{a mod M} chi(a) zeta_M^a, exact in
/// Q(zeta_lcm(order, M)).  Usually applied to primitive characters.
CycloNum gauss_sum(const DirichletChar& chi);

/// Generalized Bernoulli number B_{m, chi} with chi regarded modulo its
/// stored modulus M (for imprimitive chi this is the Euler-factor-stripped
/// value: B_{m, chi0} * prod_{q | M} (1 - chi0(q) q^{m-1})).
CycloNum gen_bernoulli(long m, const DirichletChar& chi);

/// L_{S}(1 - m, chi) = -B_{m, chi_S}/m where chi_S is chi viewed modulo
/// lcm(modulus, prod S): the Dirichlet L-value at a non-positive integer
/// with the Euler factors at primes of S (and of the modulus) removed.
CycloNum dirichlet_L_nonpos(long m, const DirichletChar& chi,
                            const std::vector<long>& strip = {});

/// Algebraic critical value  L_S(m, chi-bar) / Omega(m, chi)  for m >= 1
/// with m = parity(chi) mod 2, where Omega is the standard period
///   Omega(m)^{-1} = i^a pi^{1/2 - m} Gamma((m+a)/2) / Gamma((1-m+a)/2),
/// a in {0,1} the parity of chi.  All pi's and Gamma's cancel against the
/// functional equation, leaving the exact cyclotomic number
///   2^{m-1} * (-B_{m, chi})/m * (2i)^... / (f^{m-1} (m-1)! G(chi)) ...
/// computed here symbolically via  L(m, chi-bar) =
///   (2 pi)^m L(1-m, chi) / (2 i^{-m} f^{m-1} (m-1)! G(chi)).
/// S-stripping multiplies by prod_{q in S} (1 - chibar0(q) q^{-m}).
CycloNum critical_L_over_period(long m, const DirichletChar& chi,
                                const std::vector<long>& strip = {});

}  // namespace symsq

#endif  // SYMSQ_DIRICHLET_HPP
