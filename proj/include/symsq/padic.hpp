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

#ifndef SYMSQ_PADIC_HPP
#define SYMSQ_PADIC_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symsq/intutil.hpp"

namespace symsq {

/// Element of Q_p with capped relative precision.
///
/// A nonzero element is p^val * unit with unit a p-adic unit stored as its
/// canonical representative in [0, p^prec); the element is known modulo
/// p^(val + prec).  Exact zeros carry the flag `exact_zero`; an inexact zero
/// (all known digits cancelled) is stored with unit == 0 and records only
/// that the value is O(p^val).
class PadicElem {
 public:
  PadicElem() : p_(0), val_(0), prec_(0), unit_(0), exact_zero_(true) {}

  /// Exact zero of Q_p.
  static PadicElem zero(long p);
  /// Inexact zero O(p^abs_prec).
  static PadicElem zero_at(long p, long abs_prec);
  /// Integer n at relative precision prec.
  static PadicElem from_integer(const mpz_class& n, long p, int prec);
  /// Rational num/den at relative precision prec; p | den yields negative
  /// valuation.
  static PadicElem from_rational(const mpq_class& x, long p, int prec);
  /// p^val * unit directly (unit need not be reduced; must be prime to p
  /// unless zero).
  static PadicElem from_unit(const mpz_class& unit, long val, long p, int prec);

  long p() const { return p_; }
  long val() const;          ///< valuation; throws on exact zero
  int prec() const { return prec_; }
  long abs_prec() const;     ///< element known modulo p^abs_prec
  const mpz_class& unit() const { return unit_; }
  bool is_exact_zero() const { return exact_zero_; }
  /// True if the element is indistinguishable from 0 at its precision.
  bool is_zero() const { return exact_zero_ || unit_ == 0; }

  PadicElem operator-() const;
  PadicElem operator+(const PadicElem& o) const;
  PadicElem operator-(const PadicElem& o) const;
  PadicElem operator*(const PadicElem& o) const;
  PadicElem operator/(const PadicElem& o) const;
  PadicElem inv() const;
  PadicElem pow(long e) const;  ///< integer exponent (negative allowed)

  /// Reduce relative precision to at most prec.
  PadicElem cap_prec(int prec) const;

  /// Canonical representative modulo p^n (requires val >= 0 and
  /// abs_prec >= n).
  mpz_class lift(long n) const;

  /// True if |this - o| <= p^-n can be certified at the available precision.
  bool eq_mod(const PadicElem& o, long n) const;

  std::string to_string() const;

 private:
  long p_;
  long val_;
  int prec_;
  mpz_class unit_;
  bool exact_zero_;

  void normalize();
  friend PadicElem teichmuller(const mpz_class&, long, int);
};

/// Teichmuller representative omega(a) at precision p^prec (a prime to p).
PadicElem teichmuller(const mpz_class& a, long p, int prec);

/// Teichmuller character omega(x) of a unit x in Z_p^*.
PadicElem teichmuller(const PadicElem& x);

/// Decompose a unit z = omega(z) * <z> ; returns (omega(z), <z>).
std::pair<PadicElem, PadicElem> one_unit_decompose(const PadicElem& z);

/// Iwasawa logarithm of a one-unit z (z = 1 mod p); log(1+x) series.
PadicElem iwasawa_log(const PadicElem& z);

/// Iwasawa logarithm extended to all units via log(omega) = 0.
PadicElem iwasawa_log_unit(const PadicElem& z);

/// exp(x) for val(x) >= 1 (p odd), by the exponential series.
PadicElem padic_exp(const PadicElem& x);

/// Hensel square root in Z_p when it exists (p odd).
std::optional<PadicElem> padic_sqrt(const PadicElem& x);

// ---------------------------------------------------------------------------
// Small extensions of Q_p.
//
// ExtElem models Z_p[t]/(g(t), p^M) scaled by a power of p:
//     value = p^pshift * sum_i c_i t^i,   c_i known mod p^M.
// The modulus g is monic with exact integer coefficients (a lifted cyclotomic
// polynomial, or t^2 - a for square-root adjunctions).  When g mod p is not
// irreducible the ring is an etale algebra rather than a field; every
// identity certified here is then certified in all embeddings at once.
// ---------------------------------------------------------------------------

struct ExtRing {
  long p = 0;
  std::vector<mpz_class> modulus;  ///< monic; modulus.back() == 1
  long cyclo_order = 0;            ///< n if modulus lifts Phi_n, else 0

  long degree() const { return static_cast<long>(modulus.size()) - 1; }
  bool same(const ExtRing& o) const;
};

using ExtRingPtr = std::shared_ptr<const ExtRing>;

/// Ring Z_p[t]/(Phi_n(t)) containing a fixed root of unity zeta_n = t.
ExtRingPtr ext_ring_cyclotomic(long p, long n);
/// Ring Z_p[t]/(t^2 - a).
ExtRingPtr ext_ring_quadratic(long p, const mpz_class& a);
/// Trivial extension (degree 1): plain Z_p.
ExtRingPtr ext_ring_trivial(long p);

class ExtElem {
 public:
  ExtElem() : pshift_(0), prec_(0) {}
  ExtElem(ExtRingPtr ring, std::vector<mpz_class> coeffs, int prec,
          long pshift = 0);

  static ExtElem zero(ExtRingPtr ring, int prec);
  static ExtElem one(ExtRingPtr ring, int prec);
  static ExtElem gen(ExtRingPtr ring, int prec);  ///< the class of t
  static ExtElem from_padic(ExtRingPtr ring, const PadicElem& x);
  static ExtElem from_rational(ExtRingPtr ring, const mpq_class& x, int prec);

  const ExtRingPtr& ring() const { return ring_; }
  int prec() const { return prec_; }
  long pshift() const { return pshift_; }
  const std::vector<mpz_class>& coeffs() const { return c_; }

  bool is_zero() const;  ///< zero at the available precision

  ExtElem operator-() const;
  ExtElem operator+(const ExtElem& o) const;
  ExtElem operator-(const ExtElem& o) const;
  ExtElem operator*(const ExtElem& o) const;
  ExtElem operator/(const ExtElem& o) const;
  ExtElem inv() const;
  ExtElem pow(long e) const;

  ExtElem scale(const PadicElem& x) const;

  /// Minimal p-valuation over all coefficients (adds pshift); nullopt when
  /// zero at precision.
  std::optional<long> min_valuation() const;

  /// If the element lies in Z_p (all higher coefficients vanish at the
  /// working precision), return it as a PadicElem.
  std::optional<PadicElem> as_padic() const;

  /// True if |this - o| can be certified divisible by p^n coefficientwise.
  bool eq_mod(const ExtElem& o, long n) const;

  std::string to_string() const;

 private:
  ExtRingPtr ring_;
  long pshift_;
  int prec_;
  std::vector<mpz_class> c_;  ///< length = degree, reduced mod p^prec

  void reduce();
  static void align(ExtElem& a, ExtElem& b);
};

/// Square root of x in Z_p or in the quadratic extension Q_p(sqrt(x)).
/// Returns an ExtElem over ext_ring_trivial when the root is rational over
/// Q_p, otherwise over ext_ring_quadratic.  p odd; val(x) may be any even or
/// odd integer (odd valuations land in ramified quadratic extensions, where
/// the result is represented as sqrt(p^v u) = t with t^2 - p^v u).
ExtElem ext_sqrt(const PadicElem& x);

/// Integer cyclotomic polynomial Phi_n.
std::vector<mpz_class> cyclotomic_poly(long n);

}  // namespace symsq

#endif  // SYMSQ_PADIC_HPP
