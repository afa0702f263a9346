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

#ifndef SYMSQ_IWASAWA_HPP
#define SYMSQ_IWASAWA_HPP

#include <functional>
#include <vector>

#include "symsq/padic.hpp"

namespace symsq {

/// Truncated power series in the weight-space coordinate S with p-adic
/// coefficients.  Specializing a family at an integer weight k means
/// evaluating at S = u^k - 1, where u = b * omega(b)^{-1} is the fixed
/// topological generator of 1 + pZ_p.
class IwasawaSeries {
 public:
  IwasawaSeries() : p_(0) {}
  IwasawaSeries(long p, std::vector<PadicElem> coeffs)
      : p_(p), c_(std::move(coeffs)) {}

  static IwasawaSeries zero(long p, int len);
  static IwasawaSeries constant(const PadicElem& a, int len);

  long p() const { return p_; }
  int length() const { return static_cast<int>(c_.size()); }
  const PadicElem& coeff(int j) const { return c_.at(j); }
  std::vector<PadicElem>& coeffs() { return c_; }
  const std::vector<PadicElem>& coeffs() const { return c_; }

  IwasawaSeries operator+(const IwasawaSeries& o) const;
  IwasawaSeries operator-(const IwasawaSeries& o) const;
  IwasawaSeries operator*(const IwasawaSeries& o) const;
  IwasawaSeries operator-() const;
  /// Multiplicative inverse; requires an invertible constant term (otherwise
  /// the quotient leaves the Iwasawa algebra and precision_error is thrown).
  IwasawaSeries inv() const;
  IwasawaSeries operator/(const IwasawaSeries& o) const { return *this * o.inv(); }
  IwasawaSeries scale(const PadicElem& a) const;
  IwasawaSeries truncate(int len) const;

  /// Evaluate at S = s0 with val(s0) >= 1.  The truncation tail contributes
  /// O(p^length), which is folded into the reported precision.
  PadicElem eval(const PadicElem& s0) const;

  /// Evaluate treating the stored coefficients as a complete polynomial:
  /// no truncation-tail allowance is subtracted from the precision.  Use
  /// for full Newton interpolations of finite node data, where the stored
  /// polynomial reproduces the nodes exactly (notably series of unbounded
  /// growth, whose Iwasawa truncation error is not o(1)).
  PadicElem eval_poly(const PadicElem& s0) const;

  /// Recenter kappa -> kappa[t]: S |-> u^t (1 + S) - 1.
  IwasawaSeries recenter(long t, const PadicElem& u) const;

 private:
  long p_;
  std::vector<PadicElem> c_;
};

/// (1+S)^ell = sum_j binom(ell, j) S^j truncated to len coefficients; this
/// is the S-expansion of kappa |-> kappa(z) for a one-unit z with
/// ell = log z / log u.
IwasawaSeries one_unit_power_series(const PadicElem& ell, int len);

/// log_u(1+S) = log(1+S)/log(u) as a truncated series: the family symbol
/// "log kappa" (equal to k after specializing at S = u^k - 1).
IwasawaSeries log_kappa_series(const PadicElem& u, int M, int len);

/// Recover the S-expansion of an Iwasawa function from its values at the
/// nodes S = u^{m0 + i} - 1, i = 0..T-1 (T = values.size()), by Newton
/// divided differences.  The first `len` coefficients are returned; the
/// caller should supply T comfortably larger than len, since the truncation
/// tail of the interpolation contributes O(p^{T - j - j/(p-1)}) to
/// coefficient j (on top of the precision the PadicElem arithmetic already
/// tracks).
IwasawaSeries iwasawa_from_node_values(const std::vector<PadicElem>& values,
                                       long m0, const PadicElem& u, int len);

}  // namespace symsq

#endif  // SYMSQ_IWASAWA_HPP
