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

#include "symsq/iwasawa.hpp"

namespace symsq {

IwasawaSeries IwasawaSeries::zero(long p, int len) {
  return IwasawaSeries(p, std::vector<PadicElem>(len, PadicElem::zero(p)));
}

IwasawaSeries IwasawaSeries::constant(const PadicElem& a, int len) {
  auto s = zero(a.p(), len);
  s.c_[0] = a;
  return s;
}

IwasawaSeries IwasawaSeries::operator+(const IwasawaSeries& o) const {
  int len = std::min(length(), o.length());
  std::vector<PadicElem> r(len);
  for (int j = 0; j < len; ++j) r[j] = c_[j] + o.c_[j];
  return IwasawaSeries(p_, std::move(r));
}

IwasawaSeries IwasawaSeries::operator-(const IwasawaSeries& o) const {
  int len = std::min(length(), o.length());
  std::vector<PadicElem> r(len);
  for (int j = 0; j < len; ++j) r[j] = c_[j] - o.c_[j];
  return IwasawaSeries(p_, std::move(r));
}

IwasawaSeries IwasawaSeries::operator*(const IwasawaSeries& o) const {
  int len = std::min(length(), o.length());
  auto r = zero(p_, len);
  for (int i = 0; i < len; ++i) {
    if (c_[i].is_exact_zero()) continue;
    for (int j = 0; i + j < len; ++j)
      r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
  }
  return r;
}

IwasawaSeries IwasawaSeries::operator-() const {
  std::vector<PadicElem> r(c_.size());
  for (size_t j = 0; j < c_.size(); ++j) r[j] = -c_[j];
  return IwasawaSeries(p_, std::move(r));
}

IwasawaSeries IwasawaSeries::inv() const {
  if (c_.empty() || c_[0].is_zero())
    throw precision_error("IwasawaSeries::inv: constant term is zero");
  int len = length();
  std::vector<PadicElem> r(len, PadicElem::zero(p_));
  r[0] = c_[0].inv();
  for (int j = 1; j < len; ++j) {
    PadicElem s = PadicElem::zero(p_);
    for (int i = 1; i <= j; ++i) s = s + c_[i] * r[j - i];
    r[j] = -(s * r[0]);
  }
  return IwasawaSeries(p_, std::move(r));
}

IwasawaSeries IwasawaSeries::scale(const PadicElem& a) const {
  std::vector<PadicElem> r(c_.size());
  for (size_t j = 0; j < c_.size(); ++j) r[j] = c_[j] * a;
  return IwasawaSeries(p_, std::move(r));
}

IwasawaSeries IwasawaSeries::truncate(int len) const {
  std::vector<PadicElem> r(c_.begin(),
                           c_.begin() + std::min<size_t>(len, c_.size()));
  return IwasawaSeries(p_, std::move(r));
}

PadicElem IwasawaSeries::eval(const PadicElem& s0) const {
  if (!s0.is_zero() && s0.val() < 1)
    throw input_error("IwasawaSeries::eval: need val(S) >= 1");
  // Horner; then account for the unknown tail: coefficients are bounded by
  // the largest p-power seen (integrality is not assumed), so the tail
  // starting at S^length is O(p^{length * val(S0) - max_shift}).
  PadicElem acc = PadicElem::zero(p_);
  for (int j = length() - 1; j >= 0; --j) acc = acc * s0 + c_[j];
  if (s0.is_exact_zero()) return acc;  // tail vanishes
  long shift = 0;
  for (const auto& cj : c_)
    if (!cj.is_zero() && cj.val() < shift) shift = cj.val();
  long sval = s0.val();
  long tail = length() * sval + shift;
  if (acc.is_exact_zero()) return PadicElem::zero_at(p_, tail);
  long abs = std::min(acc.abs_prec(), tail);
  if (acc.is_zero()) return PadicElem::zero_at(p_, abs);
  if (abs <= acc.val()) return PadicElem::zero_at(p_, abs);
  return acc.cap_prec(static_cast<int>(abs - acc.val()));
}

PadicElem IwasawaSeries::eval_poly(const PadicElem& s0) const {
  if (!s0.is_zero() && s0.val() < 1)
    throw input_error("IwasawaSeries::eval_poly: need val(S) >= 1");
  PadicElem acc = PadicElem::zero(p_);
  for (int j = length() - 1; j >= 0; --j) acc = acc * s0 + c_[j];
  return acc;
}

IwasawaSeries IwasawaSeries::recenter(long t, const PadicElem& u) const {
  // S |-> a + b S with a = u^t - 1, b = u^t; expand by Horner on polynomials.
  PadicElem ut = u.pow(t);
  PadicElem a = ut - PadicElem::from_integer(1, p_, u.prec());
  int len = length();
  auto acc = zero(p_, len);
  for (int j = len - 1; j >= 0; --j) {
    // acc <- acc * (a + b S) + c_j
    auto next = zero(p_, len);
    for (int i = 0; i < len; ++i) {
      if (acc.c_[i].is_exact_zero()) continue;
      next.c_[i] = next.c_[i] + acc.c_[i] * a;
      if (i + 1 < len) next.c_[i + 1] = next.c_[i + 1] + acc.c_[i] * ut;
    }
    next.c_[0] = next.c_[0] + c_[j];
    acc = std::move(next);
  }
  return acc;
}

IwasawaSeries one_unit_power_series(const PadicElem& ell, int len) {
  long p = ell.p();
  int pr = std::max(ell.prec(), 32);  // exact/low-precision ell still works
  auto s = IwasawaSeries::zero(p, len);
  PadicElem term = PadicElem::from_integer(1, p, pr);
  s.coeffs()[0] = term;
  for (int j = 1; j < len; ++j) {
    // binom(ell, j) = binom(ell, j-1) * (ell - j + 1)/j.
    term = term * (ell - PadicElem::from_integer(j - 1, p, pr)) /
           PadicElem::from_integer(j, p, pr);
    s.coeffs()[j] = term;
  }
  return s;
}

IwasawaSeries log_kappa_series(const PadicElem& u, int M, int len) {
  long p = u.p();
  PadicElem logu = iwasawa_log(u);
  auto s = IwasawaSeries::zero(p, len);
  for (int j = 1; j < len; ++j) {
    mpq_class c(((j % 2) ? 1 : -1), j);
    s.coeffs()[j] = PadicElem::from_rational(c, p, M) / logu;
  }
  return s;
}

IwasawaSeries iwasawa_from_node_values(const std::vector<PadicElem>& values,
                                       long m0, const PadicElem& u, int len) {
  long p = u.p();
  int T = static_cast<int>(values.size());
  if (T < len) throw input_error("iwasawa_from_node_values: too few nodes");
  // Nodes S_i = u^{m0+i} - 1.
  PadicElem one = PadicElem::from_integer(1, p, u.prec());
  std::vector<PadicElem> S(T);
  for (int i = 0; i < T; ++i) S[i] = u.pow(m0 + i) - one;
  // Divided differences d[i] of order i.
  std::vector<PadicElem> d = values;
  for (int k = 1; k < T; ++k)
    for (int i = T - 1; i >= k; --i)
      d[i] = (d[i] - d[i - 1]) / (S[i] - S[i - k]);
  // Expand Newton form sum_k d[k] prod_{j<k} (S - S_j) into monomials.
  auto out = IwasawaSeries::zero(p, len);
  std::vector<PadicElem> basis(1, one);  // coefficients of prod_{j<k}(S - S_j)
  for (int k = 0; k < T; ++k) {
    for (size_t j = 0; j < basis.size() && j < static_cast<size_t>(len); ++j)
      out.coeffs()[j] = out.coeffs()[j] + d[k] * basis[j];
    if (k + 1 < T) {
      // basis <- basis * (S - S_k)
      std::vector<PadicElem> nb(basis.size() + 1, PadicElem::zero(p));
      for (size_t j = 0; j < basis.size(); ++j) {
        nb[j + 1] = nb[j + 1] + basis[j];
        nb[j] = nb[j] - basis[j] * S[k];
      }
      basis = std::move(nb);
    }
  }
  return out;
}

}  // namespace symsq
