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

#include "symsq/cyclo.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace symsq {

namespace {

// Rational polynomial helpers (dense, low degree).

void poly_trim(std::vector<mpq_class>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic integer polynomial m (as rationals).
void poly_mod_monic(std::vector<mpq_class>& a, const std::vector<mpz_class>& m) {
  long dm = static_cast<long>(m.size()) - 1;
  for (long i = static_cast<long>(a.size()) - 1; i >= dm; --i) {
    mpq_class c = a[i];
    if (c == 0) continue;
    for (long j = 0; j <= dm; ++j) a[i - dm + j] -= c * mpq_class(m[j]);
  }
  if (static_cast<long>(a.size()) > dm) a.resize(dm);
}

std::vector<mpq_class> poly_mul(const std::vector<mpq_class>& a,
                                const std::vector<mpq_class>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<mpq_class> r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// Extended Euclid over Q[x]: returns (g, u, v) with u*a + v*b = g (g monic
// nonzero when gcd is a unit times g).
struct XGcd {
  std::vector<mpq_class> g, u, v;
};

XGcd poly_xgcd(std::vector<mpq_class> a, std::vector<mpq_class> b) {
  std::vector<mpq_class> u0 = {mpq_class(1)}, v0, u1, v1 = {mpq_class(1)};
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    // Divide a by b.
    std::vector<mpq_class> q;
    std::vector<mpq_class> r = a;
    long db = static_cast<long>(b.size()) - 1;
    if (static_cast<long>(r.size()) - 1 >= db) {
      q.assign(r.size() - b.size() + 1, mpq_class(0));
      for (long i = static_cast<long>(r.size()) - 1; i >= db; --i) {
        mpq_class c = r[i] / b[db];
        if (c == 0) continue;
        q[i - db] = c;
        for (long j = 0; j <= db; ++j) r[i - db + j] -= c * b[j];
      }
    }
    poly_trim(r);
    auto qs = [&](const std::vector<mpq_class>& x,
                  const std::vector<mpq_class>& y) {
      // x - q*y
      auto qy = poly_mul(q, y);
      std::vector<mpq_class> out = x;
      if (out.size() < qy.size()) out.resize(qy.size(), mpq_class(0));
      for (size_t i = 0; i < qy.size(); ++i) out[i] -= qy[i];
      poly_trim(out);
      return out;
    };
    auto u2 = qs(u0, u1);
    auto v2 = qs(v0, v1);
    a = b;
    b = r;
    u0 = u1;
    v0 = v1;
    u1 = u2;
    v1 = v2;
  }
  return {a, u0, v0};
}

}  // namespace

void CycloNum::reduce(std::vector<mpq_class>& raw) {
  poly_mod_monic(raw, cyclotomic_poly(n_));
  raw.resize(euler_phi(n_), mpq_class(0));
}

CycloNum::CycloNum(long n, std::vector<mpq_class> coeffs) : n_(n) {
  reduce(coeffs);
  c_ = std::move(coeffs);
}

CycloNum CycloNum::zeta(long n, long k) {
  k = ((k % n) + n) % n;
  std::vector<mpq_class> c(k + 1, mpq_class(0));
  c[k] = 1;
  return CycloNum(n, std::move(c));
}

bool CycloNum::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool CycloNum::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

mpq_class CycloNum::rational() const {
  if (!is_rational()) throw input_error("CycloNum: not rational");
  return c_.empty() ? mpq_class(0) : c_[0];
}

CycloNum CycloNum::operator-() const {
  CycloNum r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycloNum CycloNum::promote(long m) const {
  if (m == n_) return *this;
  if (m % n_ != 0) throw input_error("CycloNum::promote: order must divide");
  long s = m / n_;
  std::vector<mpq_class> raw(euler_phi(n_) * s + 1, mpq_class(0));
  raw.assign((c_.size() - 1) * s + 1, mpq_class(0));
  for (size_t i = 0; i < c_.size(); ++i) raw[i * s] = c_[i];
  return CycloNum(m, std::move(raw));
}

CycloNum CycloNum::operator+(const CycloNum& o) const {
  long m = std::lcm(n_, o.n_);
  CycloNum a = promote(m), b = o.promote(m);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

CycloNum CycloNum::operator-(const CycloNum& o) const { return *this + (-o); }

CycloNum CycloNum::operator*(const CycloNum& o) const {
  long m = std::lcm(n_, o.n_);
  CycloNum a = promote(m), b = o.promote(m);
  auto raw = poly_mul(a.c_, b.c_);
  return CycloNum(m, std::move(raw));
}

CycloNum CycloNum::inv() const {
  if (is_zero()) throw input_error("CycloNum: inverse of zero");
  std::vector<mpq_class> phi;
  for (const auto& x : cyclotomic_poly(n_)) phi.emplace_back(x);
  std::vector<mpq_class> a(c_.begin(), c_.end());
  poly_trim(a);
  auto g = poly_xgcd(a, phi);
  if (g.g.size() != 1)
    throw input_error("CycloNum: zero divisor (non-invertible)");
  mpq_class lead = g.g[0];
  std::vector<mpq_class> u = g.u;
  for (auto& x : u) x /= lead;
  return CycloNum(n_, std::move(u));
}

CycloNum CycloNum::operator/(const CycloNum& o) const {
  long m = std::lcm(n_, o.n_);
  return promote(m) * o.promote(m).inv();
}

CycloNum CycloNum::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  CycloNum r(mpq_class(1));
  CycloNum b = *this;
  long k = e;
  while (k > 0) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

bool CycloNum::operator==(const CycloNum& o) const {
  long m = std::lcm(n_, o.n_);
  CycloNum a = promote(m), b = o.promote(m);
  return a.c_ == b.c_;
}

CycloNum CycloNum::scale(const mpq_class& x) const {
  CycloNum r = *this;
  for (auto& cc : r.c_) cc *= x;
  return r;
}

CycloNum CycloNum::conj(long k) const {
  k = ((k % n_) + n_) % n_;
  if (std::gcd(k, n_) != 1) throw input_error("CycloNum::conj: k not coprime");
  std::vector<mpq_class> raw(euler_phi(n_) > 0 ? (c_.size() - 1) * k + 1 : 1,
                             mpq_class(0));
  std::fill(raw.begin(), raw.end(), mpq_class(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    long e = static_cast<long>(i) * k % n_;
    if (static_cast<size_t>(e) >= raw.size()) raw.resize(e + 1, mpq_class(0));
    raw[e] += c_[i];
  }
  return CycloNum(n_, std::move(raw));
}

CycloNum CycloNum::demote() const {
  if (is_rational()) return CycloNum(rational());
  // Try proper divisor orders in increasing degree; rewrite via an exact
  // linear solve when the element lies in the subfield.
  std::vector<long> divs;
  for (long d = 1; d < n_; ++d)
    if (n_ % d == 0) divs.push_back(d);
  std::sort(divs.begin(), divs.end(),
            [](long a, long b) { return euler_phi(a) < euler_phi(b); });
  long phin = euler_phi(n_);
  for (long d : divs) {
    long phid = euler_phi(d);
    // Columns: coordinates of zeta_d^j in Q(zeta_n).
    std::vector<std::vector<mpq_class>> cols;
    for (long j = 0; j < phid; ++j) {
      CycloNum zj = CycloNum::zeta(d, j).promote(n_);
      cols.push_back(zj.coeffs());
    }
    // Solve sum_j x_j cols[j] = c_ by Gaussian elimination.
    std::vector<std::vector<mpq_class>> A(phin,
                                          std::vector<mpq_class>(phid + 1));
    for (long i = 0; i < phin; ++i) {
      for (long j = 0; j < phid; ++j) A[i][j] = cols[j][i];
      A[i][phid] = c_[i];
    }
    long row = 0;
    std::vector<long> pivcol;
    for (long col = 0; col < phid && row < phin; ++col) {
      long pr = -1;
      for (long i = row; i < phin; ++i)
        if (A[i][col] != 0) {
          pr = i;
          break;
        }
      if (pr < 0) continue;
      std::swap(A[row], A[pr]);
      mpq_class inv = 1 / A[row][col];
      for (long j = col; j <= phid; ++j) A[row][j] *= inv;
      for (long i = 0; i < phin; ++i) {
        if (i == row || A[i][col] == 0) continue;
        mpq_class f = A[i][col];
        for (long j = col; j <= phid; ++j) A[i][j] -= f * A[row][j];
      }
      pivcol.push_back(col);
      ++row;
    }
    bool consistent = true;
    for (long i = row; i < phin; ++i)
      if (A[i][phid] != 0) {
        consistent = false;
        break;
      }
    if (!consistent) continue;
    std::vector<mpq_class> x(phid, mpq_class(0));
    for (size_t k = 0; k < pivcol.size(); ++k) x[pivcol[k]] = A[k][phid];
    return CycloNum(d, std::move(x));
  }
  return *this;
}

std::string CycloNum::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ", ";
    os << c_[i];
  }
  os << ") in Q(zeta_" << n_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// p-adic embedding
// ---------------------------------------------------------------------------

ExtRingPtr embed_ring(long n, long p) {
  long np = 1;
  long nprime = n;
  while (nprime % p == 0) {
    nprime /= p;
    np *= p;
  }
  if ((p - 1) % nprime == 0) {
    if (np == 1) return ext_ring_trivial(p);
    return ext_ring_cyclotomic(p, np);
  }
  return ext_ring_cyclotomic(p, n);
}

ExtElem embed_padic(const CycloNum& x, long p, int M) {
  long n = x.order();
  long np = 1, nprime = n;
  while (nprime % p == 0) {
    nprime /= p;
    np *= p;
  }
  ExtRingPtr ring = embed_ring(n, p);
  ExtElem zn = ExtElem::zero(ring, M);
  if ((p - 1) % nprime == 0) {
    // Tame root via Teichmuller: zeta_{n'} = omega(g)^{(p-1)/n'}.
    PadicElem zt = PadicElem::from_integer(1, p, M);
    if (nprime > 1) {
      long g = primitive_root(p);
      zt = teichmuller(mpz_class(g), p, M).pow((p - 1) / nprime);
    }
    if (np == 1) {
      zn = ExtElem::from_padic(ring, zt);
    } else {
      // zeta_n = zeta_{n'}^u * zeta_{p^r}^v with u*p^r + v*n' = 1.
      long u = invmod(mpz_class(np), mpz_class(nprime)).get_si() % nprime;
      long v = invmod(mpz_class(nprime), mpz_class(np)).get_si() % np;
      if (nprime == 1) u = 0;
      ExtElem wild = ExtElem::gen(ring, M).pow(v);
      zn = wild.scale(zt.pow(u));
    }
  } else {
    zn = ExtElem::gen(ring, M);
  }
  ExtElem acc = ExtElem::zero(ring, M);
  ExtElem zpow = ExtElem::one(ring, M);
  for (size_t i = 0; i < x.coeffs().size(); ++i) {
    const mpq_class& c = x.coeffs()[i];
    if (c != 0) acc = acc + zpow.scale(PadicElem::from_rational(c, p, M));
    if (i + 1 < x.coeffs().size()) zpow = zpow * zn;
  }
  return acc;
}

ExtElem embed_padic(const CycloNum& x, long p, int M, long N) {
  if (N % x.order() != 0)
    throw input_error("embed_padic: target order not a multiple");
  return embed_padic(x.promote(N), p, M);
}

}  // namespace symsq
