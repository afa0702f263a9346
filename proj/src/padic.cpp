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

#include "symsq/padic.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace symsq {

// ---------------------------------------------------------------------------
// PadicElem
// ---------------------------------------------------------------------------

void PadicElem::normalize() {
  if (exact_zero_) return;
  if (prec_ <= 0) {
    // No digits known: record only the O(p^val) bound.
    prec_ = 0;
    unit_ = 0;
    return;
  }
  mpz_class pM = pow_si(p_, prec_);
  unit_ = mod_reduce(unit_, pM);
  if (unit_ == 0) {
    // All known digits cancelled: inexact zero O(p^(val+prec)).
    val_ += prec_;
    prec_ = 0;
    return;
  }
  long v = valuation(unit_, p_);
  if (v > 0) {
    mpz_class pv = pow_si(p_, v);
    unit_ /= pv;
    val_ += v;
    prec_ -= static_cast<int>(v);
  }
}

PadicElem PadicElem::zero(long p) {
  PadicElem r;
  r.p_ = p;
  r.exact_zero_ = true;
  return r;
}

PadicElem PadicElem::zero_at(long p, long abs_prec) {
  PadicElem r;
  r.p_ = p;
  r.exact_zero_ = false;
  r.val_ = abs_prec;
  r.prec_ = 0;
  r.unit_ = 0;
  return r;
}

PadicElem PadicElem::from_unit(const mpz_class& unit, long val, long p,
                               int prec) {
  if (prec < 0) throw input_error("PadicElem: negative precision");
  PadicElem r;
  r.p_ = p;
  r.exact_zero_ = false;
  r.val_ = val;
  r.prec_ = prec;
  r.unit_ = unit;
  r.normalize();
  return r;
}

PadicElem PadicElem::from_integer(const mpz_class& n, long p, int prec) {
  if (n == 0) return zero(p);
  return from_unit(n, 0, p, prec + static_cast<int>(valuation(n, p)));
}

PadicElem PadicElem::from_rational(const mpq_class& x, long p, int prec) {
  if (x == 0) return zero(p);
  mpz_class num = x.get_num(), den = x.get_den();
  long vn = valuation(num, p), vd = valuation(den, p);
  num /= pow_si(p, vn);
  den /= pow_si(p, vd);
  mpz_class pM = pow_si(p, prec);
  mpz_class u = mod_reduce(num * invmod(den, pM), pM);
  return from_unit(u, vn - vd, p, prec);
}

long PadicElem::val() const {
  if (exact_zero_) throw input_error("valuation of exact zero");
  return val_;
}

long PadicElem::abs_prec() const {
  if (exact_zero_)
    throw input_error("abs_prec of exact zero is infinite");
  return val_ + prec_;
}

PadicElem PadicElem::operator-() const {
  if (exact_zero_) return *this;
  PadicElem r = *this;
  if (r.unit_ != 0) r.unit_ = pow_si(p_, prec_) - r.unit_;
  return r;
}

PadicElem PadicElem::operator+(const PadicElem& o) const {
  if (exact_zero_) return o;
  if (o.exact_zero_) return *this;
  if (p_ != o.p_) throw input_error("PadicElem: prime mismatch");
  long N = std::min(abs_prec(), o.abs_prec());
  long v = std::min(val_, o.val_);
  if (N <= v) return zero_at(p_, N);
  mpz_class pN = pow_si(p_, N - v);
  mpz_class s = mod_reduce(unit_ * pow_si(p_, val_ - v) +
                               o.unit_ * pow_si(p_, o.val_ - v),
                           pN);
  PadicElem r;
  r.p_ = p_;
  r.exact_zero_ = false;
  r.val_ = v;
  r.unit_ = s;
  r.prec_ = static_cast<int>(N - v);
  r.normalize();
  return r;
}

PadicElem PadicElem::operator-(const PadicElem& o) const { return *this + (-o); }

PadicElem PadicElem::operator*(const PadicElem& o) const {
  if (exact_zero_ || o.exact_zero_) return zero(p_ ? p_ : o.p_);
  if (p_ != o.p_) throw input_error("PadicElem: prime mismatch");
  if (unit_ == 0 || o.unit_ == 0) {
    // O(p^a) * (p^b unit) = O(p^(a+b)); O * O likewise.
    return zero_at(p_, val_ + o.val_);
  }
  int M = std::min(prec_, o.prec_);
  mpz_class u = mod_reduce(unit_ * o.unit_, pow_si(p_, M));
  return from_unit(u, val_ + o.val_, p_, M);
}

PadicElem PadicElem::inv() const {
  if (is_zero()) throw input_error("PadicElem: inverse of zero");
  mpz_class u = invmod(unit_, pow_si(p_, prec_));
  return from_unit(u, -val_, p_, prec_);
}

PadicElem PadicElem::operator/(const PadicElem& o) const {
  return *this * o.inv();
}

PadicElem PadicElem::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  if (exact_zero_) {
    if (e == 0) throw input_error("0^0 in PadicElem::pow");
    return *this;
  }
  PadicElem r = from_integer(1, p_, prec_ > 0 ? prec_ : 1);
  PadicElem b = *this;
  long k = e;
  while (k > 0) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  if (e == 0) return from_integer(1, p_, prec_ > 0 ? prec_ : 1);
  return r;
}

PadicElem PadicElem::cap_prec(int prec) const {
  if (exact_zero_ || prec >= prec_) return *this;
  return from_unit(unit_, val_, p_, prec);
}

mpz_class PadicElem::lift(long n) const {
  if (exact_zero_) return 0;
  if (unit_ == 0) {
    if (val_ < n) throw precision_error("PadicElem::lift: insufficient precision");
    return 0;
  }
  if (val_ < 0) throw input_error("PadicElem::lift: negative valuation");
  if (abs_prec() < n) throw precision_error("PadicElem::lift: insufficient precision");
  return mod_reduce(unit_ * pow_si(p_, val_), pow_si(p_, n));
}

bool PadicElem::eq_mod(const PadicElem& o, long n) const {
  PadicElem d = *this - o;
  if (d.is_exact_zero()) return true;
  if (d.unit_ == 0) return d.val_ >= n;
  return d.val_ >= n;
}

std::string PadicElem::to_string() const {
  std::ostringstream os;
  if (exact_zero_) {
    os << "0";
  } else if (unit_ == 0) {
    os << "O(" << p_ << "^" << val_ << ")";
  } else {
    os << unit_;
    if (val_ != 0) os << "*" << p_ << "^" << val_;
    os << " + O(" << p_ << "^" << abs_prec() << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Teichmuller, logarithm, exponential, square root
// ---------------------------------------------------------------------------

PadicElem teichmuller(const mpz_class& a, long p, int prec) {
  mpz_class pM = pow_si(p, prec);
  mpz_class x = mod_reduce(a, pM);
  if (x % p == 0) throw input_error("teichmuller: argument divisible by p");
  // x -> x^p gains at least one digit of agreement per step.
  for (int i = 0; i <= prec + 1; ++i) x = powmod(x, mpz_class(p), pM);
  return PadicElem::from_unit(x, 0, p, prec);
}

PadicElem teichmuller(const PadicElem& x) {
  if (x.is_zero() || x.val() != 0)
    throw input_error("teichmuller: needs a unit");
  return teichmuller(x.unit(), x.p(), x.prec());
}

std::pair<PadicElem, PadicElem> one_unit_decompose(const PadicElem& z) {
  PadicElem w = teichmuller(z);
  return {w, z / w};
}

PadicElem iwasawa_log(const PadicElem& z) {
  long p = z.p();
  PadicElem x = z - PadicElem::from_integer(1, p, z.prec());
  if (x.is_exact_zero()) return PadicElem::zero(p);
  if (!x.is_zero() && x.val() < 1)
    throw input_error("iwasawa_log: argument is not a one-unit");
  long N = x.is_zero() ? x.abs_prec() : x.abs_prec();
  // sum (-1)^(n+1) x^n / n; each term is known mod p^N (p odd, val(x) >= 1).
  PadicElem sum = PadicElem::zero(p);
  PadicElem xn = x;
  long n = 1;
  for (;;) {
    long vxn = xn.is_zero() ? xn.abs_prec() : xn.val();
    if (vxn - (n > 1 ? valuation(mpz_class(n), p) : 0) >= N && n > 1) break;
    PadicElem term = xn / PadicElem::from_integer(n, p, static_cast<int>(N));
    if (n % 2 == 0) term = -term;
    sum = sum + term;
    ++n;
    xn = xn * x;
    if (n > 4 * N + 16) break;
  }
  return sum;
}

PadicElem iwasawa_log_unit(const PadicElem& z) {
  auto [w, one_unit] = one_unit_decompose(z);
  (void)w;
  return iwasawa_log(one_unit);
}

PadicElem padic_exp(const PadicElem& x) {
  long p = x.p();
  if (x.is_exact_zero()) return PadicElem::from_integer(1, p, 1);
  if (!x.is_zero() && (x.val() < 1 || p == 2))
    throw input_error("padic_exp: need val >= 1 and p odd");
  long N = x.abs_prec();
  PadicElem sum = PadicElem::from_integer(1, p, static_cast<int>(N));
  PadicElem term = sum;
  for (long n = 1;; ++n) {
    term = term * x / PadicElem::from_integer(n, p, static_cast<int>(N));
    if (term.is_zero() || term.val() >= N) break;
    sum = sum + term;
    if (n > 4 * N + 16) break;
  }
  return sum;
}

std::optional<PadicElem> padic_sqrt(const PadicElem& x) {
  long p = x.p();
  if (p == 2) throw input_error("padic_sqrt: p must be odd");
  if (x.is_exact_zero()) return PadicElem::zero(p);
  if (x.is_zero()) throw precision_error("padic_sqrt: inexact zero");
  if (x.val() % 2 != 0) return std::nullopt;
  mpz_class u0 = mod_reduce(x.unit(), mpz_class(p));
  // Brute-force the residue root; p is small in this project.
  mpz_class r0 = -1;
  for (long r = 1; r < p; ++r) {
    if ((r * r) % p == u0.get_si()) {
      r0 = r;
      break;
    }
  }
  if (r0 < 0) return std::nullopt;
  int M = x.prec();
  mpz_class pM = pow_si(p, M);
  mpz_class r = r0;
  mpz_class inv2 = invmod(2, pM);
  // Newton iteration r -> (r + u/r)/2, quadratic convergence, no digit loss.
  for (int i = 0; i < M + 2; ++i)
    r = mod_reduce((r + x.unit() * invmod(r, pM)) * inv2, pM);
  return PadicElem::from_unit(r, x.val() / 2, p, M);
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials
// ---------------------------------------------------------------------------

namespace {

// Exact division of integer polynomials (b monic).
std::vector<mpz_class> poly_div_exact(std::vector<mpz_class> a,
                                      const std::vector<mpz_class>& b) {
  long db = static_cast<long>(b.size()) - 1;
  long da = static_cast<long>(a.size()) - 1;
  std::vector<mpz_class> q(da - db + 1, mpz_class(0));
  for (long i = da; i >= db; --i) {
    mpz_class c = a[i];
    if (c == 0) continue;
    q[i - db] = c;
    for (long j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

}  // namespace

std::vector<mpz_class> cyclotomic_poly(long n) {
  static std::map<long, std::vector<mpz_class>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
  std::vector<mpz_class> num(n + 1, mpz_class(0));
  num[0] = -1;
  num[n] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    num = poly_div_exact(num, cyclotomic_poly(d));
  }
  cache[n] = num;
  return num;
}

// ---------------------------------------------------------------------------
// ExtRing / ExtElem
// ---------------------------------------------------------------------------

bool ExtRing::same(const ExtRing& o) const {
  return p == o.p && modulus == o.modulus;
}

ExtRingPtr ext_ring_cyclotomic(long p, long n) {
  auto r = std::make_shared<ExtRing>();
  r->p = p;
  r->modulus = cyclotomic_poly(n);
  r->cyclo_order = n;
  return r;
}

ExtRingPtr ext_ring_quadratic(long p, const mpz_class& a) {
  auto r = std::make_shared<ExtRing>();
  r->p = p;
  r->modulus = {-a, 0, 1};
  return r;
}

ExtRingPtr ext_ring_trivial(long p) {
  auto r = std::make_shared<ExtRing>();
  r->p = p;
  r->modulus = {0, 1};  // t = 0: the ring is Z_p itself
  return r;
}

ExtElem::ExtElem(ExtRingPtr ring, std::vector<mpz_class> coeffs, int prec,
                 long pshift)
    : ring_(std::move(ring)), pshift_(pshift), prec_(prec), c_(std::move(coeffs)) {
  long d = ring_->degree();
  if (static_cast<long>(c_.size()) > d) {
    // Reduce modulo the monic modulus.
    const auto& m = ring_->modulus;
    for (long i = static_cast<long>(c_.size()) - 1; i >= d; --i) {
      mpz_class coef = c_[i];
      if (coef == 0) continue;
      for (long j = 0; j <= d; ++j) c_[i - d + j] -= coef * m[j];
    }
  }
  c_.resize(d, mpz_class(0));
  reduce();
}

void ExtElem::reduce() {
  if (prec_ < 0) prec_ = 0;
  mpz_class pM = pow_si(ring_->p, prec_);
  for (auto& x : c_) x = mod_reduce(x, pM);
}

ExtElem ExtElem::zero(ExtRingPtr ring, int prec) {
  return ExtElem(ring, std::vector<mpz_class>(ring->degree(), mpz_class(0)),
                 prec);
}

ExtElem ExtElem::one(ExtRingPtr ring, int prec) {
  std::vector<mpz_class> c(ring->degree(), mpz_class(0));
  if (!c.empty()) c[0] = 1;
  return ExtElem(ring, std::move(c), prec);
}

ExtElem ExtElem::gen(ExtRingPtr ring, int prec) {
  std::vector<mpz_class> c(std::max<long>(ring->degree(), 2), mpz_class(0));
  c[1] = 1;
  return ExtElem(ring, std::move(c), prec);
}

// Relative precision used to stand in for "exact" zeros inside ExtElem;
// comfortably above every working precision used in this project.
static constexpr int kExtZeroPrec = 64;

ExtElem ExtElem::from_padic(ExtRingPtr ring, const PadicElem& x) {
  if (x.is_exact_zero()) return zero(ring, kExtZeroPrec);
  if (x.is_zero()) {
    ExtElem r = zero(ring, 0);
    r.pshift_ = x.abs_prec();
    return r;
  }
  std::vector<mpz_class> c(ring->degree(), mpz_class(0));
  c[0] = x.unit();
  return ExtElem(ring, std::move(c), x.prec(), x.val());
}

ExtElem ExtElem::from_rational(ExtRingPtr ring, const mpq_class& x, int prec) {
  return from_padic(ring, PadicElem::from_rational(x, ring->p, prec));
}

bool ExtElem::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

void ExtElem::align(ExtElem& a, ExtElem& b) {
  // Lossless: shifting into a smaller pshift raises the relative precision.
  long s = std::min(a.pshift_, b.pshift_);
  for (ExtElem* e : {&a, &b}) {
    long d = e->pshift_ - s;
    if (d > 0) {
      mpz_class f = pow_si(e->ring_->p, d);
      for (auto& x : e->c_) x *= f;
      e->prec_ += static_cast<int>(d);
      e->pshift_ = s;
    }
  }
}

ExtElem ExtElem::operator-() const {
  ExtElem r = *this;
  for (auto& x : r.c_) x = -x;
  r.reduce();
  return r;
}

ExtElem ExtElem::operator+(const ExtElem& o) const {
  if (!ring_->same(*o.ring_)) throw input_error("ExtElem: ring mismatch");
  ExtElem a = *this, b = o;
  align(a, b);
  a.prec_ = std::min(a.prec_, b.prec_);
  for (long i = 0; i < ring_->degree(); ++i) a.c_[i] += b.c_[i];
  a.reduce();
  return a;
}

ExtElem ExtElem::operator-(const ExtElem& o) const { return *this + (-o); }

ExtElem ExtElem::operator*(const ExtElem& o) const {
  if (!ring_->same(*o.ring_)) throw input_error("ExtElem: ring mismatch");
  long d = ring_->degree();
  std::vector<mpz_class> prod(2 * d - 1, mpz_class(0));
  for (long i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (long j = 0; j < d; ++j) {
      if (o.c_[j] == 0) continue;
      prod[i + j] += c_[i] * o.c_[j];
    }
  }
  return ExtElem(ring_, std::move(prod), std::min(prec_, o.prec_),
                 pshift_ + o.pshift_);
}

ExtElem ExtElem::scale(const PadicElem& x) const {
  return *this * from_padic(ring_, x);
}

std::optional<long> ExtElem::min_valuation() const {
  std::optional<long> v;
  for (const auto& x : c_) {
    if (x == 0) continue;
    long w = valuation(x, ring_->p);
    if (!v || w < *v) v = w;
  }
  if (!v) return std::nullopt;
  return *v + pshift_;
}

ExtElem ExtElem::inv() const {
  long d = ring_->degree();
  long p = ring_->p;
  // Factor out the content p-power so the polynomial part has a unit
  // coefficient.
  auto mv = min_valuation();
  if (!mv) throw input_error("ExtElem: inverse of zero");
  long w = *mv - pshift_;
  std::vector<mpz_class> cc(c_);
  if (w > 0) {
    mpz_class f = pow_si(p, w);
    for (auto& x : cc) x /= f;
  }
  int M = prec_ - static_cast<int>(w);
  if (M <= 0) throw precision_error("ExtElem::inv: no precision left");
  mpz_class pM = pow_si(p, M);
  // Multiplication-by-c matrix in the basis 1, t, ..., t^(d-1).
  std::vector<std::vector<mpz_class>> A(d, std::vector<mpz_class>(d));
  ExtElem cpoly(ring_, cc, M, 0);
  ExtElem tj = ExtElem::one(ring_, M);
  ExtElem gen1 = ExtElem::gen(ring_, M);
  for (long j = 0; j < d; ++j) {
    ExtElem col = cpoly * tj;
    for (long i = 0; i < d; ++i) A[i][j] = col.c_[i];
    tj = tj * gen1;
  }
  // Solve A x = e_0 over Z/p^M with minimal-valuation pivoting.
  std::vector<mpz_class> rhs(d, mpz_class(0));
  rhs[0] = 1;
  std::vector<long> colperm(d);
  for (long i = 0; i < d; ++i) colperm[i] = i;
  long loss = 0;
  for (long k = 0; k < d; ++k) {
    long bi = -1, bj = -1, bv = M + 1;
    for (long i = k; i < d; ++i)
      for (long j = k; j < d; ++j) {
        if (A[i][j] == 0) continue;
        long v = valuation(A[i][j], p);
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0)
      throw precision_error("ExtElem::inv: singular at working precision");
    std::swap(A[k], A[bi]);
    std::swap(rhs[k], rhs[bi]);
    if (bj != k) {
      for (long i = 0; i < d; ++i) std::swap(A[i][k], A[i][bj]);
      std::swap(colperm[k], colperm[bj]);
    }
    loss += bv;
    mpz_class piv = A[k][k] / pow_si(p, bv);
    mpz_class ipiv = invmod(piv, pM);
    for (long i = k + 1; i < d; ++i) {
      if (A[i][k] == 0) continue;
      // A[i][k] has valuation >= bv by pivot choice.
      mpz_class f = mod_reduce((A[i][k] / pow_si(p, bv)) * ipiv, pM);
      for (long j = k; j < d; ++j)
        A[i][j] = mod_reduce(A[i][j] - f * A[k][j], pM * pow_si(p, bv));
      rhs[i] = rhs[i] - f * rhs[k];
    }
  }
  // Back substitution; divisions by pivots lose their valuation.
  std::vector<mpz_class> x(d, mpz_class(0));
  for (long k = d - 1; k >= 0; --k) {
    mpz_class s = rhs[k];
    for (long j = k + 1; j < d; ++j) s -= A[k][j] * x[j];
    long pv = valuation(A[k][k], p);
    mpz_class piv = A[k][k] / pow_si(p, pv);
    if (pv > 0) {
      if (mod_reduce(s, pow_si(p, pv)) != 0)
        throw precision_error("ExtElem::inv: inconsistent division");
      s /= pow_si(p, pv);
    }
    x[k] = mod_reduce(s * invmod(piv, pM), pM);
  }
  std::vector<mpz_class> res(d, mpz_class(0));
  for (long k = 0; k < d; ++k) res[colperm[k]] = x[k];
  int Mout = M - static_cast<int>(loss);
  if (Mout <= 0) throw precision_error("ExtElem::inv: precision exhausted");
  return ExtElem(ring_, std::move(res), Mout, -pshift_ - w);
}

ExtElem ExtElem::operator/(const ExtElem& o) const { return *this * o.inv(); }

ExtElem ExtElem::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  ExtElem r = one(ring_, prec_);
  r.pshift_ = 0;
  ExtElem b = *this;
  long k = e;
  while (k > 0) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

std::optional<PadicElem> ExtElem::as_padic() const {
  for (long i = 1; i < ring_->degree(); ++i)
    if (c_[i] != 0) return std::nullopt;
  if (c_.empty() || c_[0] == 0) {
    return PadicElem::zero_at(ring_->p, pshift_ + prec_);
  }
  return PadicElem::from_unit(c_[0], pshift_, ring_->p, prec_);
}

bool ExtElem::eq_mod(const ExtElem& o, long n) const {
  ExtElem d = *this - o;
  if (d.pshift_ + d.prec_ < n)
    throw precision_error("ExtElem::eq_mod: insufficient precision");
  auto mv = d.min_valuation();
  return !mv || *mv >= n;
}

std::string ExtElem::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ", ";
    os << c_[i];
  }
  os << "]";
  if (pshift_) os << "*p^" << pshift_;
  os << " + O(p^" << pshift_ + prec_ << ")";
  return os.str();
}

ExtElem ext_sqrt(const PadicElem& x) {
  long p = x.p();
  if (p == 2) throw input_error("ext_sqrt: p must be odd");
  if (x.is_exact_zero())
    return ExtElem::zero(ext_ring_trivial(p), kExtZeroPrec);
  if (x.is_zero()) throw precision_error("ext_sqrt: inexact zero");
  auto r = padic_sqrt(x);
  if (r) return ExtElem::from_padic(ext_ring_trivial(p), *r);
  // Nonsquare: adjoin a root.  sqrt(p^v u) = p^((v - v%2)/2) * t with
  // t^2 = p^(v%2) * u.
  long v = x.val();
  long parity = ((v % 2) + 2) % 2;
  mpz_class a = x.unit() * pow_si(p, parity);
  auto ring = ext_ring_quadratic(p, a);
  ExtElem t = ExtElem::gen(ring, x.prec());
  std::vector<mpz_class> c = {0, 1};
  return ExtElem(ring, c, x.prec(), (v - parity) / 2);
}

}  // namespace symsq
