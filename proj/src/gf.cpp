#include "mrlrc/gf.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace mrlrc {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t smallest_prime_geq(std::uint64_t n) {
  std::uint64_t q = std::max<std::uint64_t>(n, 2);
  while (!is_prime(q)) ++q;
  return q;
}

namespace {

// Dense polynomials over F_q, little-endian, used only for modulus
// certification and inversion. Not performance sensitive.
using Poly = std::vector<std::uint64_t>;

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// p mod f for monic f, in place.
void poly_reduce(Poly& p, const Poly& f, std::uint64_t q) {
  const std::size_t df = f.size() - 1;
  while (p.size() > df) {
    const std::uint64_t c = p.back();
    if (c != 0) {
      const std::size_t off = p.size() - 1 - df;
      for (std::size_t i = 0; i < df; ++i) {
        p[off + i] = (p[off + i] + (q - f[i] % q) % q * c) % q;
      }
    }
    p.pop_back();
  }
  poly_trim(p);
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t q) {
  if (a.empty() || b.empty()) return {};
  Poly res(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      res[i + j] = (res[i + j] + a[i] * b[j]) % q;
    }
  }
  poly_reduce(res, f, q);
  return res;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t q) {
  poly_reduce(base, f, q);
  Poly r{1};
  while (e != 0) {
    if (e & 1) r = poly_mulmod(r, base, f, q);
    base = poly_mulmod(base, base, f, q);
    e >>= 1;
  }
  return r;
}

std::uint64_t residue_pow(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
  a %= q;
  std::uint64_t r = 1 % q;
  while (e != 0) {
    if (e & 1) r = r * a % q;
    a = a * a % q;
    e >>= 1;
  }
  return r;
}

// General gcd; neither argument need be monic.
Poly poly_gcd(Poly a, Poly b, std::uint64_t q) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    const std::uint64_t lead_inv = residue_pow(b.back(), q - 2, q);
    Poly r = a;
    while (r.size() >= b.size()) {
      const std::uint64_t c = r.back() * lead_inv % q;
      const std::size_t off = r.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        r[off + i] = (r[off + i] + (q - c * b[i] % q)) % q;
      }
      r.pop_back();
      poly_trim(r);
      if (r.empty()) break;
    }
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool is_irreducible(const Coeffs& monic_poly, std::uint64_t q) {
  if (monic_poly.size() < 2 || monic_poly.back() != 1) {
    throw Error("is_irreducible: expected a monic polynomial of degree >= 1");
  }
  const std::uint32_t m = static_cast<std::uint32_t>(monic_poly.size() - 1);
  if (m == 1) return true;
  Poly f(monic_poly.begin(), monic_poly.end());
  // f has an irreducible factor of degree d <= m/2 iff gcd(x^(q^d) - x, f) != 1,
  // and every reducible f of degree m has such a factor.
  Poly xq{0, 1};
  for (std::uint32_t i = 1; 2 * i <= m; ++i) {
    xq = poly_powmod(std::move(xq), q, f, q);
    Poly diff = xq;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + q - 1) % q;
    poly_trim(diff);
    Poly g = poly_gcd(f, diff, q);
    if (g.size() > 1) return false;
  }
  return true;
}

Coeffs find_irreducible(std::uint64_t q, std::uint32_t m) {
  if (m == 0) throw InvalidParams("extension degree must be >= 1");
  if (m == 1) return Coeffs{0, 1};
  Coeffs f(m + 1, 0);
  f[m] = 1;
  // Odometer over (c0, ..., c_{m-1}) in lex order, c0 most significant.
  // c0 = 0 is divisible by y, so start the constant term at 1.
  f[0] = 1;
  for (;;) {
    if (is_irreducible(f, q)) return f;
    std::uint32_t pos = m;
    do {
      --pos;
      f[pos] += 1;
      if (f[pos] < q) break;
      f[pos] = 0;
    } while (pos != 0);
    if (pos == 0 && f[0] == 0) {
      throw Error("no irreducible polynomial found");  // unreachable
    }
  }
}

Field::Field(std::uint64_t q, std::uint32_t m, Coeffs modulus)
    : q_(q), m_(m), modulus_(std::move(modulus)) {}

FieldPtr Field::prime(std::uint64_t q) {
  if (!is_prime(q)) throw InvalidParams("field order must be prime, got " + std::to_string(q));
  if (q > 0xFFFFFFFFull) throw InvalidParams("prime exceeds the 32-bit arithmetic guard");
  return FieldPtr(new Field(q, 1, Coeffs{0, 1}));
}

FieldPtr Field::extension(std::uint64_t q, std::uint32_t m) {
  return extension(q, find_irreducible(q, m));
}

FieldPtr Field::extension(std::uint64_t q, Coeffs modulus) {
  if (!is_prime(q)) throw InvalidParams("field order must be prime, got " + std::to_string(q));
  if (q > 0xFFFFFFFFull) throw InvalidParams("prime exceeds the 32-bit arithmetic guard");
  if (modulus.size() < 2 || modulus.back() != 1) {
    throw InvalidParams("modulus must be monic of degree >= 1");
  }
  for (auto& c : modulus) c %= q;
  modulus.back() = 1;
  if (!is_irreducible(modulus, q)) throw InvalidParams("modulus is not irreducible");
  const auto m = static_cast<std::uint32_t>(modulus.size() - 1);
  return FieldPtr(new Field(q, m, std::move(modulus)));
}

FieldElement Field::zero() const { return FieldElement(shared_from_this(), Coeffs(m_, 0)); }

FieldElement Field::one() const { return from_base(1); }

FieldElement Field::from_base(std::uint64_t value) const {
  Coeffs c(m_, 0);
  c[0] = value % q_;
  return FieldElement(shared_from_this(), std::move(c));
}

FieldElement Field::from_coords(Coeffs coords) const {
  if (coords.size() != m_) {
    throw LengthMismatch("coordinate vector has length " + std::to_string(coords.size()) +
                         ", expected " + std::to_string(m_));
  }
  for (auto& c : coords) c %= q_;
  return FieldElement(shared_from_this(), std::move(coords));
}

bool Field::same(const Field& other) const {
  return q_ == other.q_ && modulus_ == other.modulus_;
}

void Field::add(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out) const {
  for (std::uint32_t i = 0; i < m_; ++i) out[i] = (x[i] + y[i]) % q_;
}

void Field::sub(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out) const {
  for (std::uint32_t i = 0; i < m_; ++i) out[i] = (x[i] + q_ - y[i]) % q_;
}

void Field::neg(const std::uint64_t* x, std::uint64_t* out) const {
  for (std::uint32_t i = 0; i < m_; ++i) out[i] = (q_ - x[i]) % q_;
}

namespace {
thread_local std::vector<unsigned __int128> mul_scratch;
thread_local std::vector<std::uint64_t> submul_scratch;
}  // namespace

void Field::mul(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out) const {
  if (m_ == 1) {
    out[0] = x[0] * y[0] % q_;
    return;
  }
  auto& t = mul_scratch;
  t.assign(2 * m_ - 1, 0);
  for (std::uint32_t i = 0; i < m_; ++i) {
    if (x[i] == 0) continue;
    for (std::uint32_t j = 0; j < m_; ++j) {
      t[i + j] += static_cast<unsigned __int128>(x[i]) * y[j];
    }
  }
  // Reduce degrees 2m-2 .. m by the monic modulus.
  for (std::uint32_t d = 2 * m_ - 2; d >= m_; --d) {
    const std::uint64_t c = static_cast<std::uint64_t>(t[d] % q_);
    if (c != 0) {
      const std::uint32_t off = d - m_;
      for (std::uint32_t j = 0; j < m_; ++j) {
        if (modulus_[j] != 0) {
          t[off + j] += static_cast<unsigned __int128>(c) * (q_ - modulus_[j]);
        }
      }
    }
  }
  for (std::uint32_t i = 0; i < m_; ++i) out[i] = static_cast<std::uint64_t>(t[i] % q_);
}

void Field::submul(std::uint64_t* out, const std::uint64_t* x, const std::uint64_t* y) const {
  if (m_ == 1) {
    out[0] = (out[0] + q_ - x[0] * y[0] % q_) % q_;
    return;
  }
  auto& t = submul_scratch;
  t.resize(m_);
  mul(x, y, t.data());
  sub(out, t.data(), out);
}

void Field::inv(const std::uint64_t* x, std::uint64_t* out) const {
  if (is_zero(x)) throw SingularMatrix("inverse of zero");
  if (m_ == 1) {
    out[0] = residue_pow(x[0], q_ - 2, q_);
    return;
  }
  // Extended Euclid in F_q[y] against the modulus.
  Poly r0(modulus_.begin(), modulus_.end());
  Poly r1(x, x + m_);
  poly_trim(r1);
  Poly s0{}, s1{1};
  while (!r1.empty()) {
    const std::uint64_t lead_inv = residue_pow(r1.back(), q_ - 2, q_);
    Poly quot(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, 0);
    Poly rem = r0;
    while (rem.size() >= r1.size()) {
      const std::uint64_t c = rem.back() * lead_inv % q_;
      const std::size_t off = rem.size() - r1.size();
      quot[off] = c;
      for (std::size_t i = 0; i < r1.size(); ++i) {
        rem[off + i] = (rem[off + i] + (q_ - c * r1[i] % q_)) % q_;
      }
      rem.pop_back();
      poly_trim(rem);
      if (rem.empty()) break;
    }
    // s = s0 - quot * s1
    Poly qs;
    if (!quot.empty() && !s1.empty()) {
      qs.assign(quot.size() + s1.size() - 1, 0);
      for (std::size_t i = 0; i < quot.size(); ++i) {
        if (quot[i] == 0) continue;
        for (std::size_t j = 0; j < s1.size(); ++j) {
          qs[i + j] = (qs[i + j] + quot[i] * s1[j]) % q_;
        }
      }
    }
    Poly s(std::max(s0.size(), qs.size()), 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::uint64_t a = i < s0.size() ? s0[i] : 0;
      const std::uint64_t b = i < qs.size() ? qs[i] : 0;
      s[i] = (a + q_ - b) % q_;
    }
    poly_trim(s);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant gcd; normalize.
  assert(r0.size() == 1);
  const std::uint64_t scale = residue_pow(r0[0], q_ - 2, q_);
  for (std::uint32_t i = 0; i < m_; ++i) {
    out[i] = i < s0.size() ? s0[i] * scale % q_ : 0;
  }
}

void Field::pow(const std::uint64_t* x, std::uint64_t e, std::uint64_t* out) const {
  std::vector<std::uint64_t> base(x, x + m_), acc(m_, 0), tmp(m_);
  acc[0] = 1 % q_;
  while (e != 0) {
    if (e & 1) {
      mul(acc.data(), base.data(), tmp.data());
      acc.swap(tmp);
    }
    e >>= 1;
    if (e != 0) {
      mul(base.data(), base.data(), tmp.data());
      base.swap(tmp);
    }
  }
  std::copy(acc.begin(), acc.end(), out);
}

void Field::frobenius(const std::uint64_t* x, std::uint64_t* out) const {
  pow(x, q_, out);
}

bool Field::is_zero(const std::uint64_t* x) const {
  for (std::uint32_t i = 0; i < m_; ++i) {
    if (x[i] != 0) return false;
  }
  return true;
}

void Field::set_zero(std::uint64_t* out) const {
  std::fill(out, out + m_, 0);
}

void Field::set_base(std::uint64_t* out, std::uint64_t value) const {
  set_zero(out);
  out[0] = value % q_;
}

std::uint64_t Field::base_pow(std::uint64_t a, std::uint64_t e) const {
  return residue_pow(a, e, q_);
}

std::uint64_t Field::base_inv(std::uint64_t a) const {
  a %= q_;
  if (a == 0) throw SingularMatrix("inverse of zero residue");
  return residue_pow(a, q_ - 2, q_);
}

FieldElement::FieldElement(FieldPtr field, Coeffs coords)
    : field_(std::move(field)), c_(std::move(coords)) {
  assert(field_ && c_.size() == field_->degree());
}

bool FieldElement::is_zero() const { return field_->is_zero(c_.data()); }

namespace {
const FieldPtr& check_same(const FieldElement& a, const FieldElement& b) {
  if (!a.field() || !b.field() || !a.field()->same(*b.field())) {
    throw Error("field elements belong to different fields");
  }
  return a.field();
}
}  // namespace

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
  const auto& f = check_same(*this, rhs);
  Coeffs out(c_.size());
  f->add(c_.data(), rhs.c_.data(), out.data());
  return FieldElement(f, std::move(out));
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
  const auto& f = check_same(*this, rhs);
  Coeffs out(c_.size());
  f->sub(c_.data(), rhs.c_.data(), out.data());
  return FieldElement(f, std::move(out));
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
  const auto& f = check_same(*this, rhs);
  Coeffs out(c_.size());
  f->mul(c_.data(), rhs.c_.data(), out.data());
  return FieldElement(f, std::move(out));
}

FieldElement FieldElement::operator/(const FieldElement& rhs) const {
  return *this * rhs.inverse();
}

FieldElement FieldElement::operator-() const {
  Coeffs out(c_.size());
  field_->neg(c_.data(), out.data());
  return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::inverse() const {
  Coeffs out(c_.size());
  field_->inv(c_.data(), out.data());
  return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::pow(std::uint64_t e) const {
  Coeffs out(c_.size());
  field_->pow(c_.data(), e, out.data());
  return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::frobenius(std::uint32_t times) const {
  Coeffs out = c_;
  for (std::uint32_t i = 0; i < times; ++i) {
    Coeffs next(out.size());
    field_->frobenius(out.data(), next.data());
    out = std::move(next);
  }
  return FieldElement(field_, std::move(out));
}

bool FieldElement::operator==(const FieldElement& rhs) const {
  if (!field_ || !rhs.field_) return field_ == rhs.field_;
  return field_->same(*rhs.field_) && c_ == rhs.c_;
}

FieldElement uncoords(const FieldPtr& field, const Coeffs& v) {
  return field->from_coords(v);
}

}  // namespace mrlrc
