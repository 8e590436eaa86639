#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mrlrc/errors.hpp"

namespace mrlrc {

/// Polynomial coefficients over F_q, little-endian (index = degree).
using Coeffs = std::vector<std::uint64_t>;

bool is_prime(std::uint64_t n);

/// Least prime >= n. Requires n >= 2. By Bertrand's postulate the result is < 2n.
std::uint64_t smallest_prime_geq(std::uint64_t n);

/// Monic polynomial irreducibility over F_q, decided with the gcd(x^(q^i) - x, f)
/// test for i = 1..deg/2.
bool is_irreducible(const Coeffs& monic_poly, std::uint64_t q);

/// Lexicographically smallest monic irreducible of degree m over F_q, scanning
/// coefficient tuples (c0, c1, ..., c_{m-1}) with c0 most significant.
/// For m = 1 this is the polynomial y, so the extension is the base field itself.
Coeffs find_irreducible(std::uint64_t q, std::uint32_t m);

class Field;
class FieldElement;
using FieldPtr = std::shared_ptr<const Field>;

/// F_q (m = 1) or its degree-m extension F_q[y]/(modulus). Immutable after
/// construction; all operations are pure and safe to call concurrently.
///
/// Elements are coefficient vectors of length m in the polynomial basis
/// 1, y, ..., y^{m-1}, every coefficient a canonical residue in [0, q).
/// The raw span-based kernels below are the allocation-free layer the dense
/// linear algebra builds on; FieldElement wraps them for everyday use.
class Field : public std::enable_shared_from_this<Field> {
 public:
  /// The prime field F_q. Primality is certified by trial division.
  static FieldPtr prime(std::uint64_t q);

  /// F_{q^m} with the deterministic lexicographically-least modulus.
  static FieldPtr extension(std::uint64_t q, std::uint32_t m);

  /// F_{q^m} with an explicit monic modulus (m+1 coefficients); the modulus
  /// is certified irreducible.
  static FieldPtr extension(std::uint64_t q, Coeffs modulus);

  std::uint64_t q() const { return q_; }
  std::uint32_t degree() const { return m_; }
  const Coeffs& modulus() const { return modulus_; }
  bool is_prime_field() const { return m_ == 1; }

  FieldElement zero() const;
  FieldElement one() const;
  /// Embedding of a base-field residue (reduced mod q).
  FieldElement from_base(std::uint64_t value) const;
  /// Inverse of coords(): element with the given coordinate vector.
  /// Rejects vectors whose length is not m.
  FieldElement from_coords(Coeffs coords) const;

  /// Structural identity: same q and same modulus.
  bool same(const Field& other) const;

  // Kernels on raw coefficient spans of length degree(). Output may alias
  // inputs unless noted. All values must be canonical residues.
  void add(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out) const;
  void sub(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out) const;
  void neg(const std::uint64_t* x, std::uint64_t* out) const;
  void mul(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out) const;  // no aliasing
  /// out -= x*y (single fused step used by elimination loops; no aliasing).
  void submul(std::uint64_t* out, const std::uint64_t* x, const std::uint64_t* y) const;
  void inv(const std::uint64_t* x, std::uint64_t* out) const;  // throws SingularMatrix on zero
  void pow(const std::uint64_t* x, std::uint64_t e, std::uint64_t* out) const;
  /// Frobenius x -> x^q, computed by square-and-multiply.
  void frobenius(const std::uint64_t* x, std::uint64_t* out) const;
  bool is_zero(const std::uint64_t* x) const;
  void set_zero(std::uint64_t* out) const;
  void set_base(std::uint64_t* out, std::uint64_t value) const;

  // Base-field residue helpers.
  std::uint64_t base_add(std::uint64_t a, std::uint64_t b) const { return (a + b) % q_; }
  std::uint64_t base_sub(std::uint64_t a, std::uint64_t b) const { return (a + q_ - b) % q_; }
  std::uint64_t base_mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % q_; }
  std::uint64_t base_pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t base_inv(std::uint64_t a) const;

 private:
  Field(std::uint64_t q, std::uint32_t m, Coeffs modulus);

  std::uint64_t q_;
  std::uint32_t m_;
  Coeffs modulus_;  // m+1 coefficients, monic
};

/// A value of some Field; carries its field handle. Arithmetic between
/// elements of structurally different fields throws.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, Coeffs coords);

  const FieldPtr& field() const { return field_; }
  /// Coordinates over F_q in the polynomial basis (length m).
  const Coeffs& coords() const { return c_; }
  bool is_zero() const;

  FieldElement operator+(const FieldElement& rhs) const;
  FieldElement operator-(const FieldElement& rhs) const;
  FieldElement operator*(const FieldElement& rhs) const;
  FieldElement operator/(const FieldElement& rhs) const;
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;
  /// x^(q^times).
  FieldElement frobenius(std::uint32_t times = 1) const;

  bool operator==(const FieldElement& rhs) const;
  bool operator!=(const FieldElement& rhs) const { return !(*this == rhs); }

 private:
  FieldPtr field_;
  Coeffs c_;
};

/// coords / uncoords named per their role as the basis maps F_{q^m} <-> F_q^m.
inline Coeffs coords(const FieldElement& x) { return x.coords(); }
FieldElement uncoords(const FieldPtr& field, const Coeffs& v);

}  // namespace mrlrc
