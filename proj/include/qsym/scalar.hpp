#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace qsym {

/// Raised when two scalars (or a scalar and a container) come from different fields.
struct FieldMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised by constructors whose inputs violate a documented invariant.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation would exceed the configured component-size cap.
struct ResourceLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_prime(std::uint64_t n);

class Scalar;

/// The base field: Q, or F_p for a prime p.
class Field {
 public:
  static Field rationals() { return Field(0); }
  /// Throws InvalidInput unless p is prime.
  static Field prime(std::uint64_t p);

  bool is_rational() const { return p_ == 0; }
  bool is_prime_field() const { return p_ != 0; }
  std::uint64_t characteristic() const { return p_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t v) const;
  Scalar from_fraction(std::int64_t num, std::int64_t den) const;
  /// Parses "a", "-a", "a/b". Over F_p the fraction is interpreted as a * b^{-1}.
  Scalar parse(const std::string& text) const;

  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

 private:
  friend class Scalar;
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

/// Exact element of Q or F_p. All operations between scalars of different
/// fields throw FieldMismatch.
class Scalar {
 public:
  /// Rational zero. Only meant as a placeholder before assignment.
  Scalar() : value_(mpq_class(0)) {}

  const Field field() const;
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Throws std::domain_error on zero.
  Scalar inverse() const;
  /// Integer power; negative exponents invert (throws on zero base).
  Scalar pow(std::int64_t e) const;
  /// Smallest k > 0 with x^k = 1; 0 if no such k exists (x = 0, or infinite order in Q).
  std::uint64_t multiplicative_order() const;

  /// "a" or "a/b" for rationals, the canonical residue in [0, p) for F_p.
  std::string to_string() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Total order used only for deterministic output; not field-compatible.
  friend bool canonical_less(const Scalar& a, const Scalar& b);

 private:
  friend class Field;
  struct Residue {
    std::uint64_t value;
    std::uint64_t modulus;
  };
  explicit Scalar(mpq_class q) : value_(std::move(q)) {}
  explicit Scalar(Residue r) : value_(r) {}

  void require_same_field(const Scalar& o) const;

  std::variant<mpq_class, Residue> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace qsym
