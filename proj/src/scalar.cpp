#include "qsym/scalar.hpp"

#include <cctype>
#include <ostream>
#include <vector>

namespace qsym {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(r);
}

std::uint64_t reduce_mpz(const mpz_class& z, std::uint64_t p) {
  mpz_class r = z % mpz_class(std::to_string(p));
  if (r < 0) r += mpz_class(std::to_string(p));
  return std::stoull(r.get_str());
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit integers.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidInput("field modulus " + std::to_string(p) + " is not prime");
  return Field(p);
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(std::int64_t v) const {
  if (is_rational()) return Scalar(mpq_class(static_cast<long>(v)));
  return Scalar(Scalar::Residue{reduce_signed(v, p_), p_});
}

Scalar Field::from_fraction(std::int64_t num, std::int64_t den) const {
  if (den == 0) throw std::domain_error("zero denominator");
  return from_int(num) / from_int(den);
}

Scalar Field::parse(const std::string& text) const {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw InvalidInput("empty scalar literal");
  auto slash = t.find('/');
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  auto valid_int = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  if (!valid_int(num, true) || !valid_int(den, false)) throw InvalidInput("malformed scalar literal '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw InvalidInput("zero denominator in '" + text + "'");
  if (is_rational()) {
    mpq_class q(n, d);
    q.canonicalize();
    return Scalar(q);
  }
  std::uint64_t dn = reduce_mpz(d, p_);
  if (dn == 0) throw InvalidInput("denominator of '" + text + "' vanishes mod " + std::to_string(p_));
  return Scalar(Scalar::Residue{reduce_mpz(n, p_), p_}) / Scalar(Scalar::Residue{dn, p_});
}

std::string Field::name() const { return is_rational() ? "Q" : "F_" + std::to_string(p_); }

const Field Scalar::field() const {
  if (auto r = std::get_if<Residue>(&value_)) return Field(r->modulus);
  return Field::rationals();
}

bool Scalar::is_zero() const {
  if (auto r = std::get_if<Residue>(&value_)) return r->value == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const {
  if (auto r = std::get_if<Residue>(&value_)) return r->value == 1 % r->modulus;
  return std::get<mpq_class>(value_) == 1;
}

void Scalar::require_same_field(const Scalar& o) const {
  const auto* a = std::get_if<Residue>(&value_);
  const auto* b = std::get_if<Residue>(&o.value_);
  if ((a == nullptr) != (b == nullptr) || (a && a->modulus != b->modulus)) {
    throw FieldMismatch("scalars from different fields: " + to_string() + " and " + o.to_string());
  }
}

Scalar Scalar::operator-() const {
  if (auto r = std::get_if<Residue>(&value_)) return Scalar(Residue{r->value == 0 ? 0 : r->modulus - r->value, r->modulus});
  return Scalar(mpq_class(-std::get<mpq_class>(value_)));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_same_field(o);
  if (auto r = std::get_if<Residue>(&value_)) {
    const auto& s = std::get<Residue>(o.value_);
    std::uint64_t v = r->value + s.value;
    if (v >= r->modulus || v < r->value) v -= r->modulus;
    r->value = v;
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  require_same_field(o);
  if (auto r = std::get_if<Residue>(&value_)) {
    r->value = mulmod(r->value, std::get<Residue>(o.value_).value, r->modulus);
  } else {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  require_same_field(o);
  return *this *= o.inverse();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (auto r = std::get_if<Residue>(&value_)) return Scalar(Residue{powmod(r->value, r->modulus - 2, r->modulus), r->modulus});
  mpq_class inv = 1 / std::get<mpq_class>(value_);
  return Scalar(inv);
}

Scalar Scalar::pow(std::int64_t e) const {
  Scalar base = e < 0 ? inverse() : *this;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  if (auto r = std::get_if<Residue>(&base.value_)) return Scalar(Residue{powmod(r->value, k, r->modulus), r->modulus});
  mpz_class num, den;
  const auto& q = std::get<mpq_class>(base.value_);
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), k);
  mpq_class out(num, den);
  out.canonicalize();
  return Scalar(out);
}

std::uint64_t Scalar::multiplicative_order() const {
  if (is_zero()) return 0;
  if (auto r = std::get_if<Residue>(&value_)) {
    std::uint64_t order = r->modulus - 1;
    for (std::uint64_t f : prime_factors(order)) {
      while (order % f == 0 && powmod(r->value, order / f, r->modulus) == 1) order /= f;
    }
    return order;
  }
  const auto& q = std::get<mpq_class>(value_);
  if (q == 1) return 1;
  if (q == -1) return 2;
  return 0;
}

std::string Scalar::to_string() const {
  if (auto r = std::get_if<Residue>(&value_)) return std::to_string(r->value);
  return std::get<mpq_class>(value_).get_str();
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.require_same_field(b);
  if (auto r = std::get_if<Scalar::Residue>(&a.value_)) return r->value == std::get<Scalar::Residue>(b.value_).value;
  return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
}

bool canonical_less(const Scalar& a, const Scalar& b) {
  const auto* ra = std::get_if<Scalar::Residue>(&a.value_);
  const auto* rb = std::get_if<Scalar::Residue>(&b.value_);
  if (ra && rb) return ra->value < rb->value;
  if (!ra && !rb) return std::get<mpq_class>(a.value_) < std::get<mpq_class>(b.value_);
  return rb != nullptr;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace qsym
