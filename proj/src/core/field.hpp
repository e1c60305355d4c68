#ifndef JOINTKIT_FIELD_HPP
#define JOINTKIT_FIELD_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace jointkit {

class Value;

// Field descriptor: the rationals, or a prime field F_p. Primality is checked
// at construction; moduli are capped below 2^31 so residue products fit in
// 64 bits.
class Field {
 public:
  static Field rationals();
  static Field prime(std::uint64_t p);
  static Field parse(const std::string& name);  // "Q" or "F_p"

  bool is_rational() const { return p_ == 0; }
  bool is_prime_field() const { return p_ != 0; }
  std::uint64_t modulus() const { return p_; }  // 0 for the rationals

  bool operator==(const Field& o) const { return p_ == o.p_; }
  bool operator!=(const Field& o) const { return p_ != o.p_; }

  std::string name() const;

  Value zero() const;
  Value one() const;
  Value from_int(long long v) const;
  Value from_mpz(const mpz_class& z) const;
  Value from_mpq(const mpq_class& q) const;  // error if denominator not invertible
  // Accepts "-12" and "num/den" forms.
  Value from_string(const std::string& s) const;

  // All p elements 0..p-1, in order. Errors for the rationals and when p
  // exceeds the enumeration cap.
  std::vector<Value> enumerate() const;
  // First `count` distinct elements (0,1,2,...); for grids. Errors when the
  // field has fewer than `count` elements.
  std::vector<Value> first_elements(std::size_t count) const;

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

// Immutable exact scalar tagged with its field. All operations are pure;
// mixing operands from different fields is an error.
class Value {
 public:
  Value() : rep_(mpq_class(0)) {}  // rational zero

  Field field() const;
  bool is_rational() const { return std::holds_alternative<mpq_class>(rep_); }
  bool is_zero() const;
  bool is_one() const;

  const mpq_class& rational() const { return std::get<mpq_class>(rep_); }
  std::uint64_t residue() const { return std::get<Residue>(rep_).v; }

  Value operator-() const;
  Value inv() const;  // error on zero
  Value pow(unsigned long e) const;

  friend Value operator+(const Value& a, const Value& b);
  friend Value operator-(const Value& a, const Value& b);
  friend Value operator*(const Value& a, const Value& b);
  friend Value operator/(const Value& a, const Value& b);
  Value& operator+=(const Value& o) { return *this = *this + o; }
  Value& operator-=(const Value& o) { return *this = *this - o; }
  Value& operator*=(const Value& o) { return *this = *this * o; }

  bool operator==(const Value& o) const;
  bool operator!=(const Value& o) const { return !(*this == o); }
  // Total order within one field (residues by representative, rationals
  // exactly); used for deterministic containers, errors across fields.
  bool operator<(const Value& o) const;

  std::string str() const;  // decimal, rationals as "num/den" when den != 1

 private:
  friend class Field;
  struct Residue {
    std::uint64_t v;
    std::uint64_t p;
  };
  explicit Value(mpq_class q) : rep_(std::move(q)) {}
  Value(std::uint64_t v, std::uint64_t p) : rep_(Residue{v, p}) {}

  std::variant<mpq_class, Residue> rep_;
};

using Vec = std::vector<Value>;

bool is_prime_u64(std::uint64_t n);

// Check that every entry belongs to `f`; errors otherwise.
void require_field(const Field& f, const Vec& v, const char* what);

}  // namespace jointkit

#endif
