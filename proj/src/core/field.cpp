#include "field.hpp"

#include "caps.hpp"
#include "error.hpp"

namespace jointkit {

namespace {

constexpr std::uint64_t kMaxModulus = (1ull << 31) - 1;

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (a * b) % p;  // a, b < 2^31
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) r = mod_mul(r, base, p);
    base = mod_mul(base, base, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
  if (a == 0) fail(errc::division_by_zero, "division by zero in F_" + std::to_string(p));
  // extended Euclid
  long long t = 0, new_t = 1;
  long long r = static_cast<long long>(p), new_r = static_cast<long long>(a);
  while (new_r != 0) {
    long long q = r / new_r;
    long long tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<long long>(p);
  return static_cast<std::uint64_t>(t);
}

std::uint64_t same_modulus(const Value& a, const Value& b);

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

Field Field::rationals() { return Field(0); }

Field Field::prime(std::uint64_t p) {
  if (p > kMaxModulus)
    fail(errc::invalid_argument, "modulus " + std::to_string(p) + " exceeds 2^31-1");
  if (!is_prime_u64(p)) fail(errc::not_prime, std::to_string(p) + " is not prime");
  return Field(p);
}

Field Field::parse(const std::string& name) {
  if (name == "Q" || name == "rational" || name == "rationals") return rationals();
  if (name.rfind("F_", 0) == 0) {
    try {
      return prime(std::stoull(name.substr(2)));
    } catch (const Error&) {
      throw;
    } catch (...) {
      fail(errc::parse_error, "bad field name: " + name);
    }
  }
  fail(errc::parse_error, "bad field name: " + name + " (expected Q or F_p)");
}

std::string Field::name() const {
  return is_rational() ? "Q" : "F_" + std::to_string(p_);
}

Value Field::zero() const { return from_int(0); }
Value Field::one() const { return from_int(1); }

Value Field::from_int(long long v) const {
  if (is_rational()) return Value(mpq_class(static_cast<long>(v)));
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += static_cast<long long>(p_);
  return Value(static_cast<std::uint64_t>(r), p_);
}

Value Field::from_mpz(const mpz_class& z) const {
  if (is_rational()) return Value(mpq_class(z));
  std::uint64_t r = mpz_fdiv_ui(z.get_mpz_t(), p_);
  return Value(r, p_);
}

Value Field::from_mpq(const mpq_class& q) const {
  if (is_rational()) {
    mpq_class c = q;
    c.canonicalize();
    return Value(c);
  }
  mpq_class c = q;
  c.canonicalize();
  Value num = from_mpz(c.get_num());
  Value den = from_mpz(c.get_den());
  if (den.is_zero())
    fail(errc::invalid_argument,
         "denominator of " + c.get_str() + " is not invertible in " + name());
  return num / den;
}

Value Field::from_string(const std::string& s) const {
  if (s.empty()) fail(errc::parse_error, "empty field element");
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return from_mpz(mpz_class(s));
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (den == 0) fail(errc::parse_error, "zero denominator in " + s);
    return from_mpq(mpq_class(num, den));
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(errc::parse_error, "bad field element: " + s);
  }
}

std::vector<Value> Field::enumerate() const {
  if (is_rational()) fail(errc::invalid_argument, "cannot enumerate the rationals");
  if (static_cast<std::int64_t>(p_) > caps().max_field_enum)
    fail(errc::cap_exceeded, "field enumeration of F_" + std::to_string(p_) +
                                 " exceeds cap " + std::to_string(caps().max_field_enum));
  std::vector<Value> out;
  out.reserve(p_);
  for (std::uint64_t v = 0; v < p_; ++v) out.push_back(Value(v, p_));
  return out;
}

std::vector<Value> Field::first_elements(std::size_t count) const {
  if (is_prime_field() && count > p_)
    fail(errc::invalid_argument, "F_" + std::to_string(p_) + " has fewer than " +
                                     std::to_string(count) + " elements");
  std::vector<Value> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(from_int(static_cast<long long>(i)));
  return out;
}

Field Value::field() const {
  if (is_rational()) return Field::rationals();
  return Field::prime(std::get<Residue>(rep_).p);
}

bool Value::is_zero() const {
  if (is_rational()) return rational() == 0;
  return residue() == 0;
}

bool Value::is_one() const {
  if (is_rational()) return rational() == 1;
  return residue() == 1;
}

namespace {
std::uint64_t same_modulus(const Value& a, const Value& b) {
  if (a.is_rational() || b.is_rational())
    fail(errc::invalid_argument, "mixed-field operands (rational vs residue)");
  Field fa = a.field(), fb = b.field();
  if (fa != fb)
    fail(errc::invalid_argument, "mixed-field operands (" + fa.name() + " vs " + fb.name() + ")");
  return fa.modulus();
}
}  // namespace

Value Value::operator-() const {
  if (is_rational()) return Value(mpq_class(-rational()));
  const Residue& r = std::get<Residue>(rep_);
  return Value(r.v == 0 ? 0 : r.p - r.v, r.p);
}

Value Value::inv() const {
  if (is_rational()) {
    if (rational() == 0) fail(errc::division_by_zero, "division by zero in Q");
    return Value(mpq_class(1 / rational()));
  }
  const Residue& r = std::get<Residue>(rep_);
  return Value(mod_inv(r.v, r.p), r.p);
}

Value Value::pow(unsigned long e) const {
  if (is_rational()) {
    mpq_class out;
    mpz_pow_ui(out.get_num_mpz_t(), rational().get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), rational().get_den_mpz_t(), e);
    out.canonicalize();
    return Value(out);
  }
  const Residue& r = std::get<Residue>(rep_);
  return Value(mod_pow(r.v, e, r.p), r.p);
}

Value operator+(const Value& a, const Value& b) {
  if (a.is_rational() && b.is_rational()) return Value(mpq_class(a.rational() + b.rational()));
  std::uint64_t p = same_modulus(a, b);
  return Value((a.residue() + b.residue()) % p, p);
}

Value operator-(const Value& a, const Value& b) {
  if (a.is_rational() && b.is_rational()) return Value(mpq_class(a.rational() - b.rational()));
  std::uint64_t p = same_modulus(a, b);
  return Value((a.residue() + p - b.residue()) % p, p);
}

Value operator*(const Value& a, const Value& b) {
  if (a.is_rational() && b.is_rational()) return Value(mpq_class(a.rational() * b.rational()));
  std::uint64_t p = same_modulus(a, b);
  return Value(mod_mul(a.residue(), b.residue(), p), p);
}

Value operator/(const Value& a, const Value& b) {
  if (a.is_rational() && b.is_rational()) {
    if (b.rational() == 0) fail(errc::division_by_zero, "division by zero in Q");
    return Value(mpq_class(a.rational() / b.rational()));
  }
  std::uint64_t p = same_modulus(a, b);
  return Value(mod_mul(a.residue(), mod_inv(b.residue(), p), p), p);
}

bool Value::operator==(const Value& o) const {
  if (is_rational() != o.is_rational()) return false;
  if (is_rational()) return rational() == o.rational();
  const Residue& a = std::get<Residue>(rep_);
  const Residue& b = std::get<Residue>(o.rep_);
  return a.p == b.p && a.v == b.v;
}

bool Value::operator<(const Value& o) const {
  if (is_rational() && o.is_rational()) return rational() < o.rational();
  std::uint64_t p = same_modulus(*this, o);
  (void)p;
  return residue() < o.residue();
}

std::string Value::str() const {
  if (is_rational()) return rational().get_str();
  return std::to_string(residue());
}

void require_field(const Field& f, const Vec& v, const char* what) {
  for (const Value& x : v)
    if (x.field() != f)
      fail(errc::invalid_argument,
           std::string(what) + ": element from " + x.field().name() + ", expected " + f.name());
}

}  // namespace jointkit
