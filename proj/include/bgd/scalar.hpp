#pragma once

// Exact scalar types used as Eigen coefficient types.
//
// Rational keeps values that fit in a machine word inline and only spills
// to a GMP rational when a numerator or denominator overflows. ModP is an
// element of a prime field whose modulus travels with the value; integer
// literals created by Eigen (Scalar(0), Scalar(1)) carry no modulus and bind
// to the modulus of the first operand they meet.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Core>
#include <gmpxx.h>

namespace bgd {

class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n) {  // NOLINT: implicit, Eigen builds Scalar(0)
    if (n == INT64_MIN) *this = from_mpq(mpq_class(mpz_class(std::to_string(n))));
  }
  Rational(long long n, long long d);
  explicit Rational(const mpq_class& q) { *this = from_mpq(q); }

  static Rational parse(std::string_view num, std::string_view den);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  int sign() const;
  mpq_class to_mpq() const;
  std::string numerator() const;
  std::string denominator() const;
  std::string str() const;

  Rational inverse() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);

 private:
  static Rational from_mpq(mpq_class q);
  static Rational from_i128(__int128 num, __int128 den);

  // small form: den_ > 0, gcd(|num_|, den_) == 1, neither equals INT64_MIN
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

class ModP {
 public:
  ModP() = default;
  ModP(long long literal) : literal_(literal) {}  // NOLINT: unbound literal
  ModP(std::uint64_t value, std::uint64_t modulus) : value_(value % modulus), modulus_(modulus) {}

  std::uint64_t modulus() const { return modulus_; }
  bool bound() const { return modulus_ != 0; }
  // canonical representative; unbound literals are reported as-is
  std::uint64_t value() const { return value_; }
  bool is_zero() const { return bound() ? value_ == 0 : literal_ == 0; }
  bool is_one() const { return bound() ? value_ == 1 : literal_ == 1; }
  std::string str() const;

  ModP inverse() const;

  friend ModP operator+(const ModP& a, const ModP& b);
  friend ModP operator-(const ModP& a, const ModP& b);
  friend ModP operator*(const ModP& a, const ModP& b);
  friend ModP operator/(const ModP& a, const ModP& b);
  friend ModP operator-(const ModP& a);
  ModP& operator+=(const ModP& o) { return *this = *this + o; }
  ModP& operator-=(const ModP& o) { return *this = *this - o; }
  ModP& operator*=(const ModP& o) { return *this = *this * o; }
  ModP& operator/=(const ModP& o) { return *this = *this / o; }

  friend bool operator==(const ModP& a, const ModP& b);
  friend bool operator!=(const ModP& a, const ModP& b) { return !(a == b); }

 private:
  ModP bind(std::uint64_t modulus) const;
  static std::uint64_t common_modulus(const ModP& a, const ModP& b);

  std::uint64_t value_ = 0;
  std::uint64_t modulus_ = 0;
  std::int64_t literal_ = 0;
};

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const ModP& x) { return x.is_zero(); }
inline std::string to_string(const Rational& x) { return x.str(); }
inline std::string to_string(const ModP& x) { return x.str(); }

template <class S>
concept ExactScalar = requires(const S& a, const S& b) {
  { a + b } -> std::same_as<S>;
  { a - b } -> std::same_as<S>;
  { a * b } -> std::same_as<S>;
  { a / b } -> std::same_as<S>;
  { is_zero(a) } -> std::same_as<bool>;
  { to_string(a) } -> std::same_as<std::string>;
};

/// The coefficient field of a computation: the rationals, or Z/p for a
/// prime p below 2^63.
struct FieldSpec {
  std::uint64_t modulus = 0;  // 0 selects the rationals

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint64_t p);  // throws std::invalid_argument unless p is prime
  static FieldSpec parse(std::string_view text);  // "Q" or "Fp:<p>"

  bool is_rational() const { return modulus == 0; }
  std::uint64_t characteristic() const { return modulus; }
  std::string name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t n);

template <class S>
S make_scalar(const FieldSpec& field, long long num, long long den = 1);
template <>
Rational make_scalar<Rational>(const FieldSpec& field, long long num, long long den);
template <>
ModP make_scalar<ModP>(const FieldSpec& field, long long num, long long den);

/// Decimal numerator/denominator strings; throws std::domain_error on a zero
/// denominator (in Z/p: a denominator divisible by p).
template <class S>
S parse_scalar(const FieldSpec& field, std::string_view num, std::string_view den);
template <>
Rational parse_scalar<Rational>(const FieldSpec& field, std::string_view num, std::string_view den);
template <>
ModP parse_scalar<ModP>(const FieldSpec& field, std::string_view num, std::string_view den);

/// Reduced numerator/denominator pair used by the file format.
std::pair<std::string, std::string> to_fraction(const Rational& x);
std::pair<std::string, std::string> to_fraction(const ModP& x);

/// Calls `fn.template operator()<S>()` with the scalar type matching `field`.
template <class Fn>
decltype(auto) with_field(const FieldSpec& field, Fn&& fn) {
  if (field.is_rational()) return fn.template operator()<Rational>();
  return fn.template operator()<ModP>();
}

}  // namespace bgd

namespace Eigen {

template <>
struct NumTraits<bgd::Rational> : GenericNumTraits<bgd::Rational> {
  typedef bgd::Rational Real;
  typedef bgd::Rational NonInteger;
  typedef bgd::Rational Nested;
  typedef bgd::Rational Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 4
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<bgd::ModP> : GenericNumTraits<bgd::ModP> {
  typedef bgd::ModP Real;
  typedef bgd::ModP NonInteger;
  typedef bgd::ModP Nested;
  typedef bgd::ModP Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 2
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
