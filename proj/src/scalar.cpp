#include "bgd/scalar.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bgd {

namespace {

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

bool fits(__int128 v) { return v <= kMax && v >= -kMax; }

unsigned __int128 abs128(__int128 v) {
  return v < 0 ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
}

unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    auto r = a % b;
    a = b;
    b = r;
  }
  return a;
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t uabs(std::int64_t v) {
  return v < 0 ? static_cast<std::uint64_t>(-v) : static_cast<std::uint64_t>(v);
}

mpz_class mpz_from_i128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = abs128(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  *this = from_i128(n, d);
}

Rational Rational::from_i128(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  auto g = gcd128(abs128(num), abs128(den));
  if (g > 1) {
    num /= static_cast<__int128>(g);
    den /= static_cast<__int128>(g);
  }
  if (fits(num) && fits(den)) {
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }
  mpq_class q(mpz_from_i128(num), mpz_from_i128(den));
  Rational r;
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

Rational Rational::from_mpq(mpq_class q) {
  q.canonicalize();
  const auto& n = q.get_num();
  const auto& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p()) {
    long ln = n.get_si();
    long ld = d.get_si();
    if (ln != std::numeric_limits<long>::min() && ld != std::numeric_limits<long>::min()) {
      Rational r;
      r.num_ = ln;
      r.den_ = ld;
      return r;
    }
  }
  Rational r;
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

Rational Rational::parse(std::string_view num, std::string_view den) {
  mpz_class n, d;
  if (n.set_str(std::string(num), 10) != 0) throw std::invalid_argument("bad integer: " + std::string(num));
  if (d.set_str(std::string(den), 10) != 0) throw std::invalid_argument("bad integer: " + std::string(den));
  if (d == 0) throw std::domain_error("rational with zero denominator");
  return from_mpq(mpq_class(n, d));
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

std::string Rational::numerator() const {
  return big_ ? big_->get_num().get_str() : std::to_string(num_);
}

std::string Rational::denominator() const {
  return big_ ? big_->get_den().get_str() : std::to_string(den_);
}

std::string Rational::str() const {
  auto d = denominator();
  return d == "1" ? numerator() : numerator() + "/" + d;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (big_) return from_mpq(1 / *big_);
  Rational r;
  r.num_ = num_ < 0 ? -den_ : den_;
  r.den_ = num_ < 0 ? -num_ : num_;
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t s;
      if (!__builtin_add_overflow(a.num_, b.num_, &s) && s != INT64_MIN) {
        Rational r;
        r.num_ = s;
        return r;
      }
    }
    // Knuth's reduced addition
    std::uint64_t g = gcd64(static_cast<std::uint64_t>(a.den_), static_cast<std::uint64_t>(b.den_));
    if (g == 1) {
      return Rational::from_i128(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                                 static_cast<__int128>(a.den_) * b.den_);
    }
    __int128 ad = a.den_ / static_cast<std::int64_t>(g);
    __int128 bd = b.den_ / static_cast<std::int64_t>(g);
    __int128 t = static_cast<__int128>(a.num_) * bd + static_cast<__int128>(b.num_) * ad;
    return Rational::from_i128(t, ad * b.den_);
  }
  return Rational::from_mpq(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational& a) {
  if (a.big_) return Rational::from_mpq(-*a.big_);
  Rational r = a;
  r.num_ = -a.num_;
  return r;
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (a.is_zero() || b.is_zero()) return Rational();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (!a.big_ && !b.big_) {
    std::uint64_t g1 = gcd64(uabs(a.num_), static_cast<std::uint64_t>(b.den_));
    std::uint64_t g2 = gcd64(uabs(b.num_), static_cast<std::uint64_t>(a.den_));
    std::int64_t n1 = a.num_ / static_cast<std::int64_t>(g1);
    std::int64_t d2 = b.den_ / static_cast<std::int64_t>(g1);
    std::int64_t n2 = b.num_ / static_cast<std::int64_t>(g2);
    std::int64_t d1 = a.den_ / static_cast<std::int64_t>(g2);
    std::int64_t n, d;
    if (!__builtin_mul_overflow(n1, n2, &n) && !__builtin_mul_overflow(d1, d2, &d) && n != INT64_MIN &&
        d != INT64_MIN) {
      Rational r;
      r.num_ = n;
      r.den_ = d;
      return r;
    }
    return Rational::from_i128(static_cast<__int128>(n1) * n2, static_cast<__int128>(d1) * d2);
  }
  return Rational::from_mpq(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (static_cast<bool>(a.big_) != static_cast<bool>(b.big_)) return false;  // both canonical
  return *a.big_ == *b.big_;
}

bool operator<(const Rational& a, const Rational& b) { return a.to_mpq() < b.to_mpq(); }

// ---------------------------------------------------------------------------

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t reduce_literal(std::int64_t v, std::uint64_t m) {
  if (v >= 0) return static_cast<std::uint64_t>(v) % m;
  std::uint64_t r = uabs(v) % m;
  return r == 0 ? 0 : m - r;
}

}  // namespace

ModP ModP::bind(std::uint64_t modulus) const {
  if (bound()) return *this;
  return ModP(reduce_literal(literal_, modulus), modulus);
}

std::uint64_t ModP::common_modulus(const ModP& a, const ModP& b) {
  if (a.bound() && b.bound() && a.modulus_ != b.modulus_)
    throw std::invalid_argument("arithmetic across different prime fields");
  return a.bound() ? a.modulus_ : b.modulus_;
}

std::string ModP::str() const { return bound() ? std::to_string(value_) : std::to_string(literal_); }

ModP ModP::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (!bound()) {
    if (literal_ == 1 || literal_ == -1) return *this;
    throw std::logic_error("inverse of an integer literal with no prime attached");
  }
  // extended Euclid
  __int128 r0 = modulus_, r1 = value_, t0 = 0, t1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    __int128 t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw std::domain_error("element not invertible");
  if (t0 < 0) t0 += modulus_;
  return ModP(static_cast<std::uint64_t>(t0), modulus_);
}

ModP operator+(const ModP& a, const ModP& b) {
  std::uint64_t m = ModP::common_modulus(a, b);
  if (m == 0) {
    std::int64_t s;
    if (__builtin_add_overflow(a.literal_, b.literal_, &s)) throw std::overflow_error("literal overflow");
    return ModP(s);
  }
  ModP x = a.bind(m), y = b.bind(m);
  std::uint64_t s = x.value_ + y.value_;
  if (s >= m) s -= m;
  ModP r;
  r.value_ = s;
  r.modulus_ = m;
  return r;
}

ModP operator-(const ModP& a) {
  if (!a.bound()) return ModP(-a.literal_);
  ModP r;
  r.modulus_ = a.modulus_;
  r.value_ = a.value_ == 0 ? 0 : a.modulus_ - a.value_;
  return r;
}

ModP operator-(const ModP& a, const ModP& b) { return a + (-b); }

ModP operator*(const ModP& a, const ModP& b) {
  std::uint64_t m = ModP::common_modulus(a, b);
  if (m == 0) {
    std::int64_t s;
    if (__builtin_mul_overflow(a.literal_, b.literal_, &s)) throw std::overflow_error("literal overflow");
    return ModP(s);
  }
  ModP x = a.bind(m), y = b.bind(m);
  ModP r;
  r.modulus_ = m;
  r.value_ = mulmod(x.value_, y.value_, m);
  return r;
}

ModP operator/(const ModP& a, const ModP& b) {
  std::uint64_t m = ModP::common_modulus(a, b);
  if (m == 0) return a * b.inverse();
  return a.bind(m) * b.bind(m).inverse();
}

bool operator==(const ModP& a, const ModP& b) {
  std::uint64_t m = ModP::common_modulus(a, b);
  if (m == 0) return a.literal_ == b.literal_;
  return a.bind(m).value_ == b.bind(m).value_;
}

// ---------------------------------------------------------------------------

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto powmod = [n](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    b %= n;
    while (e) {
      if (e & 1) r = mulmod(r, b, n);
      b = mulmod(b, b, n);
      e >>= 1;
    }
    return r;
  };
  // deterministic witness set for 64-bit integers
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
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

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (1ull << 63)) throw std::invalid_argument("prime modulus must be below 2^63");
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  return FieldSpec{p};
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "Q") return rationals();
  if (text.substr(0, 3) == "Fp:") {
    auto digits = text.substr(3);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
      throw std::invalid_argument("bad field modulus: " + std::string(text));
    return prime(p);
  }
  throw std::invalid_argument("unknown field '" + std::string(text) + "' (expected Q or Fp:<p>)");
}

std::string FieldSpec::name() const { return is_rational() ? "Q" : "Fp:" + std::to_string(modulus); }

template <>
Rational make_scalar<Rational>(const FieldSpec& field, long long num, long long den) {
  if (!field.is_rational()) throw std::invalid_argument("rational scalar requested for " + field.name());
  return Rational(num, den);
}

template <>
ModP make_scalar<ModP>(const FieldSpec& field, long long num, long long den) {
  if (field.is_rational()) throw std::invalid_argument("prime-field scalar requested for Q");
  std::uint64_t m = field.modulus;
  ModP d(reduce_literal(den, m), m);
  if (d.is_zero()) throw std::domain_error(std::to_string(den) + " is zero in " + field.name());
  return ModP(reduce_literal(num, m), m) / d;
}

template <>
Rational parse_scalar<Rational>(const FieldSpec& field, std::string_view num, std::string_view den) {
  if (!field.is_rational()) throw std::invalid_argument("rational scalar requested for " + field.name());
  return Rational::parse(num, den);
}

template <>
ModP parse_scalar<ModP>(const FieldSpec& field, std::string_view num, std::string_view den) {
  if (field.is_rational()) throw std::invalid_argument("prime-field scalar requested for Q");
  mpz_class n, d, m(std::to_string(field.modulus));
  if (n.set_str(std::string(num), 10) != 0) throw std::invalid_argument("bad integer: " + std::string(num));
  if (d.set_str(std::string(den), 10) != 0) throw std::invalid_argument("bad integer: " + std::string(den));
  mpz_class nr = n % m, dr = d % m;
  if (nr < 0) nr += m;
  if (dr < 0) dr += m;
  if (dr == 0) throw std::domain_error("denominator " + std::string(den) + " is zero in " + field.name());
  ModP a(std::stoull(nr.get_str()), field.modulus);
  ModP b(std::stoull(dr.get_str()), field.modulus);
  return a / b;
}

std::pair<std::string, std::string> to_fraction(const Rational& x) { return {x.numerator(), x.denominator()}; }

std::pair<std::string, std::string> to_fraction(const ModP& x) { return {x.str(), "1"}; }

}  // namespace bgd
