#pragma once

// Exact scalar types used as Eigen coefficients: arbitrary-precision
// rationals and integers (GMP backed) and elements of finite fields.

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "effdim/error.hpp"

namespace effdim {

class Rational {
 public:
  Rational() = default;
  Rational(int n) : q_(static_cast<long>(n)) {}
  Rational(long n) : q_(n) {}
  Rational(long long n) : q_(static_cast<long>(n)) {}
  Rational(long num, long den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  // Accepts "a", "-a", "a/b".
  static Rational parse(const std::string& text);

  const mpq_class& raw() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }
  Rational inverse() const;
  std::string str() const { return q_.get_str(); }
  std::size_t hash() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& b) { q_ += b.q_; return *this; }
  Rational& operator-=(const Rational& b) { q_ -= b.q_; return *this; }
  Rational& operator*=(const Rational& b) { q_ *= b.q_; return *this; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

class BigInt {
 public:
  BigInt() = default;
  BigInt(int n) : z_(static_cast<long>(n)) {}
  BigInt(long n) : z_(n) {}
  BigInt(long long n) : z_(static_cast<long>(n)) {}
  explicit BigInt(mpz_class z) : z_(std::move(z)) {}

  const mpz_class& raw() const { return z_; }
  bool is_zero() const { return sgn(z_) == 0; }
  int sign() const { return sgn(z_); }
  BigInt abs() const { return BigInt(mpz_class(::abs(z_))); }
  bool fits_long() const { return z_.fits_slong_p(); }
  long to_long() const { return z_.get_si(); }
  std::string str() const { return z_.get_str(); }

  // Floor division and the matching non-negative-divisor remainder.
  friend BigInt floor_div(const BigInt& a, const BigInt& b);
  friend BigInt floor_mod(const BigInt& a, const BigInt& b);
  friend BigInt gcd(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(::gcd(a.z_, b.z_))); }
  friend BigInt lcm(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(::lcm(a.z_, b.z_))); }
  // Exact division; b must divide a.
  friend BigInt exact_div(const BigInt& a, const BigInt& b);

  friend BigInt operator+(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.z_ + b.z_)); }
  friend BigInt operator-(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.z_ - b.z_)); }
  friend BigInt operator*(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.z_ * b.z_)); }
  BigInt operator-() const { return BigInt(mpz_class(-z_)); }
  BigInt& operator+=(const BigInt& b) { z_ += b.z_; return *this; }
  BigInt& operator-=(const BigInt& b) { z_ -= b.z_; return *this; }
  BigInt& operator*=(const BigInt& b) { z_ *= b.z_; return *this; }
  friend bool operator==(const BigInt& a, const BigInt& b) { return a.z_ == b.z_; }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return a.z_ != b.z_; }
  friend bool operator<(const BigInt& a, const BigInt& b) { return a.z_ < b.z_; }
  friend std::ostream& operator<<(std::ostream& os, const BigInt& r) { return os << r.str(); }

 private:
  mpz_class z_;
};

// Arithmetic context for GF(p^k). Instances are interned and live for the
// whole process, so elements may keep a plain pointer to their field.
// Extension-field elements are packed as base-p digit strings, least
// significant coefficient first.
class GaloisField {
 public:
  // `modulus` lists the coefficients c_0..c_k of a monic irreducible
  // polynomial; it is ignored (and may be empty) when k == 1.
  static const GaloisField& get(std::uint32_t p, std::uint32_t k,
                                const std::vector<std::uint32_t>& modulus);

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint64_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool is_prime() const { return k_ == 1; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const { return sub(0, a); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t from_int(std::int64_t n) const;

  std::vector<std::uint32_t> coeffs(std::uint64_t a) const;
  std::uint64_t from_coeffs(const std::vector<std::uint32_t>& c) const;

  GaloisField(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus);

 private:
  std::uint32_t p_;
  std::uint32_t k_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
};

// Finite field element. A default or integer-constructed value is an
// unbound integer literal; it adopts the field of whatever it is combined
// with. This lets generic code (and Eigen) write Scalar(0) and Scalar(1).
class Gf {
 public:
  Gf() = default;
  Gf(int n) : v_(n) {}
  Gf(long n) : v_(n) {}
  Gf(long long n) : v_(n) {}
  Gf(const GaloisField& f, std::uint64_t reduced) : f_(&f), v_(static_cast<std::int64_t>(reduced)) {}
  static Gf from_int(const GaloisField& f, std::int64_t n) { return Gf(f, f.from_int(n)); }

  const GaloisField* field() const { return f_; }
  bool bound() const { return f_ != nullptr; }
  // Packed value in [0, q); binds literals to `f` first.
  std::uint64_t value_in(const GaloisField& f) const;
  std::uint64_t value() const;
  std::int64_t literal() const { return v_; }
  bool is_zero() const;
  Gf inverse() const;
  Gf bind(const GaloisField& f) const { return Gf(f, value_in(f)); }
  std::size_t hash() const;

  friend Gf operator+(const Gf& a, const Gf& b);
  friend Gf operator-(const Gf& a, const Gf& b);
  friend Gf operator*(const Gf& a, const Gf& b);
  friend Gf operator/(const Gf& a, const Gf& b) { return a * b.inverse(); }
  Gf operator-() const { return Gf(0) - *this; }
  Gf& operator+=(const Gf& b) { return *this = *this + b; }
  Gf& operator-=(const Gf& b) { return *this = *this - b; }
  Gf& operator*=(const Gf& b) { return *this = *this * b; }
  Gf& operator/=(const Gf& b) { return *this = *this / b; }
  friend bool operator==(const Gf& a, const Gf& b);
  friend bool operator!=(const Gf& a, const Gf& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const Gf& a);

 private:
  const GaloisField* f_ = nullptr;
  std::int64_t v_ = 0;
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_zero(const Gf& g) { return g.is_zero(); }
inline bool is_zero(const BigInt& b) { return b.is_zero(); }

}  // namespace effdim

namespace Eigen {

template <class T>
struct ExactNumTraitsBase : GenericNumTraits<T> {
  typedef T Real;
  typedef T NonInteger;
  typedef T Nested;
  typedef T Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static inline int digits10() { return 0; }
  static inline T epsilon() { return T(0); }
  static inline T dummy_precision() { return T(0); }
};

template <> struct NumTraits<effdim::Rational> : ExactNumTraitsBase<effdim::Rational> {};
template <> struct NumTraits<effdim::BigInt> : ExactNumTraitsBase<effdim::BigInt> {};
template <> struct NumTraits<effdim::Gf> : ExactNumTraitsBase<effdim::Gf> {};

}  // namespace Eigen

template <> struct std::hash<effdim::Rational> {
  std::size_t operator()(const effdim::Rational& r) const { return r.hash(); }
};
template <> struct std::hash<effdim::Gf> {
  std::size_t operator()(const effdim::Gf& g) const { return g.hash(); }
};
