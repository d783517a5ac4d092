#include "effdim/scalar.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace effdim {

// ---- Rational ----

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0 || sgn(q.get_den()) == 0)
    throw Error(Errc::Malformed, "not a rational: '" + text + "'");
  q.canonicalize();
  return Rational(q);
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return Rational(mpq_class(1 / q_));
}

std::size_t Rational::hash() const {
  std::size_t h = std::hash<std::string>{}(q_.get_str());
  return h;
}

// ---- BigInt ----

BigInt floor_div(const BigInt& a, const BigInt& b) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), a.z_.get_mpz_t(), b.z_.get_mpz_t());
  return BigInt(r);
}

BigInt floor_mod(const BigInt& a, const BigInt& b) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.z_.get_mpz_t(), b.z_.get_mpz_t());
  return BigInt(r);
}

BigInt exact_div(const BigInt& a, const BigInt& b) {
  mpz_class r;
  mpz_divexact(r.get_mpz_t(), a.z_.get_mpz_t(), b.z_.get_mpz_t());
  return BigInt(r);
}

// ---- GaloisField ----

GaloisField::GaloisField(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), q_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < k_; ++i) q_ *= p_;
}

const GaloisField& GaloisField::get(std::uint32_t p, std::uint32_t k,
                                    const std::vector<std::uint32_t>& modulus) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::vector<std::uint32_t>>,
                  std::unique_ptr<GaloisField>>
      registry;
  std::vector<std::uint32_t> key_mod = k == 1 ? std::vector<std::uint32_t>{} : modulus;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = registry[{p, k, key_mod}];
  if (!slot) slot = std::make_unique<GaloisField>(p, k, key_mod);
  return *slot;
}

std::vector<std::uint32_t> GaloisField::coeffs(std::uint64_t a) const {
  std::vector<std::uint32_t> c(k_);
  for (std::uint32_t i = 0; i < k_; ++i) {
    c[i] = static_cast<std::uint32_t>(a % p_);
    a /= p_;
  }
  return c;
}

std::uint64_t GaloisField::from_coeffs(const std::vector<std::uint32_t>& c) const {
  std::uint64_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * p_ + (c[i] % p_);
  return v;
}

std::uint64_t GaloisField::add(std::uint64_t a, std::uint64_t b) const {
  if (k_ == 1) return (a + b) % p_;
  std::uint64_t r = 0, place = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    r += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return r;
}

std::uint64_t GaloisField::sub(std::uint64_t a, std::uint64_t b) const {
  if (k_ == 1) return (a + p_ - b) % p_;
  std::uint64_t r = 0, place = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    r += ((a % p_ + p_ - b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return r;
}

std::uint64_t GaloisField::mul(std::uint64_t a, std::uint64_t b) const {
  if (k_ == 1) return (a * b) % p_;
  auto ca = coeffs(a), cb = coeffs(b);
  std::vector<std::uint64_t> prod(2 * k_ - 1, 0);
  for (std::uint32_t i = 0; i < k_; ++i)
    for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(ca[i]) * cb[j]) % p_;
  // Reduce using x^k = -(c_0 + ... + c_{k-1} x^{k-1}).
  for (std::size_t d = prod.size(); d-- > k_;) {
    std::uint64_t top = prod[d];
    if (top == 0) continue;
    prod[d] = 0;
    for (std::uint32_t i = 0; i < k_; ++i) {
      std::uint64_t sub = (top * modulus_[i]) % p_;
      prod[d - k_ + i] = (prod[d - k_ + i] + p_ - sub) % p_;
    }
  }
  std::vector<std::uint32_t> out(k_);
  for (std::uint32_t i = 0; i < k_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return from_coeffs(out);
}

std::uint64_t GaloisField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = k_ == 1 ? 1 % p_ : 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t GaloisField::inv(std::uint64_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero in finite field");
  return pow(a, q_ - 2);
}

std::uint64_t GaloisField::from_int(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint64_t>(r);
}

// ---- Gf ----

namespace {
const GaloisField* common_field(const Gf& a, const Gf& b) {
  const GaloisField* fa = a.field();
  const GaloisField* fb = b.field();
  if (fa && fb && fa != fb) throw Error(Errc::FieldMismatch, "operands live in different fields");
  return fa ? fa : fb;
}
}  // namespace

std::uint64_t Gf::value_in(const GaloisField& f) const {
  if (f_ == nullptr) return f.from_int(v_);
  if (f_ != &f) throw Error(Errc::FieldMismatch, "element belongs to another field");
  return static_cast<std::uint64_t>(v_);
}

std::uint64_t Gf::value() const {
  if (f_ == nullptr) throw Error(Errc::FieldMismatch, "unbound finite-field literal");
  return static_cast<std::uint64_t>(v_);
}

bool Gf::is_zero() const { return f_ ? v_ == 0 : v_ == 0; }

Gf Gf::inverse() const {
  if (!f_) {
    if (v_ == 1 || v_ == -1) return *this;
    throw Error(Errc::FieldMismatch, "cannot invert an unbound literal");
  }
  return Gf(*f_, f_->inv(static_cast<std::uint64_t>(v_)));
}

std::size_t Gf::hash() const {
  return std::hash<std::int64_t>{}(v_) ^ (std::hash<const void*>{}(f_) << 1);
}

Gf operator+(const Gf& a, const Gf& b) {
  const GaloisField* f = common_field(a, b);
  if (!f) return Gf(static_cast<long long>(a.v_ + b.v_));
  return Gf(*f, f->add(a.value_in(*f), b.value_in(*f)));
}

Gf operator-(const Gf& a, const Gf& b) {
  const GaloisField* f = common_field(a, b);
  if (!f) return Gf(static_cast<long long>(a.v_ - b.v_));
  return Gf(*f, f->sub(a.value_in(*f), b.value_in(*f)));
}

Gf operator*(const Gf& a, const Gf& b) {
  const GaloisField* f = common_field(a, b);
  if (!f) return Gf(static_cast<long long>(a.v_ * b.v_));
  return Gf(*f, f->mul(a.value_in(*f), b.value_in(*f)));
}

bool operator==(const Gf& a, const Gf& b) {
  if (a.f_ && b.f_ && a.f_ != b.f_) return false;
  const GaloisField* f = a.f_ ? a.f_ : b.f_;
  if (!f) return a.v_ == b.v_;
  return a.value_in(*f) == b.value_in(*f);
}

std::ostream& operator<<(std::ostream& os, const Gf& a) {
  if (!a.f_ || a.f_->is_prime()) return os << a.v_;
  auto c = a.f_->coeffs(static_cast<std::uint64_t>(a.v_));
  os << '[';
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  return os << ']';
}

}  // namespace effdim
