#include "effdim/field.hpp"

#include <sstream>

namespace effdim {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// Remainder of `a` modulo monic `m` over F_p; both low-to-high.
std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& m,
                                    std::uint32_t p) {
  const std::size_t dm = m.size() - 1;
  for (std::size_t d = a.size(); d-- > dm;) {
    std::uint64_t top = a[d];
    if (top == 0) continue;
    for (std::size_t i = 0; i <= dm; ++i) {
      std::uint64_t s = (top * m[i]) % p;
      a[d - dm + i] = static_cast<std::uint32_t>((a[d - dm + i] + p - s) % p);
    }
  }
  a.resize(dm);
  return a;
}

}  // namespace

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& monic) {
  const std::size_t k = monic.size() - 1;
  if (k == 0 || monic.back() != 1) return false;
  if (k == 1) return true;
  // Trial division by every monic polynomial of degree 1..k/2.
  for (std::size_t d = 1; d <= k / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<std::uint32_t> f(d + 1);
      std::uint64_t t = idx;
      for (std::size_t i = 0; i < d; ++i) {
        f[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      f[d] = 1;
      auto r = poly_mod(monic, f, p);
      bool zero = true;
      for (auto c : r) zero = zero && c == 0;
      if (zero) return false;
    }
  }
  return true;
}

std::optional<std::uint64_t> FieldSpec::size() const {
  if (kind == FieldKind::Rationals) return std::nullopt;
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) q *= p;
  return q;
}

FieldSpec FieldSpec::parse(const std::string& text) {
  auto bad = [&] { return Error(Errc::Malformed, "unrecognised field '" + text + "'"); };
  if (text == "Q" || text == "QQ") return rationals();
  auto number = [&](const std::string& s) -> std::uint32_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9) throw bad();
    return static_cast<std::uint32_t>(std::stoul(s));
  };
  FieldSpec f;
  if (text.rfind("Fp:", 0) == 0) {
    f.kind = FieldKind::Prime;
    f.p = number(text.substr(3));
  } else if (text.rfind("Fq:", 0) == 0) {
    auto rest = text.substr(3);
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw bad();
    f.p = number(rest.substr(0, comma));
    f.k = number(rest.substr(comma + 1));
    f.kind = f.k == 1 ? FieldKind::Prime : FieldKind::Extension;
  } else if (text.size() > 1 && text[0] == 'F') {
    f.kind = FieldKind::Prime;
    f.p = number(text.substr(1));
  } else {
    throw bad();
  }
  // Validates and fills the canonical modulus.
  return spec_of(to_field(f));
}

std::string FieldSpec::str() const {
  switch (kind) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::Prime: return "Fp:" + std::to_string(p);
    case FieldKind::Extension: return "Fq:" + std::to_string(p) + "," + std::to_string(k);
  }
  return "?";
}

void to_json(nlohmann::json& j, const FieldSpec& f) {
  switch (f.kind) {
    case FieldKind::Rationals: j = {{"kind", "Q"}}; break;
    case FieldKind::Prime: j = {{"kind", "Fp"}, {"p", f.p}}; break;
    case FieldKind::Extension: j = {{"kind", "Fq"}, {"p", f.p}, {"k", f.k}, {"modulus", f.modulus}}; break;
  }
}

void from_json(const nlohmann::json& j, FieldSpec& f) {
  const std::string kind = j.at("kind").get<std::string>();
  f = FieldSpec{};
  if (kind == "Q") return;
  f.p = j.at("p").get<std::uint32_t>();
  if (kind == "Fp") {
    f.kind = FieldKind::Prime;
  } else if (kind == "Fq") {
    f.kind = FieldKind::Extension;
    f.k = j.at("k").get<std::uint32_t>();
    if (j.contains("modulus")) f.modulus = j.at("modulus").get<std::vector<std::uint32_t>>();
  } else {
    throw Error(Errc::Malformed, "unknown field kind " + kind);
  }
}

Rational RationalField::random_nonzero(std::mt19937_64& rng) const {
  std::uniform_int_distribution<long> dist(1, 1000000);
  return Rational(dist(rng));
}

Rational RationalField::decode(const nlohmann::json& j) const {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw Error(Errc::Malformed, "rational entry must be a string or integer");
}

FieldSpec FiniteField::spec() const {
  FieldSpec s;
  s.kind = f_->is_prime() ? FieldKind::Prime : FieldKind::Extension;
  s.p = f_->p();
  s.k = f_->k();
  s.modulus = f_->modulus();
  return s;
}

Gf FiniteField::random_nonzero(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::uint64_t> dist(1, f_->q() - 1);
  return Gf(*f_, dist(rng));
}

nlohmann::json FiniteField::encode(const Gf& x) const {
  std::uint64_t v = x.value_in(*f_);
  if (f_->is_prime()) return v;
  return f_->coeffs(v);
}

Gf FiniteField::decode(const nlohmann::json& j) const {
  if (f_->is_prime()) {
    if (!j.is_number_integer()) throw Error(Errc::Malformed, "prime-field entry must be an integer");
    std::int64_t v = j.get<std::int64_t>();
    if (v < 0 || static_cast<std::uint64_t>(v) >= f_->p()) throw Error(Errc::Malformed, "prime-field entry out of range");
    return Gf(*f_, static_cast<std::uint64_t>(v));
  }
  if (!j.is_array() || j.size() != f_->k()) throw Error(Errc::Malformed, "extension entry must be a coefficient array");
  std::vector<std::uint32_t> c;
  for (const auto& e : j) {
    std::int64_t v = e.get<std::int64_t>();
    if (v < 0 || static_cast<std::uint64_t>(v) >= f_->p()) throw Error(Errc::Malformed, "coefficient out of range");
    c.push_back(static_cast<std::uint32_t>(v));
  }
  return Gf(*f_, f_->from_coeffs(c));
}

FiniteField make_field(std::uint32_t p, std::uint32_t k) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (k == 1) return FiniteField(GaloisField::get(p, 1, {}));
  if (k < 1 || k > 4 || p > 97) throw Error(Errc::TooLarge, "extension fields limited to k <= 4, p <= 97");
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  // Enumerate (c_{k-1}, ..., c_0) lexicographically: the leading digit of
  // the counter drives c_{k-1}.
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<std::uint32_t> m(k + 1);
    std::uint64_t t = idx;
    for (std::uint32_t i = 0; i < k; ++i) {
      m[i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    m[k] = 1;
    if (is_irreducible(p, m)) return FiniteField(GaloisField::get(p, k, m));
  }
  throw Error(Errc::ReduciblePolynomial, "no irreducible polynomial found");
}

FiniteField make_field(std::uint32_t p, std::uint32_t k, const std::vector<std::uint32_t>& modulus) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (k == 1) return FiniteField(GaloisField::get(p, 1, {}));
  if (k > 4 || p > 97) throw Error(Errc::TooLarge, "extension fields limited to k <= 4, p <= 97");
  if (modulus.size() != k + 1 || !is_irreducible(p, modulus))
    throw Error(Errc::ReduciblePolynomial, "modulus is not a monic irreducible of degree " + std::to_string(k));
  return FiniteField(GaloisField::get(p, k, modulus));
}

AnyField to_field(const FieldSpec& spec) {
  switch (spec.kind) {
    case FieldKind::Rationals: return RationalField{};
    case FieldKind::Prime: return make_field(spec.p, 1);
    case FieldKind::Extension:
      return spec.modulus.empty() ? make_field(spec.p, spec.k) : make_field(spec.p, spec.k, spec.modulus);
  }
  return RationalField{};
}

FieldSpec spec_of(const AnyField& f) {
  return std::visit([](const auto& x) { return x.spec(); }, f);
}

std::pair<std::uint32_t, std::uint64_t> root_of_unity(std::uint64_t N) {
  if (N < 1 || N > 1000000) throw Error(Errc::TooLarge, "root_of_unity supports 1 <= N <= 10^6");
  for (std::uint64_t p = 2;; ++p) {
    if ((p - 1) % N != 0 || !is_prime(p)) continue;
    const GaloisField& f = GaloisField::get(static_cast<std::uint32_t>(p), 1, {});
    std::vector<std::uint64_t> prime_divisors;
    std::uint64_t m = N;
    for (std::uint64_t d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        prime_divisors.push_back(d);
        while (m % d == 0) m /= d;
      }
    if (m > 1) prime_divisors.push_back(m);
    for (std::uint64_t x = 1; x < p; ++x) {
      if (f.pow(x, N) != 1) continue;
      bool exact = true;
      for (auto r : prime_divisors) exact = exact && f.pow(x, N / r) != 1;
      if (exact) return {static_cast<std::uint32_t>(p), x};
    }
  }
}

}  // namespace effdim
