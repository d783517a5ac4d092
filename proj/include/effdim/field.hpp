#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "effdim/scalar.hpp"

namespace effdim {

enum class FieldKind { Rationals, Prime, Extension };

// Plain descriptor of a field; convertible to a concrete field object with
// `to_field`. For extension fields `modulus` holds c_0..c_k (monic).
struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  std::uint32_t p = 0;
  std::uint32_t k = 1;
  std::vector<std::uint32_t> modulus;

  static FieldSpec rationals() { return {}; }
  // "Q", "Fp:7", "Fq:2,2" (also accepts "F7").
  static FieldSpec parse(const std::string& text);
  std::string str() const;
  std::uint64_t characteristic() const { return kind == FieldKind::Rationals ? 0 : p; }
  std::optional<std::uint64_t> size() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

void to_json(nlohmann::json& j, const FieldSpec& f);
void from_json(const nlohmann::json& j, FieldSpec& f);

bool is_prime(std::uint64_t n);

// Coefficients c_0..c_k of a monic polynomial over F_p.
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& monic);

class RationalField {
 public:
  using scalar_type = Rational;
  static constexpr bool is_finite = false;

  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  Rational from_int(std::int64_t n) const { return Rational(static_cast<long>(n)); }
  Rational canonical(const Rational& x) const { return x; }
  std::uint64_t characteristic() const { return 0; }
  std::optional<std::uint64_t> size() const { return std::nullopt; }
  FieldSpec spec() const { return FieldSpec::rationals(); }
  std::string name() const { return "Q"; }
  // Uniform integer in [1, 10^6].
  Rational random_nonzero(std::mt19937_64& rng) const;
  // The i-th element of the enumeration 0, 1, 2, ...
  Rational element(std::uint64_t i) const { return from_int(static_cast<std::int64_t>(i)); }

  nlohmann::json encode(const Rational& x) const { return x.str(); }
  Rational decode(const nlohmann::json& j) const;

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

class FiniteField {
 public:
  using scalar_type = Gf;
  static constexpr bool is_finite = true;

  explicit FiniteField(const GaloisField& f) : f_(&f) {}

  const GaloisField& gf() const { return *f_; }
  Gf zero() const { return Gf(*f_, 0); }
  Gf one() const { return Gf(*f_, f_->from_int(1)); }
  Gf from_int(std::int64_t n) const { return Gf::from_int(*f_, n); }
  Gf canonical(const Gf& x) const { return x.bind(*f_); }
  std::uint64_t characteristic() const { return f_->p(); }
  std::optional<std::uint64_t> size() const { return f_->q(); }
  FieldSpec spec() const;
  std::string name() const { return spec().str(); }
  Gf random_nonzero(std::mt19937_64& rng) const;
  // Element with packed value i (0 <= i < q).
  Gf element(std::uint64_t i) const { return Gf(*f_, i % f_->q()); }

  nlohmann::json encode(const Gf& x) const;
  Gf decode(const nlohmann::json& j) const;

  friend bool operator==(const FiniteField& a, const FiniteField& b) { return a.f_ == b.f_; }

 private:
  const GaloisField* f_;
};

using AnyField = std::variant<RationalField, FiniteField>;

// Prime field for k == 1, otherwise GF(p^k) with the lexicographically least
// monic irreducible modulus (compared from the x^{k-1} coefficient down).
FiniteField make_field(std::uint32_t p, std::uint32_t k = 1);
FiniteField make_field(std::uint32_t p, std::uint32_t k, const std::vector<std::uint32_t>& modulus);
AnyField to_field(const FieldSpec& spec);
FieldSpec spec_of(const AnyField& f);

// Smallest prime p = 1 (mod N) and the least element of F_p of order exactly N.
std::pair<std::uint32_t, std::uint64_t> root_of_unity(std::uint64_t N);

}  // namespace effdim
