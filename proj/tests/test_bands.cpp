#include <catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <set>

#include "effdim/bands.hpp"
#include "effdim/duality.hpp"
#include "oracles.hpp"

using namespace effdim;

namespace {

// Faces of the central arrangement {x = 0, y = 0, x = y} by sampling
// directions plus the origin.
std::vector<SignVector> a2_faces() {
  std::set<std::string> seen = {"000"};
  auto sgn = [](double v) { return std::abs(v) < 1e-9 ? '0' : (v > 0 ? '+' : '-'); };
  for (int k = 0; k < 24; ++k) {
    const double t = k * M_PI / 12.0, x = std::cos(t), y = std::sin(t);
    seen.insert(std::string{sgn(x), sgn(y), sgn(x - y)});
  }
  std::vector<SignVector> out;
  for (const auto& s : seen) out.push_back(SignVector::parse(s));
  return out;
}

using Mat2 = std::array<int, 4>;

Mat2 mul(const Mat2& a, const Mat2& b, int p) {
  return {(a[0] * b[0] + a[1] * b[2]) % p, (a[0] * b[1] + a[1] * b[3]) % p, (a[2] * b[0] + a[3] * b[2]) % p,
          (a[2] * b[1] + a[3] * b[3]) % p};
}

// Effective representations of R_{2,2} by 2x2 matrices over F_p, counted by
// brute force: (i,j) = (i,i)(j,j) so the two diagonal images decide everything.
int count_rect22_2dim(int p) {
  std::vector<Mat2> all;
  for (int a = 0; a < p * p * p * p; ++a) all.push_back({a % p, a / p % p, a / (p * p) % p, a / (p * p * p)});
  int found = 0;
  for (const auto& e : all)
    for (const auto& f : all) {
      const Mat2 d[2] = {e, f};
      Mat2 img[4];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) img[i * 2 + j] = mul(d[i], d[j], p);
      bool ok = img[0] == e && img[3] == f;
      for (int x = 0; ok && x < 4; ++x)
        for (int y = 0; ok && y < 4; ++y) ok = mul(img[x], img[y], p) == img[(x / 2) * 2 + y % 2];
      for (int x = 0; ok && x < 4; ++x)
        for (int y = x + 1; ok && y < 4; ++y) ok = img[x] != img[y];
      found += ok;
    }
  return found;
}

}  // namespace

TEST_CASE("support lattice examples") {
  auto f2 = free_lrb(2);
  CHECK(f2.table.size() == 5);
  CHECK(support_lattice(f2.table).lattice.size() == 4);
  CHECK(support_lattice(sign_monoid(2)).lattice.size() == 4);
  const auto l = oracle::lattice_Ln(3);
  const auto sl = support_lattice(l);
  CHECK(sl.lattice.size() == l.size());
  CHECK(find_isomorphism(sl.lattice, l).has_value());
  CHECK_THROWS_AS(support_lattice(oracle::cyclic_group(2)), Error);
  CHECK_THROWS_AS(support_lattice(oracle::left_zero(2)), Error);  // no identity
}

TEST_CASE("support map is a surjective homomorphism onto a lattice") {
  for (const auto& m : {free_lrb(3).table, sign_monoid(3), face_semigroup(a2_faces()), oracle::chain(4)}) {
    const auto sl = support_lattice(m);
    std::set<Elem> image(sl.sigma.begin(), sl.sigma.end());
    CHECK(image.size() == sl.lattice.size());
    for (Elem a = 0; a < m.size(); ++a)
      for (Elem b = 0; b < m.size(); ++b) CHECK(sl.sigma[m(a, b)] == sl.lattice(sl.sigma[a], sl.sigma[b]));
    const auto flags = classify_basic(sl.lattice);
    CHECK(flags.is_commutative);
    CHECK(flags.is_band);
    CHECK(flags.is_monoid);
    CHECK(sl.lattice.zero().has_value());
  }
}

TEST_CASE("free LRB matches the independent construction") {
  for (int k = 1; k <= 4; ++k) CHECK(find_isomorphism(free_lrb(k).table, adjoin_identity(oracle::free_lrb(k)).table).has_value());
  CHECK(free_lrb(5).table.size() == 326);
  CHECK_THROWS_AS(free_lrb(6), Error);
}

TEST_CASE("LRB lower bound") {
  CHECK(lrb_lower_bound(sign_monoid(2)).value == 3);
  CHECK(lrb_lower_bound(free_lrb(2).table).value == 3);
  for (const auto& l : {oracle::chain(3), oracle::lattice_Ln(2), oracle::skew_lattice()})
    CHECK(lrb_lower_bound(l).value == effdim_comm_inverse(l).value);
  const RationalField q;
  for (int n = 1; n <= 6; ++n) CHECK(lrb_lower_bound(sign_monoid(n)).value == n + 1);
  for (int n = 1; n <= 4; ++n) CHECK(sign_power_rep(n, q).dim() == n + 1);
}

TEST_CASE("sign-sequence representation") {
  const RationalField q;
  const FiniteField f2 = make_field(2);
  for (int n = 1; n <= 3; ++n) {
    auto r = sign_power_rep(n, q);
    CHECK(r.dim() == n + 1);
    CHECK(r.check()->is_homomorphism);
    CHECK(r.check()->is_effective);
    CHECK(r.image(0) == identity(q, n + 1));
    CHECK(sign_power_rep(n, f2).check()->is_effective);
  }
}

TEST_CASE("hyperplane face semigroups") {
  const RationalField q;
  std::vector<SignVector> boolean2;
  for (const char* s : {"00", "0+", "0-", "+0", "-0", "++", "+-", "-+", "--"}) boolean2.push_back(SignVector::parse(s));
  CHECK(hyperplane_effdim(boolean2, q).value == 3);
  CHECK(hyperplane_effdim(parse_faces("0\n+\n-\n"), q).value == 2);
  const auto a2 = a2_faces();
  CHECK(a2.size() == 13);
  const auto r = hyperplane_effdim(a2, q);
  CHECK(r.value == 4);
  CHECK(r.witness.check()->is_effective);
  CHECK(lrb_lower_bound(face_semigroup(a2)).value == 4);
  CHECK(hyperplane_effdim(a2, make_field(3)).value == 4);
  try {
    hyperplane_effdim(parse_faces("00\n+0\n0+\n"), q);
    FAIL("expected NotClosed");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotClosed);
  }
  CHECK(parse_faces("# header\n0 0\n+-  # comment\n").size() == 2);
}

TEST_CASE("free LRB effective dimension") {
  const RationalField q;
  CHECK(free_lrb_effdim(1, q).value == 2);
  const auto r2 = free_lrb_effdim(2, q);
  CHECK(r2.value == 4);
  CHECK(r2.witness.semigroup().size() == 5);
  CHECK(free_lrb_effdim(3, q).value == 7);
  CHECK(free_lrb_effdim(3, make_field(2)).value == 7);
  for (int n = 1; n <= 4; ++n) {
    const auto f = free_lrb(n);
    std::set<std::string> images;
    for (Elem a = 0; a < f.table.size(); ++a) {
      images.insert(free_lrb_embedding(n, f.words[a]).str());
      for (Elem b = 0; b < f.table.size(); ++b)
        CHECK(free_lrb_embedding(n, f.words[f.table(a, b)]) ==
              free_lrb_embedding(n, f.words[a]) * free_lrb_embedding(n, f.words[b]));
    }
    CHECK(images.size() == f.table.size());
  }
}

TEST_CASE("rectangular bands") {
  const RationalField q;
  CHECK(rectangular_band_effdim(2, 2, q).value == 3);
  CHECK(rectangular_band_effdim(1, 3, make_field(5)).value == 2);
  CHECK(rectangular_band_effdim(3, 1, q).value == 2);
  CHECK(rectangular_band_effdim(1, 1, q).value == 0);
  CHECK(rectangular_band_effdim(3, 3, make_field(3)).value == 3);
  try {
    rectangular_band_effdim(3, 3, make_field(2));
    FAIL("expected FieldTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::FieldTooSmall);
  }
  CHECK(find_isomorphism(rectangular_band(2, 3), oracle::rectangular(2, 3)).has_value());
  const auto r = rectangular_band_effdim(3, 4, q);
  for (Elem a = 0; a < r.witness.semigroup().size(); ++a) {
    const auto& m = r.witness.image(a);
    CHECK(rank<Rational>(m) == 1);
    CHECK(Matrix<Rational>(m * m) == m);
  }
}

TEST_CASE("no effective 2-dimensional representation of R_{2,2}") {
  CHECK(count_rect22_2dim(2) == 0);
  CHECK(count_rect22_2dim(3) == 0);
}
