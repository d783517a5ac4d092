#include <catch_amalgamated.hpp>

#include <random>

#include "effdim/linalg.hpp"

using namespace effdim;

TEST_CASE("rationals stay in lowest terms") {
  Rational a(6, -4);
  CHECK(a.str() == "-3/2");
  CHECK((a + Rational(3, 2)).is_zero());
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("x"), Error);
}

TEST_CASE("make_field picks prime and extension fields") {
  auto f7 = make_field(7);
  CHECK(f7.size() == 7u);
  CHECK(f7.spec().str() == "Fp:7");

  auto f4 = make_field(2, 2);
  CHECK(f4.gf().modulus() == std::vector<std::uint32_t>{1, 1, 1});
  auto f9 = make_field(3, 2);
  CHECK(f9.gf().modulus() == std::vector<std::uint32_t>{1, 0, 1});

  try {
    make_field(6);
    FAIL("expected NotPrime");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotPrime);
  }
  try {
    make_field(2, 2, {1, 0, 1});  // x^2 + 1 = (x + 1)^2 over F_2
    FAIL("expected ReduciblePolynomial");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ReduciblePolynomial);
  }
}

TEST_CASE("irreducibility agrees with a root count for cubics") {
  // A cubic over F_p is irreducible exactly when it has no root.
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b)
        for (std::uint32_t c = 0; c < p; ++c) {
          bool root = false;
          for (std::uint32_t x = 0; x < p; ++x) root = root || (x * x * x + a * x * x + b * x + c) % p == 0;
          CHECK(is_irreducible(p, {c, b, a, 1}) == !root);
        }
  }
}

TEMPLATE_TEST_CASE_SIG("field axioms hold on random triples", "", ((std::uint32_t P, std::uint32_t K), P, K),
                       (2, 1), (5, 1), (2, 2), (3, 2), (2, 3), (2, 4), (97, 1)) {
  auto f = make_field(P, K);
  std::mt19937_64 rng(P * 100 + K);
  std::uniform_int_distribution<std::uint64_t> pick(0, *f.size() - 1);
  for (int i = 0; i < 300; ++i) {
    Gf a = f.element(pick(rng)), b = f.element(pick(rng)), c = f.element(pick(rng));
    CHECK((a * b) * c == a * (b * c));
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == f.zero());
    if (!a.is_zero()) CHECK(a * a.inverse() == f.one());
  }
}

TEST_CASE("GF(4) multiplicative group is cyclic of order 3") {
  auto f = make_field(2, 2);
  Gf x = f.element(2);  // the class of x
  CHECK(x * x * x == f.one());
  CHECK(x * x != f.one());
  CHECK(x * x == x + f.one());
}

TEST_CASE("unbound literals adopt the field of the other operand") {
  auto f = make_field(5);
  Gf a = f.from_int(3);
  CHECK(a + Gf(4) == f.from_int(2));
  CHECK(Gf(7) == f.from_int(2));
  CHECK((Gf(1) * a).field() == &f.gf());
}

TEST_CASE("root_of_unity") {
  CHECK(root_of_unity(1) == std::pair<std::uint32_t, std::uint64_t>{2, 1});
  CHECK(root_of_unity(3) == std::pair<std::uint32_t, std::uint64_t>{7, 2});
  CHECK(root_of_unity(4) == std::pair<std::uint32_t, std::uint64_t>{5, 2});
  for (std::uint64_t N = 1; N <= 30; ++N) {
    auto [p, xi] = root_of_unity(N);
    CHECK(is_prime(p));
    CHECK((p - 1) % N == 0);
    std::uint64_t x = 1;
    for (std::uint64_t k = 1; k <= N; ++k) {
      x = x * xi % p;
      if (k < N) CHECK(x != 1);
    }
    CHECK(x == 1 % p);
  }
}

namespace {
Matrix<Rational> qmat(std::initializer_list<std::initializer_list<long>> rows) {
  Matrix<Rational> m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (auto& r : rows) {
    Index j = 0;
    for (long v : r) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}
}  // namespace

TEST_CASE("rank_solve examples") {
  auto f2 = make_field(2);
  auto r = rank_solve<Gf>(identity(f2, 3));
  CHECK(r.rank == 3);
  CHECK(r.kernel.cols() == 0);

  CHECK(rank<Rational>(qmat({{1, 0, 1}, {0, 1, 1}, {1, 1, 1}})) == 3);
  // Its determinant is -1, so the rank is full over F_2 as well.
  Matrix<Gf> m2(3, 3);
  int vals[3][3] = {{1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m2(i, j) = f2.from_int(vals[i][j]);
  CHECK(rank<Gf>(m2) == 3);

  auto ones = rank_solve<Rational>(qmat({{1, 1}, {1, 1}}));
  CHECK(ones.rank == 1);
  REQUIRE(ones.kernel.cols() == 1);
  CHECK(ones.kernel(0, 0) == -ones.kernel(1, 0));

  Matrix<Rational> rhs = qmat({{1}, {2}});
  CHECK_THROWS_AS(rank_solve<Rational>(qmat({{1, 1}, {1, 1}}), &rhs), Error);
  Matrix<Rational> good = qmat({{3}, {3}});
  auto sol = rank_solve<Rational>(qmat({{1, 1}, {1, 1}}), &good);
  REQUIRE(sol.solution);
  CHECK(qmat({{1, 1}, {1, 1}}) * *sol.solution == good);
}

TEST_CASE("rank_solve kernel property on random matrices") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-3, 3);
  auto f5 = make_field(5);
  for (int t = 0; t < 40; ++t) {
    Index r = 1 + t % 5, c = 1 + (t * 7) % 6;
    Matrix<Rational> m(r, c);
    Matrix<Gf> g(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) {
        long v = d(rng) * (d(rng) > 0);
        m(i, j) = Rational(v);
        g(i, j) = f5.from_int(v);
      }
    auto res = rank_solve<Rational>(m);
    CHECK(res.rank + res.kernel.cols() == c);
    Matrix<Rational> mk = m * res.kernel;
    for (Index i = 0; i < mk.size(); ++i) CHECK(mk(i).is_zero());
    auto rg = rank_solve<Gf>(g);
    CHECK(rg.rank + rg.kernel.cols() == c);
    Matrix<Gf> prod = g * rg.kernel;
    for (Index i = 0; i < prod.size(); ++i) CHECK(prod(i).is_zero());
  }
}

TEST_CASE("0/1 rank over Q dominates rank over F_p") {
  std::mt19937_64 rng(11);
  std::bernoulli_distribution coin(0.5);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto f = make_field(p);
    for (int t = 0; t < 50; ++t) {
      Index n = 2 + t % 5;
      Matrix<Rational> m(n, n);
      Matrix<Gf> g(n, n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
          int v = coin(rng);
          m(i, j) = Rational(v);
          g(i, j) = f.from_int(v);
        }
      CHECK(rank<Rational>(m) >= rank<Gf>(g));
    }
  }
}

namespace {
Matrix<BigInt> zmat(std::initializer_list<std::initializer_list<long>> rows) {
  Matrix<BigInt> m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (auto& r : rows) {
    Index j = 0;
    for (long v : r) m(i, j++) = BigInt(v);
    ++i;
  }
  return m;
}
BigInt det2(const Matrix<BigInt>& m);
BigInt det(Matrix<BigInt> m) {
  // Cofactor expansion; fine for the tiny matrices used here.
  const Index n = m.rows();
  if (n == 1) return m(0, 0);
  if (n == 2) return det2(m);
  BigInt total(0);
  for (Index j = 0; j < n; ++j) {
    Matrix<BigInt> minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r)
      for (Index c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    BigInt term = m(0, j) * det(minor);
    total = (j % 2 == 0) ? total + term : total - term;
  }
  return total;
}
BigInt det2(const Matrix<BigInt>& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }
}  // namespace

TEST_CASE("smith_form examples") {
  CHECK(smith_form(zmat({{2, 0}, {0, 4}})) == std::vector<BigInt>{2, 4});
  CHECK(smith_form(zmat({{2, 0}, {0, 3}})) == std::vector<BigInt>{6});
  CHECK(smith_form(zmat({{0}})) == std::vector<BigInt>{0});
}

TEST_CASE("smith_form divisibility chain and determinant") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int t = 0; t < 60; ++t) {
    Index n = 1 + t % 4;
    Matrix<BigInt> m(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) m(i, j) = BigInt(d(rng));
    BigInt dt = det(m).abs();
    auto s = smith_decomposition(m);
    CHECK(s.U * m * s.V == s.D);
    auto f = smith_form(m);
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
      if (!f[i + 1].is_zero()) CHECK(floor_mod(f[i + 1], f[i]).is_zero());
    if (!dt.is_zero()) {
      BigInt prod(1);
      for (auto& x : f) prod *= x;
      CHECK(prod == dt);
    }
  }
}

TEST_CASE("matrix JSON round trip") {
  auto f = make_field(3, 2);
  Matrix<Gf> m(2, 2);
  m << f.element(0), f.element(5), f.element(8), f.element(1);
  auto j = encode_matrix(f, m);
  CHECK(decode_matrix(f, j) == m);
  CHECK(j.dump() == encode_matrix(f, decode_matrix(f, j)).dump());
  Matrix<Rational> q(1, 2);
  q << Rational(1, 3), Rational(-2);
  RationalField Q;
  CHECK(encode_matrix(Q, q)["entries"][0][0] == "1/3");
  CHECK(decode_matrix(Q, encode_matrix(Q, q)) == q);
}
