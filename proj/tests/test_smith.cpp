#include <doctest.h>

#include <random>

#include "gerbes/smith.hpp"

using namespace gerbes;

namespace {

IMatrix random_matrix(std::mt19937& rng, int r, int c, int lo, int hi, double density) {
  std::uniform_int_distribution<int> val(lo, hi);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  IMatrix m = IMatrix::Zero(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (coin(rng) < density) m(i, j) = val(rng);
  return m;
}

std::vector<Triplet> to_triplets(const IMatrix& m) {
  std::vector<Triplet> t;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) t.push_back({i, j, m(i, j)});
  return t;
}

// brute-force invariant factors of Z^rows / (im A + m Z^rows) by enumerating
// the quotient group directly (tiny m and dims only)
std::vector<Int> brute_cokernel(const IMatrix& A, Int m) {
  const int rows = static_cast<int>(A.rows());
  Int total = 1;
  for (int i = 0; i < rows; ++i) total *= m;
  // span of columns mod m
  std::vector<char> in_span(total, 0);
  std::vector<std::vector<Int>> frontier{std::vector<Int>(rows, 0)};
  auto enc = [&](const std::vector<Int>& v) {
    Int e = 0;
    for (int i = 0; i < rows; ++i) e = e * m + v[i];
    return e;
  };
  in_span[0] = 1;
  while (!frontier.empty()) {
    auto v = frontier.back();
    frontier.pop_back();
    for (int j = 0; j < A.cols(); ++j) {
      auto w = v;
      for (int i = 0; i < rows; ++i) w[i] = ((w[i] + A(i, j)) % m + m) % m;
      if (!in_span[enc(w)]) {
        in_span[enc(w)] = 1;
        frontier.push_back(w);
      }
    }
  }
  Int span_size = 0;
  for (char c : in_span) span_size += c;
  return {total / span_size};  // only the order, enough for cross-checking
}

}  // namespace

TEST_CASE("dense smith on known matrices") {
  {
    IMatrix a(2, 2);
    a << 2, 4, 4, 8;
    DenseSmith s = smith_dense(a);
    CHECK(s.rank == 1);
    CHECK(s.diagonal == std::vector<Int>{2});
    CHECK((s.P * a * s.Q) == s.D);
  }
  {
    IMatrix a(3, 3);
    a << 2, 0, 0, 0, 3, 0, 0, 0, 4;
    DenseSmith s = smith_dense(a);
    CHECK(s.diagonal == std::vector<Int>{1, 2, 12});
    CHECK((s.P * a * s.Q) == s.D);
    CHECK((s.P * s.Pinv).isIdentity());
    CHECK((s.Q * s.Qinv).isIdentity());
  }
}

TEST_CASE("dense smith transforms on random integer matrices") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    int r = 1 + static_cast<int>(rng() % 6), c = 1 + static_cast<int>(rng() % 6);
    IMatrix a = random_matrix(rng, r, c, -4, 4, 0.7);
    DenseSmith s = smith_dense(a);
    CHECK((s.P * a * s.Q) == s.D);
    CHECK((s.P * s.Pinv).isIdentity());
    CHECK((s.Q * s.Qinv).isIdentity());
    for (std::size_t i = 1; i < s.diagonal.size(); ++i)
      CHECK(s.diagonal[i] % s.diagonal[i - 1] == 0);
    for (int i = 0; i < static_cast<int>(s.D.rows()); ++i)
      for (int j = 0; j < static_cast<int>(s.D.cols()); ++j)
        if (i != j) CHECK(s.D(i, j) == 0);
  }
}

TEST_CASE("sparse modular solve round trips") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 80; ++trial) {
    int r = 2 + static_cast<int>(rng() % 8), c = 2 + static_cast<int>(rng() % 8);
    Int m = 2 + static_cast<Int>(rng() % 30);
    IMatrix a = random_matrix(rng, r, c, -3, 3, 0.5);
    SparseSmith engine(r, c, to_triplets(a), m);
    // solvable instance
    std::vector<Int> x0(c);
    for (auto& v : x0) v = static_cast<Int>(rng() % m);
    std::vector<Int> rhs(r, 0);
    for (int i = 0; i < r; ++i) {
      Int acc = 0;
      for (int j = 0; j < c; ++j) acc += a(i, j) * x0[j];
      rhs[i] = ((acc % m) + m) % m;
    }
    auto x = engine.solve(rhs);
    REQUIRE(x.has_value());
    for (int i = 0; i < r; ++i) {
      Int acc = 0;
      for (int j = 0; j < c; ++j) acc += a(i, j) * (*x)[j];
      CHECK(((acc - rhs[i]) % m + m) % m == 0);
    }
  }
}

TEST_CASE("sparse solve rejects unsolvable systems") {
  // x * 2 = 1 (mod 4) has no solution
  SparseSmith engine(1, 1, {{0, 0, 2}}, 4);
  CHECK_FALSE(engine.solve({1}).has_value());
  CHECK(engine.solve({2}).has_value());
  // empty column space
  SparseSmith zero(2, 1, {}, 6);
  CHECK_FALSE(zero.solve({1, 0}).has_value());
  CHECK(zero.solve({0, 0}).has_value());
}

TEST_CASE("sparse cokernel factors match a brute-force span count") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 1 + static_cast<int>(rng() % 3), c = 1 + static_cast<int>(rng() % 4);
    Int m = 2 + static_cast<Int>(rng() % 5);
    IMatrix a = random_matrix(rng, r, c, -3, 3, 0.7);
    SparseSmith engine(r, c, to_triplets(a), m);
    Int order = 1;
    for (Int f : engine.cokernel_factors()) order *= gcd64(f, m) == 0 ? m : gcd64(f, m);
    for (int i = 0; i < engine.free_rows(); ++i) order *= m;
    CHECK(order == brute_cokernel(a, m)[0]);
  }
}

TEST_CASE("cokernel generators satisfy their defining congruence") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 2 + static_cast<int>(rng() % 5), c = 2 + static_cast<int>(rng() % 5);
    Int m = 4 + static_cast<Int>(rng() % 28);
    IMatrix a = random_matrix(rng, r, c, -3, 3, 0.6);
    SparseSmith engine(r, c, to_triplets(a), m);
    for (int i = 0; i < engine.pivot_count(); ++i) {
      Int g = engine.cokernel_factor(i);
      auto y = engine.cokernel_generator(i);
      // A y must be divisible by g mod m: every row of A y = g * z + m * w
      for (int row = 0; row < r; ++row) {
        Int acc = 0;
        for (int j = 0; j < c; ++j) acc += a(row, j) * y[j];
        CHECK(((acc % gcd64(g, m)) + gcd64(g, m)) % gcd64(g, m) == 0);
      }
    }
  }
}

TEST_CASE("quotient presentation of known groups") {
  {
    IMatrix rel(2, 2);
    rel << 2, 0, 0, 4;
    auto p = quotient_presentation(2, rel);
    CHECK(p.factors == std::vector<Int>{2, 4});
  }
  {
    IMatrix rel(2, 2);
    rel << 2, 0, 0, 3;  // Z/2 + Z/3 = Z/6
    auto p = quotient_presentation(2, rel);
    CHECK(p.factors == std::vector<Int>{6});
  }
  {
    IMatrix rel(1, 1);
    rel << 1;
    auto p = quotient_presentation(1, rel);
    CHECK(p.factors.empty());
  }
}

TEST_CASE("integer kernel mod m") {
  IMatrix a(1, 2);
  a << 2, 4;
  IMatrix k = integer_kernel(a, 8);
  // solutions of 2x + 4y = 0 mod 8 form a subgroup of (Z/8)^2 of order 16
  std::vector<char> seen(64, 0);
  std::vector<std::vector<Int>> frontier{{0, 0}};
  seen[0] = 1;
  Int count = 1;
  while (!frontier.empty()) {
    auto v = frontier.back();
    frontier.pop_back();
    for (int j = 0; j < k.cols(); ++j) {
      Int x = ((v[0] + k(0, j)) % 8 + 8) % 8;
      Int y = ((v[1] + k(1, j)) % 8 + 8) % 8;
      if (!seen[x * 8 + y]) {
        seen[x * 8 + y] = 1;
        ++count;
        frontier.push_back({x, y});
      }
    }
  }
  CHECK(count == 16);
}
