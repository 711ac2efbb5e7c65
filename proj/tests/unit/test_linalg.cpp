#include <random>

#include "helpers.hpp"

namespace {

using mf::ErrorCode;
using mf::Matrix;
using mf::Subspace;
using mf::Vector;

Subspace span2(std::vector<Vector> v, std::size_t n) { return Subspace::span(n, v); }

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng() % 5) - 2;
  return m;
}

Subspace random_subspace(std::mt19937_64& rng, std::size_t n) {
  return Subspace::row_space(random_matrix(rng, rng() % (n + 1), n));
}

TEST(Rref, Examples) {
  EXPECT_EQ(mf::rref(Matrix::identity(3)), Matrix::identity(3));
  EXPECT_EQ(mf::rref(Matrix{{2, 4}}), (Matrix{{1, 2}}));
  EXPECT_EQ(mf::rref(Matrix{{1, 1}, {2, 2}}), (Matrix{{1, 1}}));
}

TEST(Rref, IdempotentAndRowSpacePreserving) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 50; ++k) {
    const Matrix m = random_matrix(rng, 1 + rng() % 5, 1 + rng() % 5);
    const Matrix r = mf::rref(m);
    EXPECT_EQ(mf::rref(r), r);
    const Subspace a = Subspace::row_space(m), b = Subspace::row_space(r);
    EXPECT_TRUE(a.contains(b));
    EXPECT_TRUE(b.contains(a));
  }
}

TEST(Kernel, Examples) {
  EXPECT_TRUE(mf::kernel(Matrix::identity(2)).is_zero());
  EXPECT_EQ(mf::kernel(Matrix{{1, 0}}), span2({{0, 1}}, 2));
  EXPECT_EQ(mf::kernel(Matrix{{1, 1}, {2, 2}}), span2({{1, -1}}, 2));
}

TEST(Kernel, RankNullity) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 50; ++k) {
    const Matrix m = random_matrix(rng, 1 + rng() % 5, 1 + rng() % 5);
    EXPECT_EQ(mf::rank(m), mf::image(m).dim());
    EXPECT_EQ(mf::rank(m), m.cols() - mf::kernel(m).dim());
    const Subspace k2 = mf::kernel(m);
    for (std::size_t r = 0; r < k2.dim(); ++r) EXPECT_TRUE(mf::Subspace(m.rows()).contains(m.apply(k2.basis().row(r))));
  }
}

TEST(Lattice, Examples) {
  const Subspace e1 = span2({{1, 0}}, 2), e2 = span2({{0, 1}}, 2);
  EXPECT_TRUE(mf::intersect(e1, e2).is_zero());
  EXPECT_TRUE(mf::sum(e1, e2).is_full());
  const Subspace s = span2({{1, 1, 0}, {0, 0, 1}}, 3);
  const Subspace t = span2({{1, 0, 0}, {0, 1, 1}}, 3);
  EXPECT_EQ(mf::intersect(s, t), span2({{1, 1, 1}}, 3));
  EXPECT_MF_ERROR(mf::sum(e1, span2({{1, 0, 0}}, 3)), ErrorCode::DimensionMismatch);
}

TEST(Lattice, DimensionFormulaAndAnnihilators) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + rng() % 6;
    const Subspace s = random_subspace(rng, n), t = random_subspace(rng, n);
    EXPECT_EQ(mf::sum(s, t).dim() + mf::intersect(s, t).dim(), s.dim() + t.dim());
    EXPECT_EQ(mf::annihilator(mf::sum(s, t)), mf::intersect(mf::annihilator(s), mf::annihilator(t)));
    EXPECT_EQ(mf::annihilator(mf::annihilator(s)), s);
  }
}

TEST(Annihilator, Examples) {
  EXPECT_TRUE(mf::annihilator(Subspace(2)).is_full());
  EXPECT_EQ(mf::annihilator(span2({{1, 0}}, 2)), span2({{0, 1}}, 2));
  EXPECT_EQ(mf::annihilator(span2({{1, 2}}, 2)), span2({{2, -1}}, 2));
}

TEST(Quotient, Examples) {
  EXPECT_EQ(mf::quotient_map(2, span2({{0, 1}}, 2)), (Matrix{{1, 0}}));
  EXPECT_EQ(mf::quotient_map(2, Subspace(2)), Matrix::identity(2));
  const Subspace diag = span2({{1, 1}}, 2);
  const Matrix q = mf::quotient_map(2, diag);
  EXPECT_EQ(q.rows(), 1u);
  EXPECT_EQ(mf::kernel(q), diag);
}

TEST(Quotient, KernelRoundTripAndSection) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 1 + rng() % 6;
    const Subspace s = random_subspace(rng, n);
    const Matrix q = mf::quotient_map(n, s);
    EXPECT_EQ(q.rows(), n - s.dim());
    EXPECT_TRUE(mf::is_epimorphism(q));
    EXPECT_EQ(mf::kernel(q), s);
    if (s.dim() > 0) EXPECT_TRUE((q * s.basis().transpose()).is_zero());
    EXPECT_EQ(q * mf::quotient_section(n, s), Matrix::identity(n - s.dim()));
  }
}

TEST(ExtendBasis, Examples) {
  EXPECT_TRUE(mf::extend_basis(span2({{1, 0}, {0, 1}}, 2), span2({{1, 1}}, 2)).empty());
  EXPECT_EQ(mf::extend_basis(Subspace(2), Subspace::full(2)), (std::vector<Vector>{{1, 0}, {0, 1}}));
  const auto b = mf::extend_basis(span2({{1, 0}}, 2), span2({{1, 1}}, 2));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(Subspace::span(2, b), span2({{1, 1}}, 2));
}

TEST(ExtendBasis, SpansDirectComplement) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 80; ++k) {
    const std::size_t n = 1 + rng() % 6;
    const Subspace s = random_subspace(rng, n), t = random_subspace(rng, n);
    const auto b = mf::extend_basis(s, t);
    const Subspace meet = mf::intersect(s, t);
    EXPECT_EQ(b.size() + meet.dim(), t.dim());
    const Subspace span_b = Subspace::span(n, b);
    EXPECT_EQ(span_b.dim(), b.size());
    EXPECT_TRUE(mf::intersect(span_b, meet).is_zero());
    EXPECT_EQ(mf::sum(span_b, meet), t);
    EXPECT_EQ(b.empty(), s.contains(t));
  }
}

TEST(Epimorphism, Examples) {
  EXPECT_TRUE(mf::is_epimorphism(Matrix{{1, 0}}));
  EXPECT_FALSE(mf::is_epimorphism(Matrix{{1}, {0}}));
  EXPECT_TRUE(mf::is_isomorphism(Matrix{{1, 1}, {0, 1}}));
  EXPECT_FALSE(mf::is_isomorphism(Matrix{{1, 0}}));
}

TEST(Inverse, RoundTrip) {
  const Matrix m{{2, 1}, {1, 1}};
  const auto inv = mf::inverse(m);
  ASSERT_TRUE(inv);
  EXPECT_EQ(m * *inv, Matrix::identity(2));
  EXPECT_FALSE(mf::inverse(Matrix{{1, 1}, {1, 1}}));
  const Matrix e{{1, 2, 3}, {0, 1, 1}};
  EXPECT_EQ(e * mf::right_inverse(e), Matrix::identity(2));
  EXPECT_MF_ERROR(mf::right_inverse(Matrix{{1, 1}, {2, 2}}), ErrorCode::NotEpimorphism);
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(mf::format_rational(Q("4/6")), "2/3");
  EXPECT_EQ(mf::format_rational(Q("-3")), "-3");
  EXPECT_EQ(mf::format_rational(Q("+5/1")), "5");
  EXPECT_MF_ERROR(Q("1/0"), ErrorCode::SchemaError);
  EXPECT_MF_ERROR(Q("0.5"), ErrorCode::SchemaError);
  EXPECT_MF_ERROR(Q(""), ErrorCode::SchemaError);
}

TEST(Matrix, ZeroShapes) {
  const Matrix z(0, 3);
  EXPECT_EQ(mf::rank(z), 0u);
  EXPECT_TRUE(mf::kernel(z).is_full());
  EXPECT_TRUE(mf::is_epimorphism(z));
  EXPECT_EQ((Matrix(2, 0) * Matrix(0, 3)), Matrix(2, 3));
}

}  // namespace
