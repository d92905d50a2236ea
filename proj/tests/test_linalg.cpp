#include <gtest/gtest.h>

#include "qdyn/error.hpp"
#include "qdyn/linalg.hpp"

using namespace qdyn;

namespace {

Space space(std::vector<int> parities) {
  Space s;
  for (std::size_t i = 0; i < parities.size(); ++i) s.weights.push_back(Weight({Rational(static_cast<int>(i))}));
  s.parities = std::move(parities);
  return s;
}

OperatorMatrix basis(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  OperatorMatrix m = OperatorMatrix::Zero(n, n);
  m(i, j) = 1;
  return m;
}

}  // namespace

TEST(Linalg, KronLayout) {
  OperatorMatrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  const OperatorMatrix k = kron(a, b);
  EXPECT_EQ(k(0, 1), Complex(1));
  EXPECT_EQ(k(1, 2), Complex(2));
  EXPECT_EQ(k(3, 2), Complex(4));
  EXPECT_EQ(k(2, 2), Complex(0));
}

TEST(Linalg, KoszulSign) {
  // (f (x) f)(v (x) w) with odd v: one sign from moving f past v
  const Space odd = space({1, 0});
  const OperatorMatrix x = basis(2, 1, 0);
  const OperatorMatrix g = graded_kron(OperatorMatrix::Identity(2, 2), odd, x, 1);
  EXPECT_EQ(g(1, 0), Complex(-1));  // |0>(x)|0> odd first factor
  EXPECT_EQ(g(3, 2), Complex(1));   // |1>(x)|0> even first factor
}

TEST(Linalg, GradedFlip) {
  const Space a = space({0, 1}), b = space({1, 0, 1});
  const OperatorMatrix p = graded_flip(a, b);
  const OperatorMatrix back = graded_flip(b, a);
  EXPECT_LT(max_abs(back * p - OperatorMatrix::Identity(6, 6)), 1e-15);
  // odd (x) odd picks up -1
  EXPECT_EQ(p(0 * 2 + 1, 1 * 3 + 0), Complex(-1));
  EXPECT_EQ(p(1 * 2 + 1, 1 * 3 + 1), Complex(1));
}

TEST(Linalg, GradedFlipConjugatesKron) {
  const Space a = space({0, 1}), b = space({0, 1});
  OperatorMatrix x = OperatorMatrix::Random(2, 2), y = OperatorMatrix::Random(2, 2);
  // even operators: P (x (x) y) P^{-1} = y (x) x
  x(0, 1) = x(1, 0) = 0;
  y(0, 1) = y(1, 0) = 0;
  const OperatorMatrix p = graded_flip(a, b);
  EXPECT_LT(relative_residual(p * kron(x, y) * p.transpose(), kron(y, x)), 1e-15);
}

TEST(Linalg, EmbedPair) {
  const Triple t{space({0, 0}), space({0, 0, 0}), space({0, 0})};
  const OperatorMatrix x = OperatorMatrix::Random(4, 4);
  const OperatorMatrix e13 = embed_pair(x, 0, 2, t);
  ASSERT_EQ(e13.rows(), 12);
  // slot 2 untouched: indices (i, j, k) -> (i*3 + j)*2 + k
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int i2 = 0; i2 < 2; ++i2)
        for (int k2 = 0; k2 < 2; ++k2)
          EXPECT_EQ(e13((i * 3 + 1) * 2 + k, (i2 * 3 + 1) * 2 + k2), x(i * 2 + k, i2 * 2 + k2));
  EXPECT_LT(relative_residual(embed_pair(x, 0, 1, Triple{space({0, 0}), space({0, 0}), space({0, 0, 0})}),
                              kron(x, OperatorMatrix::Identity(3, 3))),
            1e-15);
}

TEST(Linalg, Residual) {
  OperatorMatrix a = OperatorMatrix::Identity(2, 2);
  OperatorMatrix b = a * 1e3;
  EXPECT_NEAR(relative_residual(a, b), 999.0 / 1000.0, 1e-15);
  EXPECT_EQ(relative_residual(a * 1e-3, a * 0.0), 1e-3);
  try {
    relative_residual(a, OperatorMatrix::Identity(3, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(Linalg, TensorSpace) {
  const Space s = tensor_space(space({0, 1}), space({1, 1}));
  ASSERT_EQ(s.dim(), 4u);
  EXPECT_EQ(s.parities, (std::vector<int>{1, 1, 0, 0}));
  EXPECT_EQ(s.weights[3], Weight({Rational(2)}));
}
