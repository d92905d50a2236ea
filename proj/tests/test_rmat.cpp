#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qdyn/error.hpp"
#include "qdyn/rmat.hpp"

using namespace qdyn;

namespace {

const double kQs[] = {0.3, 0.5, 0.8};

OperatorMatrix random_nilpotent(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  OperatorMatrix z = OperatorMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) z(i, j) = Complex(u(rng), u(rng));
  return z;
}

}  // namespace

TEST(Rmat, QIntegers) {
  EXPECT_DOUBLE_EQ(q_int(3, 0.5), 1 + 0.5 + 0.25);
  EXPECT_DOUBLE_EQ(q_int(0, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(q_int(4, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(q_int(2, -0.25), 0.75);
  EXPECT_DOUBLE_EQ(q_factorial(3, 0.5), 1 * 1.5 * 1.75);
  EXPECT_DOUBLE_EQ(q_factorial(0, 0.5), 1.0);
  try {
    q_factorial(-1, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NegativeN);
  }
}

TEST(Rmat, QExpSquareZero) {
  OperatorMatrix z = OperatorMatrix::Zero(2, 2);
  z(0, 1) = 3.0;
  EXPECT_LT(max_abs(q_exp(z, 0.25) - (OperatorMatrix::Identity(2, 2) + z)), 1e-15);
}

TEST(Rmat, QExpInverseLaw) {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 20; ++trial) {
    const OperatorMatrix z = random_nilpotent(rng, 5);
    for (double b : {0.09, 0.25, -0.64, 2.0}) {
      const OperatorMatrix p = q_exp(z, b) * q_exp(-z, 1.0 / b);
      EXPECT_LT(max_abs(p - OperatorMatrix::Identity(5, 5)), 1e-12) << "base " << b;
    }
  }
}

TEST(Rmat, QExpErrors) {
  OperatorMatrix z = OperatorMatrix::Identity(2, 2);
  try {
    q_exp(z, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotNilpotent);
  }
  OperatorMatrix n = OperatorMatrix::Zero(3, 3);
  n(0, 1) = n(1, 2) = 1;
  try {
    q_exp(n, -1.0);  // [2]_{-1} = 0
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateBase);
  }
}

TEST(Rmat, SpinHalfRMatrix) {
  for (double q : kQs) {
    const Representation h = spin_rep_sl2(Rational(1, 2), q);
    const double s = std::sqrt(q);
    OperatorMatrix want = OperatorMatrix::Zero(4, 4);
    want(0, 0) = want(3, 3) = s;
    want(1, 1) = want(2, 2) = 1 / s;
    want(1, 2) = (q - 1 / q) / s;
    EXPECT_LT(relative_residual(full_r(h, h, h.rs->orderings[0]), want), 1e-15);
  }
}

TEST(Rmat, HeckeRelationOnVectorReps) {
  // P R on V (x) V has eigenvalues q^{(n-1)/n} and -q^{-(n+1)/n}
  for (double q : kQs)
    for (int n = 2; n <= 4; ++n) {
      const Representation v = vector_rep_sln(n, q);
      const OperatorMatrix rc = graded_flip(v.space(), v.space()) * full_r(v, v, v.rs->orderings[0]);
      const OperatorMatrix id = OperatorMatrix::Identity(n * n, n * n);
      const double a = std::pow(q, (n - 1.0) / n), b = std::pow(q, -(n + 1.0) / n);
      EXPECT_LT(max_abs((rc - a * id) * (rc + b * id)), 1e-13) << "n=" << n << " q=" << q;
    }
}

TEST(Rmat, RhatInverse) {
  for (AlgebraId id : {AlgebraId::A1, AlgebraId::A2, AlgebraId::A3, AlgebraId::B2, AlgebraId::OSP12}) {
    const Representation p = probe_rep(id, 0.3);
    const auto& ord = p.rs->orderings[0];
    const Representation t = tensor_rep(p, p);
    const OperatorMatrix r = rhat(t, p, ord);
    EXPECT_LT(max_abs(r * rhat_inverse(t, p, ord) - OperatorMatrix::Identity(r.rows(), r.rows())), 1e-12)
        << to_string(id);
  }
}

TEST(Rmat, AlphaConstants) {
  // rank one: [e,f] = (K - K^{-1}) / (q - 1/q) exactly
  const Weight a({Rational(1)});
  EXPECT_NEAR(std::abs(a_alpha(AlgebraId::A1, build_root_system(AlgebraId::A1).orderings[0], 0.5).at(a) - 1.0), 0,
              1e-14);
  for (AlgebraId id : {AlgebraId::A2, AlgebraId::A3, AlgebraId::B2, AlgebraId::OSP12}) {
    const RootSystem rs = build_root_system(id);
    for (const auto& ord : rs.orderings) {
      const AlphaConstants c = a_alpha(id, ord, 0.5);
      for (const auto& root : rs.positive_roots) {
        if (rs.is_doubled_odd(root)) continue;
        EXPECT_GT(std::abs(c.at(root)), 1e-3) << to_string(id) << " " << root.to_string();
      }
      for (std::size_t i = 0; i < rs.rank; ++i) EXPECT_NEAR(std::abs(c.at(rs.simple_root(i)) - 1.0), 0, 1e-14);
    }
  }
}

TEST(Rmat, StaticChecks) {
  for (double q : kQs) {
    std::vector<std::array<Representation, 3>> cases = {
        {spin_rep_sl2(Rational(1, 2), q), spin_rep_sl2(Rational(1, 2), q), spin_rep_sl2(Rational(1, 2), q)},
        {spin_rep_sl2(Rational(1, 2), q), spin_rep_sl2(Rational(1), q), spin_rep_sl2(Rational(3, 2), q)},
        {vector_rep_sln(3, q), vector_rep_sln(3, q), vector_rep_sln(3, q)},
        {vector_rep_sln(4, q), vector_rep_sln(4, q), vector_rep_sln(4, q)},
        {osp12_rep(q), osp12_rep(q), osp12_rep(q)},
        {spinor_rep_b2(q), spinor_rep_b2(q), spinor_rep_b2(q)},
    };
    for (const auto& [a, b, c] : cases) {
      const auto& os = a.rs->orderings;
      const StaticReport r = static_checks(a, b, c, os[0], os.back(), 1e-10);
      EXPECT_TRUE(r.pass) << to_string(a.rs->algebra_id) << " q=" << q << " ybe=" << r.ybe_residual
                          << " qt=" << r.quasitri_left << "," << r.quasitri_right << " ord=" << r.ordering_independence;
    }
  }
}

TEST(Rmat, OrderingIndependenceOnTensorFactors) {
  for (AlgebraId id : {AlgebraId::A2, AlgebraId::A3, AlgebraId::B2}) {
    const Representation p = probe_rep(id, 0.5);
    const Representation t = tensor_rep(p, p);
    ASSERT_GE(p.rs->orderings.size(), 2u);
    for (const auto& ord : p.rs->orderings)
      EXPECT_LT(relative_residual(full_r(t, t, p.rs->orderings[0]), full_r(t, t, ord)), 1e-12) << to_string(id);
  }
}

TEST(Rmat, InvalidInputs) {
  const Representation v = vector_rep_sln(3, 0.5);
  const Representation h = spin_rep_sl2(Rational(1, 2), 0.5);
  try {
    full_r(v, h, v.rs->orderings[0]);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AlgebraMismatch);
  }
  const Weight a1({Rational(1), Rational(0)}), a2({Rational(0), Rational(1)}), th({Rational(1), Rational(1)});
  try {
    rhat(v, v, NormalOrdering{{a1, a2, th}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidOrdering);
  }
}
