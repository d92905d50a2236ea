#include <algorithm>

#include <gtest/gtest.h>

#include "qdyn/cartan.hpp"
#include "qdyn/error.hpp"

using namespace qdyn;

namespace {

Weight w(std::initializer_list<int> c) {
  std::vector<Rational> v;
  for (int x : c) v.emplace_back(x);
  return Weight(v);
}

}  // namespace

TEST(Cartan, MatricesMatchTables) {
  EXPECT_EQ(build_root_system(AlgebraId::A1).cartan, (std::vector<std::vector<int>>{{2}}));
  EXPECT_EQ(build_root_system(AlgebraId::A2).cartan, (std::vector<std::vector<int>>{{2, -1}, {-1, 2}}));
  EXPECT_EQ(build_root_system(AlgebraId::A3).cartan,
            (std::vector<std::vector<int>>{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}));
  // alpha1 long
  EXPECT_EQ(build_root_system(AlgebraId::B2).cartan, (std::vector<std::vector<int>>{{2, -1}, {-2, 2}}));
  EXPECT_EQ(build_root_system(AlgebraId::OSP12).cartan, (std::vector<std::vector<int>>{{2}}));
}

TEST(Cartan, PositiveRoots) {
  EXPECT_EQ(build_root_system(AlgebraId::A1).positive_roots.size(), 1u);
  EXPECT_EQ(build_root_system(AlgebraId::A2).positive_roots.size(), 3u);
  EXPECT_EQ(build_root_system(AlgebraId::A3).positive_roots.size(), 6u);
  const RootSystem b2 = build_root_system(AlgebraId::B2);
  ASSERT_EQ(b2.positive_roots.size(), 4u);
  EXPECT_TRUE(b2.is_root(w({1, 2})));
  EXPECT_TRUE(b2.is_root(w({1, 1})));
  EXPECT_FALSE(b2.is_root(w({2, 1})));
  const RootSystem osp = build_root_system(AlgebraId::OSP12);
  ASSERT_EQ(osp.positive_roots.size(), 2u);
  EXPECT_EQ(osp.parity_of(w({1})), 1);
  EXPECT_EQ(osp.parity_of(w({2})), 0);
  EXPECT_TRUE(osp.is_doubled_odd(w({2})));
  EXPECT_FALSE(osp.is_doubled_odd(w({1})));
}

TEST(Cartan, WeylVectorPairsToHalfLengths) {
  for (AlgebraId id : {AlgebraId::A1, AlgebraId::A2, AlgebraId::A3, AlgebraId::B2}) {
    const RootSystem rs = build_root_system(id);
    for (std::size_t i = 0; i < rs.rank; ++i)
      EXPECT_EQ(pairing(rs.weyl_vector(), rs.simple_root(i), rs), rs.sym[i][i] / Rational(2)) << to_string(id);
  }
}

TEST(Cartan, ShippedOrderingsAreNormal) {
  for (AlgebraId id : {AlgebraId::A1, AlgebraId::A2, AlgebraId::A3, AlgebraId::B2, AlgebraId::OSP12}) {
    const RootSystem rs = build_root_system(id);
    ASSERT_FALSE(rs.orderings.empty());
    for (const auto& o : rs.orderings) EXPECT_TRUE(validate_normal_ordering(o, rs)) << to_string(id);
  }
  const RootSystem a2 = build_root_system(AlgebraId::A2);
  ASSERT_EQ(a2.orderings.size(), 2u);
  EXPECT_EQ(a2.orderings[0].sequence, (std::vector<Weight>{w({1, 0}), w({1, 1}), w({0, 1})}));
  EXPECT_EQ(a2.orderings[1].sequence, (std::vector<Weight>{w({0, 1}), w({1, 1}), w({1, 0})}));
}

TEST(Cartan, RejectsNonConvexOrdering) {
  const RootSystem a2 = build_root_system(AlgebraId::A2);
  EXPECT_FALSE(validate_normal_ordering(NormalOrdering{{w({1, 0}), w({0, 1}), w({1, 1})}}, a2));
  EXPECT_THROW(validate_normal_ordering(NormalOrdering{{w({1, 0}), w({1, 0}), w({1, 1})}}, a2), Error);
  EXPECT_THROW(validate_normal_ordering(NormalOrdering{{w({1, 0})}}, a2), Error);
  const RootSystem osp = build_root_system(AlgebraId::OSP12);
  EXPECT_FALSE(validate_normal_ordering(NormalOrdering{{w({2}), w({1})}}, osp));
}

TEST(Cartan, DecompositionPairs) {
  const RootSystem a2 = build_root_system(AlgebraId::A2);
  EXPECT_EQ(decomposition_pair(w({1, 1}), a2.orderings[0], a2), std::make_pair(w({1, 0}), w({0, 1})));
  EXPECT_EQ(decomposition_pair(w({1, 1}), a2.orderings[1], a2), std::make_pair(w({0, 1}), w({1, 0})));
  try {
    decomposition_pair(w({1, 0}), a2.orderings[0], a2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotDecomposable);
  }
  // theta of A3 has two decompositions; the tie rule picks the shortest interval
  const RootSystem a3 = build_root_system(AlgebraId::A3);
  const auto& seq = a3.orderings[0].sequence;
  const auto [b, c] = decomposition_pair(w({1, 1, 1}), a3.orderings[0], a3);
  EXPECT_EQ(b + c, w({1, 1, 1}));
  const auto pos = [&](const Weight& x) { return std::find(seq.begin(), seq.end(), x) - seq.begin(); };
  EXPECT_LT(pos(b), pos(w({1, 1, 1})));
  EXPECT_GT(pos(c), pos(w({1, 1, 1})));
  // the odd root of osp(1|2) pairs with itself
  const RootSystem osp = build_root_system(AlgebraId::OSP12);
  EXPECT_EQ(decomposition_pair(w({2}), osp.orderings[0], osp), std::make_pair(w({1}), w({1})));
}

TEST(Cartan, ParseAlgebra) {
  EXPECT_EQ(parse_algebra("sl2"), AlgebraId::A1);
  EXPECT_EQ(parse_algebra("A2"), AlgebraId::A2);
  EXPECT_EQ(parse_algebra("sl4"), AlgebraId::A3);
  EXPECT_EQ(parse_algebra("so5"), AlgebraId::B2);
  EXPECT_EQ(parse_algebra("osp(1|2)"), AlgebraId::OSP12);
  EXPECT_EQ(parse_algebra("OSP12"), AlgebraId::OSP12);
  try {
    parse_algebra("G2");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownAlgebra);
  }
}

TEST(Cartan, WeightArithmetic) {
  const Weight a = w({1, 2}), b = w({0, 1});
  EXPECT_EQ(a - b, w({1, 1}));
  EXPECT_EQ(-(a - b) + a, b);
  EXPECT_EQ(Rational(1, 2) * a, Weight({Rational(1, 2), Rational(1)}));
  EXPECT_EQ(a.height(), Rational(3));
  EXPECT_TRUE(Weight::zero(3).is_zero());
  EXPECT_FALSE(w({1, -1}).is_nonnegative());
  EXPECT_THROW(pairing(w({1}), w({1, 0}), build_root_system(AlgebraId::A2)), Error);
}
