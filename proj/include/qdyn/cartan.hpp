#ifndef QDYN_CARTAN_HPP
#define QDYN_CARTAN_HPP

// Root systems, weights and normal orderings for the supported algebras
// A1, A2, A3, B2 and the superalgebra osp(1|2).

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace qdyn {

using Rational = boost::rational<std::int64_t>;

/// Weight eta = sum_i c_i alpha_i, stored by its coordinates in the simple-root basis.
class Weight {
public:
  Weight() = default;
  explicit Weight(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  static Weight zero(std::size_t rank) { return Weight(std::vector<Rational>(rank, Rational(0))); }
  static Weight simple(std::size_t rank, std::size_t i);

  std::size_t rank() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  /// True iff every coordinate is >= 0 (eta lies in the positive cone of the root lattice).
  bool is_nonnegative() const;
  Rational height() const;

  Weight& operator+=(const Weight& o);
  Weight& operator-=(const Weight& o);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(const Rational& s, Weight w);
  Weight operator-() const;
  friend bool operator==(const Weight& a, const Weight& b) { return a.coords_ == b.coords_; }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
  /// Lexicographic order on coordinates.
  friend bool operator<(const Weight& a, const Weight& b) { return a.coords_ < b.coords_; }

  std::string to_string() const;

private:
  std::vector<Rational> coords_;
};

enum class AlgebraId { A1, A2, A3, B2, OSP12 };

std::string to_string(AlgebraId id);
AlgebraId parse_algebra(const std::string& name);

struct NormalOrdering {
  std::vector<Weight> sequence;
};

struct RootSystem {
  AlgebraId algebra_id;
  std::size_t rank = 0;
  std::vector<std::vector<int>> cartan;   // a_ij = 2 (alpha_i|alpha_j) / (alpha_i|alpha_i)
  std::vector<std::vector<Rational>> sym;  // (alpha_i|alpha_j)
  std::vector<Weight> positive_roots;      // ordered by height, then lexicographically
  std::vector<int> parity;                 // Z2 degree, aligned with positive_roots
  std::vector<NormalOrdering> orderings;   // [0] is the default ordering

  bool is_super() const { return algebra_id == AlgebraId::OSP12; }
  std::size_t root_index(const Weight& root) const;  // throws InvalidOrdering if absent
  bool is_root(const Weight& w) const;
  int parity_of(const Weight& root) const { return parity[root_index(root)]; }
  /// True for roots that are twice an odd root; they carry no factor of R-hat.
  bool is_doubled_odd(const Weight& root) const;
  Weight simple_root(std::size_t i) const { return Weight::simple(rank, i); }
  Weight weyl_vector() const;
};

RootSystem build_root_system(AlgebraId id);

Rational pairing(const Weight& a, const Weight& b, const RootSystem& rs);

NormalOrdering default_normal_ordering(const RootSystem& rs);

/// Convex ordering read off a reduced word of the longest Weyl element, built
/// greedily with the smallest (or largest) admissible simple index first.
NormalOrdering reduced_word_ordering(const RootSystem& rs, bool smallest_first);

bool validate_normal_ordering(const NormalOrdering& ord, const RootSystem& rs);

/// The pair (beta, gamma), beta before gamma, with beta+gamma = root and no other
/// such pair strictly inside ]beta, gamma[. Among several admissible pairs the one
/// with the shortest interval wins; ties go to the earliest beta.
std::pair<Weight, Weight> decomposition_pair(const Weight& root, const NormalOrdering& ord,
                                             const RootSystem& rs);

}  // namespace qdyn

#endif  // QDYN_CARTAN_HPP
