#ifndef QDYN_LINALG_HPP
#define QDYN_LINALG_HPP

// Dense complex operators on graded tensor spaces.
//
// Basis vectors of a tensor product are ordered row-major: the index of
// v_i (x) w_j is i * dim(W) + j. Every basis vector carries a weight and a
// Z2 parity; all Koszul signs are applied when operators are embedded, so
// operator algebra afterwards is plain matrix algebra.

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qdyn/cartan.hpp"

namespace qdyn {

using Complex = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;

struct Space {
  std::vector<Weight> weights;
  std::vector<int> parities;

  std::size_t dim() const { return weights.size(); }
};

Space tensor_space(const Space& a, const Space& b);

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b);

/// diag((-1)^{parity}) on the space.
OperatorMatrix parity_operator(const Space& s);

/// Matrix of a (x) b with the Koszul rule (a (x) b)(v (x) w) = (-1)^{deg b deg v} av (x) bw.
OperatorMatrix graded_kron(const OperatorMatrix& a, const Space& first, const OperatorMatrix& b, int deg_b);

/// Graded permutation of tensor factors. `factors` lists the source spaces in
/// order; output slot k holds source slot perm[k].
OperatorMatrix graded_permutation(const std::vector<const Space*>& factors,
                                  const std::vector<std::size_t>& perm);

/// The graded flip V_a (x) V_b -> V_b (x) V_a.
OperatorMatrix graded_flip(const Space& a, const Space& b);

using Triple = std::array<Space, 3>;

/// Embeds an even operator acting on slots (a, b), a < b, of a triple product.
OperatorMatrix embed_pair(const OperatorMatrix& x, std::size_t a, std::size_t b, const Triple& spaces);

/// Same, with a different operator on each basis vector of the remaining slot:
/// block(k) acts on slots (a, b) when the third slot is in basis state k.
OperatorMatrix embed_pair_blockwise(const std::function<OperatorMatrix(std::size_t)>& block,
                                    std::size_t a, std::size_t b, const Triple& spaces);

double max_abs(const OperatorMatrix& m);

/// max|lhs - rhs| / max(1, max|lhs|, max|rhs|)
double relative_residual(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

}  // namespace qdyn

#endif  // QDYN_LINALG_HPP
