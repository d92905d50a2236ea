#ifndef QDYN_RMAT_HPP
#define QDYN_RMAT_HPP

// Static R-matrix R = K * Rhat evaluated on pairs of representations.

#include <map>

#include "qdyn/repspace.hpp"

namespace qdyn {

/// [n]_b = (1 - b^n) / (1 - b), with [n]_1 = n.
double q_int(int n, double base);
double q_factorial(int n, double base);

/// sum_n z^n / [n]_base!, z nilpotent.
OperatorMatrix q_exp(const OperatorMatrix& z, double base);

using AlphaConstants = std::map<Weight, Complex>;

/// Faithful representation used to read off a_alpha.
Representation probe_rep(AlgebraId id, double q);

AlphaConstants a_alpha(AlgebraId id, const NormalOrdering& ord, double q);

OperatorMatrix k_matrix(const Representation& r1, const Representation& r2);
OperatorMatrix rhat(const Representation& r1, const Representation& r2, const NormalOrdering& ord);
OperatorMatrix rhat_inverse(const Representation& r1, const Representation& r2, const NormalOrdering& ord);
OperatorMatrix full_r(const Representation& r1, const Representation& r2, const NormalOrdering& ord);

struct StaticReport {
  double ybe_residual = 0;
  double quasitri_left = 0;
  double quasitri_right = 0;
  double ordering_independence = 0;
  double tolerance = 1e-9;
  bool pass = false;
};

StaticReport static_checks(const Representation& r1, const Representation& r2, const Representation& r3,
                           const NormalOrdering& ord, const NormalOrdering& ord2, double tol = 1e-9);

}  // namespace qdyn

#endif  // QDYN_RMAT_HPP
