#ifndef QDYN_REPSPACE_HPP
#define QDYN_REPSPACE_HPP

// Finite-dimensional representations of U_q(G) as explicit matrices.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdyn/cartan.hpp"
#include "qdyn/linalg.hpp"

namespace qdyn {

/// Shared, immutable root system per algebra (built once).
std::shared_ptr<const RootSystem> shared_root_system(AlgebraId id);

/// How a shipped representation was built; lets its matrices be regenerated
/// at a different precision. Ingested and tensor representations have none.
struct RepRecipe {
  enum class Kind { Spin, Vector, Osp3, Spinor };
  Kind kind = Kind::Spin;
  Rational spin{0};
  int n = 0;
};

struct Representation {
  std::shared_ptr<const RootSystem> rs;
  double q = 0.5;
  std::vector<Weight> weights;
  std::vector<int> parities;
  std::vector<OperatorMatrix> e;  // one per simple root
  std::vector<OperatorMatrix> f;
  std::string label;
  std::optional<RepRecipe> recipe;

  std::size_t dim() const { return weights.size(); }
  Space space() const { return Space{weights, parities}; }
  /// diag q^{(weight|beta)}
  OperatorMatrix qt(const Weight& beta) const;
  OperatorMatrix qt(std::size_t i) const { return qt(rs->simple_root(i)); }
  int simple_parity(std::size_t i) const { return rs->parity_of(rs->simple_root(i)); }
};

Representation spin_rep_sl2(const Rational& j, double q);
Representation vector_rep_sln(int n, double q);
Representation osp12_rep(double q);
/// The 4-dimensional spin representation of so(5) = B2.
Representation spinor_rep_b2(double q);

struct RepReport {
  double weight = 0;   // [t_i, e_j] = (alpha_i|alpha_j) e_j and weight support of e, f
  double ef = 0;       // graded [e_i, f_j] relation
  double serre = 0;    // alternating-sum quantum Serre relations
  double parity = 0;   // generators shift parity by their degree
  double tolerance = 1e-11;
  bool pass = false;
  std::vector<std::string> failed;
};

RepReport validate_rep(const Representation& rep, double tol = 1e-11);

Representation tensor_rep(const Representation& r1, const Representation& r2);

using RootMatrices = std::map<Weight, std::pair<OperatorMatrix, OperatorMatrix>>;

/// e_alpha, f_alpha for every positive root, built recursively along the ordering.
RootMatrices composite_root_matrices(const Representation& rep, const NormalOrdering& ord);

/// Symmetric q-integer (q^n - q^-n)/(q - q^-1).
double sym_qint(double n, double q);

}  // namespace qdyn

#endif  // QDYN_REPSPACE_HPP
