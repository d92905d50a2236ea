#include "qdyn/linalg.hpp"

#include <algorithm>

#include "qdyn/error.hpp"

namespace qdyn {

Space tensor_space(const Space& a, const Space& b) {
  Space s;
  s.weights.reserve(a.dim() * b.dim());
  s.parities.reserve(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      s.weights.push_back(a.weights[i] + b.weights[j]);
      s.parities.push_back((a.parities[i] + b.parities[j]) % 2);
    }
  return s;
}

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

OperatorMatrix parity_operator(const Space& s) {
  OperatorMatrix p = OperatorMatrix::Zero(static_cast<Eigen::Index>(s.dim()), static_cast<Eigen::Index>(s.dim()));
  for (std::size_t i = 0; i < s.dim(); ++i) p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = s.parities[i] ? -1.0 : 1.0;
  return p;
}

OperatorMatrix graded_kron(const OperatorMatrix& a, const Space& first, const OperatorMatrix& b, int deg_b) {
  if (deg_b % 2 == 0) return kron(a, b);
  return kron(a * parity_operator(first), b);
}

OperatorMatrix graded_permutation(const std::vector<const Space*>& factors,
                                  const std::vector<std::size_t>& perm) {
  const std::size_t n = factors.size();
  if (perm.size() != n) throw Error(ErrorKind::DimensionMismatch, "permutation length");
  std::vector<std::size_t> dims(n);
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    dims[k] = factors[k]->dim();
    total *= dims[k];
  }
  // position of each source slot in the output
  std::vector<std::size_t> out_pos(n);
  for (std::size_t k = 0; k < n; ++k) out_pos[perm[k]] = k;

  OperatorMatrix p = OperatorMatrix::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t src = 0; src < total; ++src) {
    std::size_t rem = src;
    for (std::size_t k = n; k-- > 0;) {
      idx[k] = rem % dims[k];
      rem /= dims[k];
    }
    std::size_t dst = 0;
    for (std::size_t k = 0; k < n; ++k) dst = dst * dims[perm[k]] + idx[perm[k]];
    int sign_exp = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (out_pos[i] > out_pos[j]) sign_exp += factors[i]->parities[idx[i]] * factors[j]->parities[idx[j]];
    p(static_cast<Eigen::Index>(dst), static_cast<Eigen::Index>(src)) = (sign_exp % 2) ? -1.0 : 1.0;
  }
  return p;
}

OperatorMatrix graded_flip(const Space& a, const Space& b) { return graded_permutation({&a, &b}, {1, 0}); }

namespace {

// Permutation taking the ordering (a, b, c) to (0, 1, 2), plus the index of c.
struct SlotLayout {
  std::size_t c;
  OperatorMatrix to_natural;
};

SlotLayout layout(std::size_t a, std::size_t b, const Triple& spaces) {
  if (a >= b || b > 2) throw Error(ErrorKind::DimensionMismatch, "slots must satisfy a < b <= 2");
  std::size_t c = 3 - a - b;
  std::array<std::size_t, 3> order{a, b, c};
  std::vector<const Space*> src{&spaces[a], &spaces[b], &spaces[c]};
  std::vector<std::size_t> perm(3);
  for (std::size_t k = 0; k < 3; ++k)
    perm[k] = static_cast<std::size_t>(std::find(order.begin(), order.end(), k) - order.begin());
  return {c, graded_permutation(src, perm)};
}

}  // namespace

OperatorMatrix embed_pair(const OperatorMatrix& x, std::size_t a, std::size_t b, const Triple& spaces) {
  if (a == 0 && b == 1) return kron(x, OperatorMatrix::Identity(static_cast<Eigen::Index>(spaces[2].dim()), static_cast<Eigen::Index>(spaces[2].dim())));
  auto l = layout(a, b, spaces);
  const auto dc = static_cast<Eigen::Index>(spaces[l.c].dim());
  return l.to_natural * kron(x, OperatorMatrix::Identity(dc, dc)) * l.to_natural.transpose();
}

OperatorMatrix embed_pair_blockwise(const std::function<OperatorMatrix(std::size_t)>& block,
                                    std::size_t a, std::size_t b, const Triple& spaces) {
  auto l = layout(a, b, spaces);
  const auto dc = static_cast<Eigen::Index>(spaces[l.c].dim());
  const auto dab = static_cast<Eigen::Index>(spaces[a].dim() * spaces[b].dim());
  OperatorMatrix m = OperatorMatrix::Zero(dab * dc, dab * dc);
  for (Eigen::Index k = 0; k < dc; ++k) {
    OperatorMatrix x = block(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < dab; ++i)
      for (Eigen::Index j = 0; j < dab; ++j) m(i * dc + k, j * dc + k) = x(i, j);
  }
  return l.to_natural * m * l.to_natural.transpose();
}

double max_abs(const OperatorMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double relative_residual(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    throw Error(ErrorKind::DimensionMismatch, "residual operands differ in shape");
  double scale = std::max({1.0, max_abs(lhs), max_abs(rhs)});
  return max_abs(lhs - rhs) / scale;
}

}  // namespace qdyn
