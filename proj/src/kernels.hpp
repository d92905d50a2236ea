#ifndef QDYN_SRC_KERNELS_HPP
#define QDYN_SRC_KERNELS_HPP

// Scalar-generic numerics behind repspace/rmat/dynamical. Instantiated for
// std::complex<double> (the public API) and for complex128, which is used
// where the double evaluation of an identity is too ill-conditioned.

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "qdyn/dynamical.hpp"
#include "qdyn/error.hpp"

namespace qdyn::detail {

using boost::multiprecision::complex128;
using boost::multiprecision::float128;

template <class S> struct RealOf;
template <> struct RealOf<Complex> { using type = double; };
template <> struct RealOf<complex128> { using type = float128; };
template <class S> using RealT = typename RealOf<S>::type;

template <class S> using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S> Mat<S> zeros(std::size_t n) {
  return Mat<S>::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}
template <class S> Mat<S> ident(std::size_t n) {
  return Mat<S>::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

template <class S> RealT<S> rat(const Rational& r) {
  return RealT<S>(r.numerator()) / RealT<S>(r.denominator());
}

template <class S> RealT<S> qpow(double q, const RealT<S>& e) {
  using std::pow;
  return pow(RealT<S>(q), e);
}

template <class S> RealT<S> sym_qint_t(const RealT<S>& n, double q) {
  const RealT<S> qq(q);
  return (qpow<S>(q, n) - qpow<S>(q, -n)) / (qq - RealT<S>(1) / qq);
}

template <class S> double max_abs_t(const Mat<S>& m) {
  using std::abs;
  RealT<S> best(0);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) best = std::max<RealT<S>>(best, abs(m(i, j)));
  return static_cast<double>(best);
}

template <class S> double residual_t(const Mat<S>& lhs, const Mat<S>& rhs) {
  const double scale = std::max({1.0, max_abs_t<S>(lhs), max_abs_t<S>(rhs)});
  return max_abs_t<S>(Mat<S>(lhs - rhs)) / scale;
}

template <class S> Mat<S> kron_t(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <class S> Mat<S> graded_kron_t(const Mat<S>& a, const Space& first, const Mat<S>& b, int deg_b) {
  if (deg_b % 2 == 0) return kron_t<S>(a, b);
  Mat<S> signed_a = a;
  for (std::size_t c = 0; c < first.dim(); ++c)
    if (first.parities[c]) signed_a.col(static_cast<Eigen::Index>(c)) *= S(-1);
  return kron_t<S>(signed_a, b);
}

template <class S> Mat<S> diag_t(const std::vector<S>& d) {
  Mat<S> m = zeros<S>(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return m;
}

template <class S> Mat<S> diag_inverse_t(const Mat<S>& d) {
  Mat<S> r = d;
  for (Eigen::Index i = 0; i < d.rows(); ++i) r(i, i) = S(1) / d(i, i);
  return r;
}

// Embeds an operator on slots (a, b) of a triple product, with a per-state
// block for the remaining slot: block(k) when the third slot is in state k.
template <class S, class Block>
Mat<S> embed_blockwise_t(const Block& block, std::size_t a, std::size_t b, const Triple& spaces) {
  if (a >= b || b > 2) throw Error(ErrorKind::DimensionMismatch, "slots must satisfy a < b <= 2");
  const std::size_t c = 3 - a - b;
  const std::array<std::size_t, 3> order{a, b, c};
  std::vector<std::size_t> perm(3);
  for (std::size_t k = 0; k < 3; ++k)
    perm[k] = static_cast<std::size_t>(std::find(order.begin(), order.end(), k) - order.begin());
  const OperatorMatrix p = graded_permutation({&spaces[a], &spaces[b], &spaces[c]}, perm);
  const Eigen::Index n = p.rows();
  std::vector<Eigen::Index> dst(static_cast<std::size_t>(n));
  std::vector<int> sgn(static_cast<std::size_t>(n));
  for (Eigen::Index src = 0; src < n; ++src)
    for (Eigen::Index r = 0; r < n; ++r)
      if (p(r, src) != Complex(0)) {
        dst[static_cast<std::size_t>(src)] = r;
        sgn[static_cast<std::size_t>(src)] = p(r, src).real() < 0 ? -1 : 1;
      }
  const auto dc = static_cast<Eigen::Index>(spaces[c].dim());
  const auto dab = static_cast<Eigen::Index>(spaces[a].dim() * spaces[b].dim());
  Mat<S> out = Mat<S>::Zero(n, n);
  for (Eigen::Index k = 0; k < dc; ++k) {
    const Mat<S> x = block(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < dab; ++i)
      for (Eigen::Index j = 0; j < dab; ++j) {
        if (x(i, j) == S(0)) continue;
        const auto si = static_cast<std::size_t>(i * dc + k), sj = static_cast<std::size_t>(j * dc + k);
        out(dst[si], dst[sj]) = (sgn[si] * sgn[sj] < 0) ? S(-x(i, j)) : x(i, j);
      }
  }
  return out;
}

template <class S> Mat<S> embed_t(const Mat<S>& x, std::size_t a, std::size_t b, const Triple& spaces) {
  return embed_blockwise_t<S>([&](std::size_t) -> const Mat<S>& { return x; }, a, b, spaces);
}

template <class S> struct Gens {
  std::vector<Mat<S>> e, f;
};

template <class S> Gens<S> gens_from(const Representation& rep) {
  Gens<S> g;
  for (const auto& m : rep.e) g.e.push_back(m.template cast<S>());
  for (const auto& m : rep.f) g.f.push_back(m.template cast<S>());
  return g;
}

template <> inline Gens<Complex> gens_from<Complex>(const Representation& rep) { return {rep.e, rep.f}; }

template <class S> Gens<S> build_gens(const RepRecipe& rc, double q, const RootSystem& rs) {
  using std::sqrt;
  Gens<S> g;
  switch (rc.kind) {
    case RepRecipe::Kind::Spin: {
      const auto d = static_cast<std::size_t>((Rational(2) * rc.spin).numerator() + 1);
      Mat<S> e = zeros<S>(d);
      for (std::size_t k = 1; k < d; ++k) {
        const Rational m = rc.spin - Rational(static_cast<std::int64_t>(k));
        const RealT<S> v = sym_qint_t<S>(rat<S>(rc.spin - m), q) * sym_qint_t<S>(rat<S>(rc.spin + m + 1), q);
        e(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = S(sqrt(v));
      }
      g.e.push_back(e);
      break;
    }
    case RepRecipe::Kind::Vector: {
      const auto n = static_cast<std::size_t>(rc.n);
      for (std::size_t i = 0; i + 1 < n; ++i) {
        Mat<S> e = zeros<S>(n);
        e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = S(1);
        g.e.push_back(e);
      }
      break;
    }
    case RepRecipe::Kind::Osp3: {
      const S s(sym_qint_t<S>(rat<S>(rs.sym[0][0]), q));
      Mat<S> e = zeros<S>(3), f = zeros<S>(3);
      e(0, 1) = S(1);
      e(1, 2) = S(1);
      f(1, 0) = s;
      f(2, 1) = -s;
      g.e.push_back(e);
      g.f.push_back(f);
      return g;
    }
    case RepRecipe::Kind::Spinor: {
      Mat<S> e1 = zeros<S>(4), e2 = zeros<S>(4);
      e1(1, 2) = S(sqrt(sym_qint_t<S>(RealT<S>(2), q)));
      e2(0, 1) = S(1);
      e2(2, 3) = S(1);
      g.e = {e1, e2};
      break;
    }
  }
  for (const auto& e : g.e) g.f.push_back(e.transpose());
  return g;
}

template <class S> using RootMats = std::map<Weight, std::pair<Mat<S>, Mat<S>>>;

template <class S>
RootMats<S> composite_t(const RootSystem& rs, double q, const Gens<S>& g, const NormalOrdering& ord) {
  if (!validate_normal_ordering(ord, rs)) throw Error(ErrorKind::InvalidOrdering, "not a normal ordering");
  RootMats<S> out;
  for (std::size_t i = 0; i < rs.rank; ++i) out.emplace(rs.simple_root(i), std::make_pair(g.e[i], g.f[i]));
  for (const Weight& root : rs.positive_roots) {
    if (out.count(root)) continue;
    auto [a, b] = decomposition_pair(root, ord, rs);
    const auto& [ea, fa] = out.at(a);
    const auto& [eb, fb] = out.at(b);
    const RealT<S> p = rat<S>(pairing(a, b, rs));
    const S down(qpow<S>(q, -p)), up(qpow<S>(q, p));
    Mat<S> e = ea * eb - down * (eb * ea);
    Mat<S> f = fb * fa - up * (fa * fb);
    out.emplace(root, std::make_pair(std::move(e), std::move(f)));
  }
  return out;
}

template <class S> RealT<S> q_int_t(int n, const RealT<S>& base) {
  using std::pow;
  if (n < 0) throw Error(ErrorKind::NegativeN, "q-integer of negative n");
  if (base == RealT<S>(1)) return RealT<S>(n);
  return (RealT<S>(1) - pow(base, n)) / (RealT<S>(1) - base);
}

template <class S> Mat<S> q_exp_t(const Mat<S>& z, const RealT<S>& base) {
  using std::abs;
  const Eigen::Index n = z.rows();
  Mat<S> res = Mat<S>::Identity(n, n);
  Mat<S> term = Mat<S>::Identity(n, n);
  RealT<S> fact(1);
  for (int k = 1; k <= n; ++k) {
    term = term * z;
    if (max_abs_t<S>(term) < 1e-300) return res;
    const RealT<S> qi = q_int_t<S>(k, base);
    if (abs(qi) < RealT<S>(1e-14)) throw Error(ErrorKind::DegenerateBase, "[n]_base vanishes at n=" + std::to_string(k));
    fact *= qi;
    res += term / S(fact);
  }
  if (max_abs_t<S>(Mat<S>(term * z)) >= 1e-300) throw Error(ErrorKind::NotNilpotent, "q-exponential argument is not nilpotent");
  return res;
}

template <class S> Mat<S> qt_t(const RootSystem& rs, double q, const std::vector<Weight>& weights, const Weight& beta) {
  std::vector<S> d;
  for (const auto& w : weights) d.push_back(S(qpow<S>(q, rat<S>(pairing(w, beta, rs)))));
  return diag_t<S>(d);
}

template <class S> std::map<Weight, S> a_alpha_t(AlgebraId id, const NormalOrdering& ord, double q) {
  using std::abs;
  const Representation probe = probe_rep(id, q);
  const RootSystem& rs = *probe.rs;
  const RootMats<S> m = composite_t<S>(rs, q, build_gens<S>(*probe.recipe, q, rs), ord);
  const S qq(q), qinv(RealT<S>(1) / RealT<S>(q));
  std::map<Weight, S> out;
  for (const Weight& root : rs.positive_roots) {
    const auto& [e, f] = m.at(root);
    const S sign(rs.parity_of(root) ? -1 : 1);
    const Mat<S> com = e * f - sign * (f * e);
    const Mat<S> k = qt_t<S>(rs, q, probe.weights, root);
    const Mat<S> den = (k - diag_inverse_t<S>(k)) / (qq - qinv);
    Mat<S> off = com;
    off.diagonal().setZero();
    if (max_abs_t<S>(off) > 1e-10 * std::max(1.0, max_abs_t<S>(com)))
      throw Error(ErrorKind::InconsistentRatio, "[e,f] not diagonal for " + root.to_string());
    bool found = false;
    S ratio(0);
    for (Eigen::Index b = 0; b < den.rows(); ++b) {
      if (abs(den(b, b)) <= RealT<S>(1e-8)) continue;
      const S r = com(b, b) / den(b, b);
      if (!found) {
        ratio = r;
        found = true;
      } else if (abs(r - ratio) > RealT<S>(1e-10) * std::max<RealT<S>>(RealT<S>(1), abs(ratio))) {
        throw Error(ErrorKind::InconsistentRatio, "a_alpha differs across basis vectors for " + root.to_string());
      }
    }
    if (!found) throw Error(ErrorKind::AllDenominatorsSmall, "no usable basis vector for " + root.to_string());
    out.emplace(root, ratio);
  }
  return out;
}

template <class S> struct Factor {
  Mat<S> z;
  RealT<S> base;
};

// Factors of Rhat in product order (leftmost first).
template <class S>
std::vector<Factor<S>> rhat_factors_t(const Representation& r1, const Gens<S>& g1, const Representation& r2,
                                      const Gens<S>& g2, const NormalOrdering& ord) {
  if (r1.rs->algebra_id != r2.rs->algebra_id || r1.q != r2.q)
    throw Error(ErrorKind::AlgebraMismatch, "representations differ in algebra or q");
  const RootSystem& rs = *r1.rs;
  const double q = r1.q;
  const auto a = a_alpha_t<S>(rs.algebra_id, ord, q);
  const RootMats<S> m1 = composite_t<S>(rs, q, g1, ord);
  const RootMats<S> m2 = composite_t<S>(rs, q, g2, ord);
  const Space s1 = r1.space();
  const RealT<S> qq(q);
  std::vector<Factor<S>> out;
  for (auto it = ord.sequence.rbegin(); it != ord.sequence.rend(); ++it) {
    const Weight& root = *it;
    if (rs.is_doubled_odd(root)) continue;
    const int deg = rs.parity_of(root);
    const RealT<S> sign(deg ? -1 : 1);
    Mat<S> z = graded_kron_t<S>(m1.at(root).first, s1, m2.at(root).second, deg);
    z *= S(sign * (qq - RealT<S>(1) / qq)) / a.at(root);
    out.push_back({std::move(z), sign * qpow<S>(q, -rat<S>(pairing(root, root, rs)))});
  }
  return out;
}

template <class S>
Mat<S> rhat_t(const Representation& r1, const Gens<S>& g1, const Representation& r2, const Gens<S>& g2,
              const NormalOrdering& ord) {
  Mat<S> res = ident<S>(r1.dim() * r2.dim());
  for (const auto& fac : rhat_factors_t<S>(r1, g1, r2, g2, ord)) res = res * q_exp_t<S>(fac.z, fac.base);
  return res;
}

template <class S>
Mat<S> rhat_inverse_t(const Representation& r1, const Gens<S>& g1, const Representation& r2, const Gens<S>& g2,
                      const NormalOrdering& ord) {
  Mat<S> res = ident<S>(r1.dim() * r2.dim());
  auto facs = rhat_factors_t<S>(r1, g1, r2, g2, ord);
  for (auto it = facs.rbegin(); it != facs.rend(); ++it)
    res = res * q_exp_t<S>(Mat<S>(-it->z), RealT<S>(1) / it->base);
  return res;
}

template <class S> Mat<S> k_t(const Representation& r1, const Representation& r2) {
  std::vector<S> d;
  for (const auto& w1 : r1.weights)
    for (const auto& w2 : r2.weights) d.push_back(S(qpow<S>(r1.q, rat<S>(pairing(w1, w2, *r1.rs)))));
  return diag_t<S>(d);
}

/// diag q^{(eta|eta) - (mu|eta)}
template <class S> Mat<S> b_t(const Representation& rep, const DynParam& mu) {
  using std::exp;
  using std::log;
  const RealT<S> lq = log(RealT<S>(rep.q));
  std::vector<S> d;
  for (const auto& w : rep.weights) {
    S z(rat<S>(pairing(w, w, *rep.rs)));
    for (std::size_t i = 0; i < mu.m.size(); ++i) z -= S(rat<S>(w[i])) * S(mu.m[i].real(), mu.m[i].imag());
    d.push_back(exp(z * S(lq)));
  }
  return diag_t<S>(d);
}

}  // namespace qdyn::detail

#endif  // QDYN_SRC_KERNELS_HPP
