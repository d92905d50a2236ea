#include "qdyn/dynamical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qdyn/error.hpp"
#include "kernels.hpp"

namespace qdyn {

namespace {

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

OperatorMatrix ident(std::size_t n) {
  return OperatorMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

// exponent of q in b(eta) = q^{(eta|eta) - (mu|eta)}
Complex b_exponent(const Weight& eta, const DynParam& mu, const RootSystem& rs) {
  return to_double(pairing(eta, eta, rs)) - mu.pair(eta);
}

std::vector<Complex> slot2_exponents(const Representation& r1, const Representation& r2, const DynParam& mu) {
  std::vector<Complex> z;
  z.reserve(r1.dim() * r2.dim());
  for (std::size_t i = 0; i < r1.dim(); ++i)
    for (const auto& w : r2.weights) z.push_back(b_exponent(w, mu, *r2.rs));
  return z;
}

OperatorMatrix b2_matrix(const Representation& r1, const Representation& r2, const DynParam& mu) {
  return kron(ident(r1.dim()), b_matrix(r2, mu));
}

// U^{-1} V W = W U^{-1} V with U = B2 B3 K23^2, V = K12^{-1} K13^{-1} R13 R12,
// W = R23^{-1} R13^{-1} K13 K23 B3. Entries span q^{+-2(mu|theta)}, so the
// shipped representations are evaluated in quad precision.
template <class S> double uvw_residual(const Reps3& reps, const NormalOrdering& ord, const DynParam& mu) {
  using detail::Mat;
  const auto& [r1, r2, r3] = reps;
  const Triple sp{r1.space(), r2.space(), r3.space()};
  auto gens = [](const Representation& r) {
    return r.recipe ? detail::build_gens<S>(*r.recipe, r.q, *r.rs) : detail::gens_from<S>(r);
  };
  const detail::Gens<S> g1 = gens(r1), g2 = gens(r2), g3 = gens(r3);
  auto E = [&](const Mat<S>& x, std::size_t a, std::size_t b) { return detail::embed_t<S>(x, a, b, sp); };
  const Mat<S> k12 = E(detail::k_t<S>(r1, r2), 0, 1), k13 = E(detail::k_t<S>(r1, r3), 0, 2),
               k23 = E(detail::k_t<S>(r2, r3), 1, 2);
  const Mat<S> s12 = k12 * E(detail::rhat_t<S>(r1, g1, r2, g2, ord), 0, 1);
  const Mat<S> s13 = k13 * E(detail::rhat_t<S>(r1, g1, r3, g3, ord), 0, 2);
  const Mat<S> s13inv = E(detail::rhat_inverse_t<S>(r1, g1, r3, g3, ord), 0, 2) * detail::diag_inverse_t<S>(k13);
  const Mat<S> s23inv = E(detail::rhat_inverse_t<S>(r2, g2, r3, g3, ord), 1, 2) * detail::diag_inverse_t<S>(k23);
  const Mat<S> b2 = detail::kron_t<S>(detail::kron_t<S>(detail::ident<S>(r1.dim()), detail::b_t<S>(r2, mu)),
                                      detail::ident<S>(r3.dim()));
  const Mat<S> b3 = detail::kron_t<S>(detail::ident<S>(r1.dim() * r2.dim()), detail::b_t<S>(r3, mu));
  const Mat<S> uinv = detail::diag_inverse_t<S>(Mat<S>(b2 * b3 * k23 * k23));
  const Mat<S> v = detail::diag_inverse_t<S>(k12) * detail::diag_inverse_t<S>(k13) * s13 * s12;
  const Mat<S> w = s23inv * s13inv * k13 * k23 * b3;
  return detail::residual_t<S>(Mat<S>(uinv * v * w), Mat<S>(w * uinv * v));
}

}  // namespace

Complex DynParam::pair(const Weight& eta) const {
  if (eta.rank() != m.size()) throw Error(ErrorKind::DimensionMismatch, "mu has wrong number of pairings");
  Complex s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s += to_double(eta[i]) * m[i];
  return s;
}

DynParam DynParam::shifted(const Weight& eta, const Rational& mult, const RootSystem& rs) const {
  DynParam out = *this;
  const double c = to_double(mult);
  for (std::size_t i = 0; i < m.size(); ++i) out.m[i] -= c * to_double(pairing(eta, rs.simple_root(i), rs));
  return out;
}

std::string to_string(Method m) { return m == Method::Product ? "product" : "linear"; }

OperatorMatrix b_matrix(const Representation& rep, const DynParam& mu) { return detail::b_t<Complex>(rep, mu); }

ProductResult f_product(const Representation& r1, const Representation& r2, const NormalOrdering& ord,
                        const DynParam& mu, const TruncationPolicy& pol, bool keep_partials) {
  if (pol.max_terms < 1) throw Error(ErrorKind::MalformedInput, "max_terms must be >= 1");
  const OperatorMatrix rinv = rhat_inverse(r1, r2, ord);
  const std::vector<Complex> z = slot2_exponents(r1, r2, mu);
  const double lq = std::log(r1.q);
  const Eigen::Index n = rinv.rows();

  ProductResult res;
  res.f = OperatorMatrix::Identity(n, n);
  int quiet = 0;
  for (int k = 0; k < pol.max_terms; ++k) {
    // u_k = B2^k Rhat^{-1} B2^{-k}, entrywise (b_I / b_J)^k
    OperatorMatrix u = rinv;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j && u(i, j) != Complex(0)) u(i, j) *= std::exp(static_cast<double>(k) * (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]) * lq);
    res.f = res.f * u;
    res.terms = k + 1;
    res.tail = max_abs(u - OperatorMatrix::Identity(n, n));
    if (keep_partials) res.partials.push_back(res.f);
    if (!std::isfinite(res.tail) || !res.f.allFinite())
      throw Error(ErrorKind::NotConverged, "non-finite factor at k=" + std::to_string(k));
    quiet = res.tail < pol.stop_tol ? quiet + 1 : 0;
    if (quiet >= pol.stall_window) return res;
  }
  throw Error(ErrorKind::NotConverged, "tail " + std::to_string(res.tail) + " after " + std::to_string(res.terms) + " factors");
}

OperatorMatrix f_linear(const Representation& r1, const Representation& r2, const NormalOrdering& ord,
                        const DynParam& mu) {
  const OperatorMatrix rinv = rhat_inverse(r1, r2, ord);
  const std::vector<Complex> z = slot2_exponents(r1, r2, mu);
  const double lq = std::log(r1.q);
  const std::size_t n = z.size();
  std::vector<Complex> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = std::exp(z[i] * lq);

  std::vector<Weight> l1(n), tot(n);
  for (std::size_t i = 0; i < r1.dim(); ++i)
    for (std::size_t j = 0; j < r2.dim(); ++j) {
      l1[i * r2.dim() + j] = r1.weights[i];
      tot[i * r2.dim() + j] = r1.weights[i] + r2.weights[j];
    }
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t c) { return l1[a].height() < l1[c].height(); });

  OperatorMatrix f = OperatorMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t jj = 0; jj < n; ++jj) {
    const auto J = static_cast<Eigen::Index>(jj);
    for (std::size_t ii : rows) {
      const auto I = static_cast<Eigen::Index>(ii);
      if (tot[ii] != tot[jj]) continue;
      const Weight d = l1[ii] - l1[jj];
      if (d.is_zero()) {
        f(I, J) = ii == jj ? 1.0 : 0.0;
        continue;
      }
      if (!d.is_nonnegative()) continue;
      Complex rhs = 0;
      for (std::size_t kk = 0; kk < n; ++kk) {
        const auto K = static_cast<Eigen::Index>(kk);
        if (kk != ii && rinv(I, K) != Complex(0)) rhs += rinv(I, K) * b[kk] * f(K, J);
      }
      const Complex den = b[jj] - b[ii];
      if (std::abs(den) < 1e-10 * std::max(std::abs(b[ii]), std::abs(b[jj])))
        throw Error(ErrorKind::ResonantParameter, "b_J - b_I vanishes at (" + std::to_string(ii) + "," + std::to_string(jj) + ")");
      f(I, J) = rhs / den;
    }
  }
  return f;
}

OperatorMatrix f_twist(const Representation& r1, const Representation& r2, const NormalOrdering& ord,
                       const DynParam& mu, Method method, const TruncationPolicy& pol) {
  if (method == Method::Linear) return f_linear(r1, r2, ord, mu);
  return f_product(r1, r2, ord, mu, pol).f;
}

OperatorMatrix r_dyn(const Representation& r1, const Representation& r2, const NormalOrdering& ord,
                     const DynParam& mu, Method method, const TruncationPolicy& pol) {
  const OperatorMatrix f12 = f_twist(r1, r2, ord, mu, method, pol);
  const OperatorMatrix p = graded_flip(r2.space(), r1.space());
  const OperatorMatrix f21 = p * f_twist(r2, r1, ord, mu, method, pol) * p.transpose();
  return f21.partialPivLu().solve(full_r(r1, r2, ord) * f12);
}

OperatorMatrix shift_eval(const MuBuilder& builder, std::size_t a, std::size_t b, const Rational& mult,
                          const Reps3& reps, const DynParam& mu) {
  if (a >= b || b > 2) throw Error(ErrorKind::DimensionMismatch, "slots must satisfy a < b <= 2");
  const std::size_t c = 3 - a - b;
  const Triple sp{reps[0].space(), reps[1].space(), reps[2].space()};
  const RootSystem& rs = *reps[c].rs;
  return embed_pair_blockwise(
      [&](std::size_t k) { return builder(mu.shifted(reps[c].weights[k], mult, rs)); }, a, b, sp);
}

MarginReport convergence_margin(const Representation& r2, const DynParam& mu) {
  MarginReport rep;
  const RootSystem& rs = *r2.rs;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (const Weight& root : rs.positive_roots) {
    if (rs.is_doubled_odd(root)) continue;  // no factor in Rhat
    double spread = 0;
    for (const auto& w : r2.weights) spread = std::max(spread, std::abs(to_double(pairing(w, root, rs))));
    const double m = mu.pair(root).real() - to_double(pairing(root, root, rs)) - 2.0 * spread;
    rep.margins.emplace_back(root, m);
    rep.min_margin = std::min(rep.min_margin, m);
  }
  rep.positive = rep.min_margin > 0;
  return rep;
}

DynReport dynamic_checks(const Representation& r1, const Representation& r2, const Representation& r3,
                         const NormalOrdering& ord, const DynParam& mu, const TruncationPolicy& pol, Method method,
                         double tol) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  DynReport rep;
  rep.linear_eq = rep.cocycle = rep.gnf = rep.abb = rep.uvw = rep.shift_lemma = rep.product_vs_linear = nan;
  rep.tolerance = tol;
  const Reps3 reps{r1, r2, r3};
  const Triple sp{r1.space(), r2.space(), r3.space()};
  const Rational two(2);
  auto F = [&](const Representation& a, const Representation& b, const DynParam& m) {
    return f_twist(a, b, ord, m, method, pol);
  };
  auto R = [&](const Representation& a, const Representation& b, const DynParam& m) {
    return r_dyn(a, b, ord, m, method, pol);
  };
  std::string stage;
  try {
    stage = "linear_eq";
    {
      const OperatorMatrix b2 = b2_matrix(r1, r2, mu);
      const OperatorMatrix rinv = rhat_inverse(r1, r2, ord);
      const OperatorMatrix fl = f_linear(r1, r2, ord, mu);
      const ProductResult fp = f_product(r1, r2, ord, mu, pol);
      rep.product_terms = fp.terms;
      rep.linear_eq = std::max(relative_residual(fl * b2, rinv * b2 * fl), relative_residual(fp.f * b2, rinv * b2 * fp.f));
      stage = "product_vs_linear";
      rep.product_vs_linear = relative_residual(fp.f, fl);
    }

    stage = "shift_lemma";
    {
      auto b2_of = [&](const DynParam& m) { return b2_matrix(r1, r2, m); };
      const OperatorMatrix lhs = shift_eval(b2_of, 0, 1, two, reps, mu);
      const OperatorMatrix k23 = embed_pair(k_matrix(r2, r3), 1, 2, sp);
      rep.shift_lemma = relative_residual(lhs, embed_pair(b2_matrix(r1, r2, mu), 0, 1, sp) * k23 * k23);
    }

    stage = "cocycle";
    {
      const OperatorMatrix lhs =
          F(tensor_rep(r1, r2), r3, mu) * shift_eval([&](const DynParam& m) { return F(r1, r2, m); }, 0, 1, two, reps, mu);
      const OperatorMatrix rhs = F(r1, tensor_rep(r2, r3), mu) * embed_pair(F(r2, r3, mu), 1, 2, sp);
      rep.cocycle = relative_residual(lhs, rhs);
    }

    stage = "gnf";
    {
      const OperatorMatrix lhs = shift_eval([&](const DynParam& m) { return R(r2, r3, m); }, 1, 2, two, reps, mu) *
                                 embed_pair(R(r1, r3, mu), 0, 2, sp) *
                                 shift_eval([&](const DynParam& m) { return R(r1, r2, m); }, 0, 1, two, reps, mu);
      const OperatorMatrix rhs = embed_pair(R(r1, r2, mu), 0, 1, sp) *
                                 shift_eval([&](const DynParam& m) { return R(r1, r3, m); }, 0, 2, two, reps, mu) *
                                 embed_pair(R(r2, r3, mu), 1, 2, sp);
      rep.gnf = relative_residual(lhs, rhs);
    }

    stage = "abb";
    {
      const OperatorMatrix b2 = b2_matrix(r1, r2, mu);
      const OperatorMatrix p = graded_flip(r2.space(), r1.space());
      const OperatorMatrix r21 = p * R(r2, r1, mu) * p.transpose();
      const OperatorMatrix k = k_matrix(r1, r2);
      rep.abb = relative_residual(R(r1, r2, mu) * b2 * r21, b2 * k * k);
    }

    stage = "uvw";
    {
      const bool exact = r1.recipe && r2.recipe && r3.recipe;
      rep.uvw = exact ? uvw_residual<detail::complex128>(reps, ord, mu) : uvw_residual<Complex>(reps, ord, mu);
    }
  } catch (const Error& e) {
    rep.failed_check = stage;
    rep.error = std::string(to_string(e.kind()));
    rep.pass = false;
    return rep;
  }
  rep.pass = rep.linear_eq <= tol && rep.product_vs_linear <= tol && rep.shift_lemma <= tol && rep.cocycle <= tol &&
             rep.gnf <= tol && rep.abb <= tol && rep.uvw <= tol;
  return rep;
}

}  // namespace qdyn
