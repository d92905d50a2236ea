#include <cmath>
#include <limits>

#include "qdyn/dynamical.hpp"
#include "qdyn/error.hpp"

namespace qdyn {

namespace {

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

OperatorMatrix ident(std::size_t n) {
  return OperatorMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

}  // namespace

OperatorMatrix closed_form_reference(ClosedFormKind kind, const Representation& r1, const Representation& r2,
                                     const DynParam& mu, const ClosedFormFit& fit, int only_n) {
  const AlgebraId want = kind == ClosedFormKind::SL2 ? AlgebraId::A1 : AlgebraId::OSP12;
  if (r1.rs->algebra_id != want || r2.rs->algebra_id != want)
    throw Error(ErrorKind::AlgebraMismatch, "closed form needs rank-one representations of the matching kind");
  const RootSystem& rs = *r1.rs;
  const double q = r1.q;
  const Weight alpha = rs.simple_root(0);
  const double aa = to_double(pairing(alpha, alpha, rs));
  const int deg = r1.simple_parity(0);
  // x^{-2} = q^{-(s m + t)}
  const Complex xm2 = std::exp(-(static_cast<double>(fit.s) * mu.m.at(0) + static_cast<double>(fit.t)) * std::log(q));

  std::vector<double> h;
  for (const auto& w : r2.weights) h.push_back(2.0 * to_double(pairing(w, alpha, rs)) / aa);

  const Space s1 = r1.space();
  const std::size_t nmax = std::max(r1.dim(), r2.dim());
  const Eigen::Index dim = static_cast<Eigen::Index>(r1.dim() * r2.dim());
  OperatorMatrix total = OperatorMatrix::Zero(dim, dim);
  OperatorMatrix en = ident(r1.dim()), fn = ident(r2.dim());
  for (std::size_t n = 0; n <= nmax; ++n) {
    if (n > 0) {
      en = en * r1.e[0];
      fn = fn * r2.f[0];
    }
    if (only_n >= 0 && static_cast<int>(n) != only_n) continue;
    OperatorMatrix term = graded_kron(en, s1, fn, deg * static_cast<int>(n) % 2);
    if (max_abs(term) == 0.0) continue;
    const int ni = static_cast<int>(n);
    double coef = std::pow(q - 1.0 / q, ni);
    if (kind == ClosedFormKind::SL2) {
      coef *= (n % 2 ? -1.0 : 1.0) / q_factorial(ni, q * q);
    } else {
      coef *= ((n * (n + 1) / 2) % 2 ? -1.0 : 1.0) / q_factorial(ni, -q * q);
      if (n % 2) coef *= fit.sigma;
    }
    for (std::size_t j = 0; j < r2.dim(); ++j) {
      Complex den = 1.0;
      for (int nu = 1; nu <= ni; ++nu) {
        const Complex fac = kind == ClosedFormKind::SL2
                                ? 1.0 - xm2 * std::pow(q, 2.0 * nu) * std::pow(q, -2.0 * h[j])
                                : 1.0 + xm2 * std::pow(-q * q, nu) * std::pow(q, -2.0 * h[j]);
        if (std::abs(fac) < 1e-12) throw Error(ErrorKind::ResonantParameter, "closed-form denominator vanishes");
        den *= fac;
      }
      for (std::size_t i = 0; i < r1.dim(); ++i) {
        const auto col = static_cast<Eigen::Index>(i * r2.dim() + j);
        total.col(col) += coef / den * term.col(col);
      }
    }
  }
  return total;
}

ClosedFormFit fit_closed_form(double q) {
  const Representation half = spin_rep_sl2(Rational(1, 2), q);
  const NormalOrdering& ord1 = half.rs->orderings.at(0);
  const std::vector<double> mus{7.13, 9.5};
  ClosedFormFit best;
  double best_err = std::numeric_limits<double>::infinity();
  for (int s = -2; s <= 2; ++s)
    for (int t = -2; t <= 2; ++t) {
      ClosedFormFit cand{s, t, 1};
      double err = 0;
      for (double m : mus) {
        const DynParam mu{{m}, q};
        const OperatorMatrix lin = f_linear(half, half, ord1, mu) - ident(4);
        try {
          err = std::max(err, relative_residual(closed_form_reference(ClosedFormKind::SL2, half, half, mu, cand, 1), lin));
        } catch (const Error&) {
          err = std::numeric_limits<double>::infinity();
        }
      }
      if (err < best_err) {
        best_err = err;
        best = cand;
      }
    }

  const Representation osp = osp12_rep(q);
  const NormalOrdering& ord2 = osp.rs->orderings.at(0);
  const DynParam mu{{mus[0]}, q};
  const OperatorMatrix lin = f_linear(osp, osp, ord2, mu);
  double sigma_err = std::numeric_limits<double>::infinity();
  for (int sigma : {1, -1}) {
    ClosedFormFit cand{best.s, best.t, sigma};
    const OperatorMatrix t1 = closed_form_reference(ClosedFormKind::OSP12, osp, osp, mu, cand, 1);
    // compare only on the support of the n = 1 term
    OperatorMatrix masked = lin;
    for (Eigen::Index i = 0; i < t1.rows(); ++i)
      for (Eigen::Index j = 0; j < t1.cols(); ++j)
        if (t1(i, j) == Complex(0)) masked(i, j) = 0;
    const double err = relative_residual(t1, masked);
    if (err < sigma_err) {
      sigma_err = err;
      best.sigma = sigma;
    }
  }
  return best;
}

}  // namespace qdyn
