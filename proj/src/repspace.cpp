#include "qdyn/repspace.hpp"

#include <array>
#include <cmath>
#include <mutex>

#include "qdyn/error.hpp"
#include "kernels.hpp"

namespace qdyn {

namespace {

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

OperatorMatrix zeros(std::size_t n) {
  return OperatorMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

OperatorMatrix ident(std::size_t n) {
  return OperatorMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

void check_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorKind::MalformedInput, "q must lie in (0,1)");
}

double sym_qfactorial(int n, double q) {
  double p = 1.0;
  for (int k = 1; k <= n; ++k) p *= sym_qint(k, q);
  return p;
}

double sym_qbinom(int n, int k, double q) {
  return sym_qfactorial(n, q) / (sym_qfactorial(k, q) * sym_qfactorial(n - k, q));
}

Representation with_generators(Representation r, const RepRecipe& rc) {
  auto g = detail::build_gens<Complex>(rc, r.q, *r.rs);
  r.e = std::move(g.e);
  r.f = std::move(g.f);
  r.recipe = rc;
  return r;
}

OperatorMatrix mpow(const OperatorMatrix& m, int k) {
  OperatorMatrix r = ident(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

}  // namespace

double sym_qint(double n, double q) { return (std::pow(q, n) - std::pow(q, -n)) / (q - 1.0 / q); }

std::shared_ptr<const RootSystem> shared_root_system(AlgebraId id) {
  static std::array<std::shared_ptr<const RootSystem>, 5> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[static_cast<std::size_t>(id)];
  if (!slot) slot = std::make_shared<const RootSystem>(build_root_system(id));
  return slot;
}

OperatorMatrix Representation::qt(const Weight& beta) const {
  OperatorMatrix d = zeros(dim());
  for (std::size_t b = 0; b < dim(); ++b)
    d(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) = std::pow(q, to_double(pairing(weights[b], beta, *rs)));
  return d;
}

Representation spin_rep_sl2(const Rational& j, double q) {
  check_q(q);
  Rational twoj = Rational(2) * j;
  if (j < Rational(0) || twoj.denominator() != 1) throw Error(ErrorKind::BadSpin, "spin must be a non-negative half-integer");
  const auto d = static_cast<std::size_t>(twoj.numerator() + 1);
  Representation r;
  r.rs = shared_root_system(AlgebraId::A1);
  r.q = q;
  r.label = "spin:" + (j.denominator() == 1 ? std::to_string(j.numerator()) : std::to_string(j.numerator()) + "/2");
  for (std::size_t k = 0; k < d; ++k) {
    // weight m*alpha has coordinate m (t_alpha eigenvalue 2m)
    r.weights.push_back(Weight({j - Rational(static_cast<std::int64_t>(k))}));
    r.parities.push_back(0);
  }
  RepRecipe rc;
  rc.kind = RepRecipe::Kind::Spin;
  rc.spin = j;
  return with_generators(std::move(r), rc);
}

Representation vector_rep_sln(int n, double q) {
  check_q(q);
  if (n < 2 || n > 4) throw Error(ErrorKind::UnsupportedRank, "vector representation shipped for n = 2..4");
  static const AlgebraId ids[] = {AlgebraId::A1, AlgebraId::A2, AlgebraId::A3};
  Representation r;
  r.rs = shared_root_system(ids[n - 2]);
  r.q = q;
  r.label = "vector";
  const auto rank = static_cast<std::size_t>(n - 1);
  std::vector<Rational> eps(rank);
  for (std::size_t k = 0; k < rank; ++k) eps[k] = Rational(n - 1 - static_cast<int>(k), n);
  for (int i = 0; i < n; ++i) {
    r.weights.emplace_back(eps);
    r.parities.push_back(0);
    if (i < n - 1) eps[static_cast<std::size_t>(i)] -= 1;
  }
  RepRecipe rc;
  rc.kind = RepRecipe::Kind::Vector;
  rc.n = n;
  return with_generators(std::move(r), rc);
}

Representation osp12_rep(double q) {
  check_q(q);
  Representation r;
  r.rs = shared_root_system(AlgebraId::OSP12);
  r.q = q;
  r.label = "osp3";
  r.weights = {Weight({Rational(1)}), Weight({Rational(0)}), Weight({Rational(-1)})};
  r.parities = {0, 1, 0};
  RepRecipe rc;
  rc.kind = RepRecipe::Kind::Osp3;
  return with_generators(std::move(r), rc);
}

Representation spinor_rep_b2(double q) {
  check_q(q);
  Representation r;
  r.rs = shared_root_system(AlgebraId::B2);
  r.q = q;
  r.label = "spinor";
  // basis (e1+e2)/2, (e1-e2)/2, -(e1-e2)/2, -(e1+e2)/2; alpha1 = e1-e2 long, alpha2 = e2 short
  const Rational h(1, 2);
  r.weights = {Weight({h, Rational(1)}), Weight({h, Rational(0)}), Weight({-h, Rational(0)}),
               Weight({-h, Rational(-1)})};
  r.parities = {0, 0, 0, 0};
  RepRecipe rc;
  rc.kind = RepRecipe::Kind::Spinor;
  return with_generators(std::move(r), rc);
}

RepReport validate_rep(const Representation& rep, double tol) {
  RepReport rp;
  rp.tolerance = tol;
  const RootSystem& rs = *rep.rs;
  const std::size_t n = rep.dim();
  if (rep.parities.size() != n || rep.e.size() != rs.rank || rep.f.size() != rs.rank)
    throw Error(ErrorKind::DimensionMismatch, "representation data inconsistent with rank/dim");
  for (std::size_t i = 0; i < rs.rank; ++i)
    if (static_cast<std::size_t>(rep.e[i].rows()) != n || static_cast<std::size_t>(rep.e[i].cols()) != n ||
        static_cast<std::size_t>(rep.f[i].rows()) != n || static_cast<std::size_t>(rep.f[i].cols()) != n)
      throw Error(ErrorKind::DimensionMismatch, "generator matrix has wrong size");

  const double q = rep.q;
  for (std::size_t i = 0; i < rs.rank; ++i) {
    OperatorMatrix t = zeros(n);
    for (std::size_t b = 0; b < n; ++b)
      t(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) = to_double(pairing(rep.weights[b], rs.simple_root(i), rs));
    for (std::size_t j = 0; j < rs.rank; ++j) {
      const double a = to_double(rs.sym[i][j]);
      rp.weight = std::max(rp.weight, relative_residual(t * rep.e[j] - rep.e[j] * t, a * rep.e[j]));
      rp.weight = std::max(rp.weight, relative_residual(t * rep.f[j] - rep.f[j] * t, -a * rep.f[j]));
    }
  }
  // support: entries of e_j / f_j only between weights differing by alpha_j, parities by deg alpha_j
  for (std::size_t j = 0; j < rs.rank; ++j) {
    const Weight aj = rs.simple_root(j);
    const int dj = rep.simple_parity(j);
    const double scale = std::max({1.0, max_abs(rep.e[j]), max_abs(rep.f[j])});
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const double ve = std::abs(rep.e[j](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))) / scale;
        const double vf = std::abs(rep.f[j](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))) / scale;
        if (rep.weights[a] != rep.weights[b] + aj) rp.weight = std::max(rp.weight, ve);
        if (rep.weights[a] != rep.weights[b] - aj) rp.weight = std::max(rp.weight, vf);
        if ((rep.parities[b] + dj) % 2 != rep.parities[a] % 2) rp.parity = std::max({rp.parity, ve, vf});
      }
  }
  for (std::size_t i = 0; i < rs.rank; ++i)
    for (std::size_t j = 0; j < rs.rank; ++j) {
      const int sign = (rep.simple_parity(i) * rep.simple_parity(j)) % 2 ? -1 : 1;
      OperatorMatrix lhs = rep.e[i] * rep.f[j] - static_cast<double>(sign) * rep.f[j] * rep.e[i];
      OperatorMatrix rhs = zeros(n);
      if (i == j) {
        OperatorMatrix k = rep.qt(i);
        rhs = (k - OperatorMatrix(k.inverse())) / (q - 1.0 / q);
      }
      rp.ef = std::max(rp.ef, relative_residual(lhs, rhs));
    }
  for (std::size_t i = 0; i < rs.rank; ++i)
    for (std::size_t j = 0; j < rs.rank; ++j) {
      if (i == j) continue;
      Rational nr = Rational(1) - Rational(2) * rs.sym[i][j] / rs.sym[i][i];
      if (nr.denominator() != 1 || nr < Rational(1)) continue;
      const int nij = static_cast<int>(nr.numerator());
      const double qi = std::pow(q, to_double(rs.sym[i][i]) / 2.0);
      OperatorMatrix se = zeros(n), sf = zeros(n);
      double scale = 1.0;
      for (int k = 0; k <= nij; ++k) {
        const double c = ((k % 2) ? -1.0 : 1.0) * sym_qbinom(nij, k, qi);
        OperatorMatrix te = mpow(rep.e[i], k) * rep.e[j] * mpow(rep.e[i], nij - k);
        OperatorMatrix tf = mpow(rep.f[i], k) * rep.f[j] * mpow(rep.f[i], nij - k);
        scale = std::max({scale, std::abs(c) * max_abs(te), std::abs(c) * max_abs(tf)});
        se += c * te;
        sf += c * tf;
      }
      rp.serre = std::max({rp.serre, max_abs(se) / scale, max_abs(sf) / scale});
    }
  if (rp.weight > tol) rp.failed.push_back("weight");
  if (rp.ef > tol) rp.failed.push_back("ef");
  if (rp.serre > tol) rp.failed.push_back("serre");
  if (rp.parity > tol) rp.failed.push_back("parity");
  rp.pass = rp.failed.empty();
  return rp;
}

Representation tensor_rep(const Representation& r1, const Representation& r2) {
  if (r1.rs->algebra_id != r2.rs->algebra_id || r1.q != r2.q)
    throw Error(ErrorKind::AlgebraMismatch, "tensor factors must share algebra and q");
  Representation r;
  r.rs = r1.rs;
  r.q = r1.q;
  r.label = "(" + r1.label + ")x(" + r2.label + ")";
  Space s = tensor_space(r1.space(), r2.space());
  r.weights = s.weights;
  r.parities = s.parities;
  const Space s1 = r1.space();
  const OperatorMatrix id1 = ident(r1.dim()), id2 = ident(r2.dim());
  for (std::size_t i = 0; i < r.rs->rank; ++i) {
    const int d = r1.simple_parity(i);
    OperatorMatrix q1inv = r1.qt(i).inverse();
    r.e.push_back(kron(r1.e[i], r2.qt(i)) + graded_kron(id1, s1, r2.e[i], d));
    r.f.push_back(kron(r1.f[i], id2) + graded_kron(q1inv, s1, r2.f[i], d));
  }
  return r;
}

RootMatrices composite_root_matrices(const Representation& rep, const NormalOrdering& ord) {
  return detail::composite_t<Complex>(*rep.rs, rep.q, detail::gens_from<Complex>(rep), ord);
}

}  // namespace qdyn
