#include "qdyn/rmat.hpp"

#include "qdyn/error.hpp"
#include "kernels.hpp"

namespace qdyn {

namespace {

void require_same(const Representation& a, const Representation& b) {
  if (a.rs->algebra_id != b.rs->algebra_id || a.q != b.q)
    throw Error(ErrorKind::AlgebraMismatch, "representations differ in algebra or q");
}

}  // namespace

double q_int(int n, double base) { return detail::q_int_t<Complex>(n, base); }
double q_factorial(int n, double base) {
  if (n < 0) throw Error(ErrorKind::NegativeN, "q-factorial of negative n");
  double p = 1.0;
  for (int k = 1; k <= n; ++k) p *= q_int(k, base);
  return p;
}

OperatorMatrix q_exp(const OperatorMatrix& z, double base) { return detail::q_exp_t<Complex>(z, base); }
Representation probe_rep(AlgebraId id, double q) {
  switch (id) {
    case AlgebraId::A1: return spin_rep_sl2(Rational(1, 2), q);
    case AlgebraId::A2: return vector_rep_sln(3, q);
    case AlgebraId::A3: return vector_rep_sln(4, q);
    case AlgebraId::B2: return spinor_rep_b2(q);
    case AlgebraId::OSP12: return osp12_rep(q);
  }
  throw Error(ErrorKind::UnknownAlgebra, "no probe representation");
}

AlphaConstants a_alpha(AlgebraId id, const NormalOrdering& ord, double q) {
  return detail::a_alpha_t<Complex>(id, ord, q);
}
OperatorMatrix k_matrix(const Representation& r1, const Representation& r2) {
  require_same(r1, r2);
  return detail::k_t<Complex>(r1, r2);
}
OperatorMatrix rhat(const Representation& r1, const Representation& r2, const NormalOrdering& ord) {
  return detail::rhat_t<Complex>(r1, detail::gens_from<Complex>(r1), r2, detail::gens_from<Complex>(r2), ord);
}
OperatorMatrix rhat_inverse(const Representation& r1, const Representation& r2, const NormalOrdering& ord) {
  return detail::rhat_inverse_t<Complex>(r1, detail::gens_from<Complex>(r1), r2, detail::gens_from<Complex>(r2), ord);
}
OperatorMatrix full_r(const Representation& r1, const Representation& r2, const NormalOrdering& ord) {
  return k_matrix(r1, r2) * rhat(r1, r2, ord);
}

StaticReport static_checks(const Representation& r1, const Representation& r2, const Representation& r3,
                           const NormalOrdering& ord, const NormalOrdering& ord2, double tol) {
  StaticReport rep;
  rep.tolerance = tol;
  const Triple sp{r1.space(), r2.space(), r3.space()};
  const OperatorMatrix r12 = embed_pair(full_r(r1, r2, ord), 0, 1, sp);
  const OperatorMatrix r13 = embed_pair(full_r(r1, r3, ord), 0, 2, sp);
  const OperatorMatrix r23 = embed_pair(full_r(r2, r3, ord), 1, 2, sp);
  rep.ybe_residual = relative_residual(r12 * r13 * r23, r23 * r13 * r12);
  rep.quasitri_left = relative_residual(full_r(tensor_rep(r1, r2), r3, ord), r13 * r23);
  rep.quasitri_right = relative_residual(full_r(r1, tensor_rep(r2, r3), ord), r13 * r12);
  rep.ordering_independence = relative_residual(full_r(r1, r2, ord), full_r(r1, r2, ord2));
  rep.pass = rep.ybe_residual <= tol && rep.quasitri_left <= tol && rep.quasitri_right <= tol &&
             rep.ordering_independence <= tol;
  return rep;
}

}  // namespace qdyn
