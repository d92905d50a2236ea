#include "qdyn/cartan.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qdyn/error.hpp"

namespace qdyn {

Weight Weight::simple(std::size_t rank, std::size_t i) {
  Weight w = zero(rank);
  w[i] = 1;
  return w;
}

bool Weight::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == Rational(0); });
}

bool Weight::is_nonnegative() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c >= Rational(0); });
}

Rational Weight::height() const {
  Rational h(0);
  for (const auto& c : coords_) h += c;
  return h;
}

Weight& Weight::operator+=(const Weight& o) {
  if (o.rank() != rank()) throw Error(ErrorKind::DimensionMismatch, "weight ranks differ");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& o) {
  if (o.rank() != rank()) throw Error(ErrorKind::DimensionMismatch, "weight ranks differ");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

Weight operator*(const Rational& s, Weight w) {
  for (auto& c : w.coords_) c *= s;
  return w;
}

Weight Weight::operator-() const { return Rational(-1) * *this; }

std::string Weight::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ", ";
    os << coords_[i].numerator();
    if (coords_[i].denominator() != 1) os << '/' << coords_[i].denominator();
  }
  os << ')';
  return os.str();
}

std::string to_string(AlgebraId id) {
  switch (id) {
    case AlgebraId::A1: return "A1";
    case AlgebraId::A2: return "A2";
    case AlgebraId::A3: return "A3";
    case AlgebraId::B2: return "B2";
    case AlgebraId::OSP12: return "OSP12";
  }
  return "?";
}

AlgebraId parse_algebra(const std::string& name) {
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::toupper(c); });
  if (n == "A1" || n == "SL2") return AlgebraId::A1;
  if (n == "A2" || n == "SL3") return AlgebraId::A2;
  if (n == "A3" || n == "SL4") return AlgebraId::A3;
  if (n == "B2" || n == "SO5") return AlgebraId::B2;
  if (n == "OSP12" || n == "OSP(1|2)") return AlgebraId::OSP12;
  throw Error(ErrorKind::UnknownAlgebra, "unsupported algebra '" + name + "'");
}

std::size_t RootSystem::root_index(const Weight& root) const {
  auto it = std::find(positive_roots.begin(), positive_roots.end(), root);
  if (it == positive_roots.end())
    throw Error(ErrorKind::InvalidOrdering, root.to_string() + " is not a positive root");
  return static_cast<std::size_t>(it - positive_roots.begin());
}

bool RootSystem::is_root(const Weight& w) const {
  return std::find(positive_roots.begin(), positive_roots.end(), w) != positive_roots.end();
}

bool RootSystem::is_doubled_odd(const Weight& root) const {
  for (std::size_t k = 0; k < positive_roots.size(); ++k)
    if (parity[k] == 1 && Rational(2) * positive_roots[k] == root) return true;
  return false;
}

Weight RootSystem::weyl_vector() const {
  Weight rho = Weight::zero(rank);
  for (const auto& r : positive_roots) rho += r;
  return Rational(1, 2) * rho;
}

Rational pairing(const Weight& a, const Weight& b, const RootSystem& rs) {
  if (a.rank() != rs.rank || b.rank() != rs.rank)
    throw Error(ErrorKind::DimensionMismatch, "weight rank does not match root system");
  Rational s(0);
  for (std::size_t i = 0; i < rs.rank; ++i) {
    if (a[i] == Rational(0)) continue;
    for (std::size_t j = 0; j < rs.rank; ++j) s += a[i] * b[j] * rs.sym[i][j];
  }
  return s;
}

namespace {

// <beta, alpha_i^vee>
Rational coroot_pairing(const Weight& beta, std::size_t i, const RootSystem& rs) {
  return Rational(2) * pairing(beta, rs.simple_root(i), rs) / rs.sym[i][i];
}

Weight reflect(const Weight& beta, std::size_t i, const RootSystem& rs) {
  return beta - coroot_pairing(beta, i, rs) * rs.simple_root(i);
}

bool is_positive(const Weight& w) { return !w.is_zero() && w.is_nonnegative(); }

// Positive roots of a Lie algebra by closure: beta + alpha_i is a root iff
// p - <beta, alpha_i^vee> > 0, p the length of the alpha_i-string below beta.
std::vector<Weight> close_roots(const RootSystem& rs) {
  std::vector<Weight> roots;
  for (std::size_t i = 0; i < rs.rank; ++i) roots.push_back(rs.simple_root(i));
  auto known = [&](const Weight& w) { return std::find(roots.begin(), roots.end(), w) != roots.end(); };
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const Weight beta = roots[k];
    for (std::size_t i = 0; i < rs.rank; ++i) {
      int p = 0;
      Weight down = beta - rs.simple_root(i);
      while (known(down)) {
        ++p;
        down -= rs.simple_root(i);
      }
      if (Rational(p) - coroot_pairing(beta, i, rs) > Rational(0)) {
        Weight up = beta + rs.simple_root(i);
        if (!known(up)) roots.push_back(up);
      }
    }
  }
  return roots;
}

}  // namespace

RootSystem build_root_system(AlgebraId id) {
  RootSystem rs;
  rs.algebra_id = id;
  auto a_series = [](std::size_t r) {
    std::vector<std::vector<Rational>> s(r, std::vector<Rational>(r, Rational(0)));
    for (std::size_t i = 0; i < r; ++i) {
      s[i][i] = 2;
      if (i + 1 < r) s[i][i + 1] = s[i + 1][i] = -1;
    }
    return s;
  };
  switch (id) {
    case AlgebraId::A1: rs.sym = a_series(1); break;
    case AlgebraId::A2: rs.sym = a_series(2); break;
    case AlgebraId::A3: rs.sym = a_series(3); break;
    case AlgebraId::B2: rs.sym = {{Rational(4), Rational(-2)}, {Rational(-2), Rational(2)}}; break;
    case AlgebraId::OSP12: rs.sym = {{Rational(2)}}; break;
  }
  rs.rank = rs.sym.size();
  rs.cartan.assign(rs.rank, std::vector<int>(rs.rank, 0));
  for (std::size_t i = 0; i < rs.rank; ++i)
    for (std::size_t j = 0; j < rs.rank; ++j) {
      Rational a = Rational(2) * rs.sym[i][j] / rs.sym[i][i];
      rs.cartan[i][j] = static_cast<int>(a.numerator() / a.denominator());
    }

  std::vector<Weight> roots;
  std::vector<int> par;
  if (id == AlgebraId::OSP12) {
    roots = {rs.simple_root(0), Rational(2) * rs.simple_root(0)};
    par = {1, 0};
  } else {
    roots = close_roots(rs);
    par.assign(roots.size(), 0);
  }
  std::vector<std::size_t> idx(roots.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (roots[a].height() != roots[b].height()) return roots[a].height() < roots[b].height();
    return roots[b] < roots[a];
  });
  for (std::size_t k : idx) {
    rs.positive_roots.push_back(roots[k]);
    rs.parity.push_back(par[k]);
  }

  if (id == AlgebraId::OSP12) {
    rs.orderings.push_back(NormalOrdering{{rs.simple_root(0), Rational(2) * rs.simple_root(0)}});
  } else {
    rs.orderings.push_back(reduced_word_ordering(rs, true));
    NormalOrdering alt = reduced_word_ordering(rs, false);
    if (alt.sequence != rs.orderings.front().sequence) rs.orderings.push_back(alt);
  }
  return rs;
}

NormalOrdering reduced_word_ordering(const RootSystem& rs, bool smallest_first) {
  if (rs.is_super()) return rs.orderings.empty() ? NormalOrdering{} : rs.orderings.front();
  NormalOrdering ord;
  std::vector<std::size_t> word;
  auto apply_word = [&](Weight w) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) w = reflect(w, *it, rs);
    return w;
  };
  while (ord.sequence.size() < rs.positive_roots.size()) {
    bool extended = false;
    for (std::size_t n = 0; n < rs.rank && !extended; ++n) {
      std::size_t i = smallest_first ? n : rs.rank - 1 - n;
      Weight beta = apply_word(rs.simple_root(i));
      if (is_positive(beta)) {
        ord.sequence.push_back(beta);
        word.push_back(i);
        extended = true;
      }
    }
    if (!extended) break;
  }
  return ord;
}

NormalOrdering default_normal_ordering(const RootSystem& rs) {
  if (!rs.orderings.empty()) return rs.orderings.front();
  return reduced_word_ordering(rs, true);
}

namespace {

std::vector<std::size_t> positions(const NormalOrdering& ord, const RootSystem& rs) {
  if (ord.sequence.size() != rs.positive_roots.size())
    throw Error(ErrorKind::NotAPermutation, "ordering length differs from the number of positive roots");
  std::vector<std::size_t> pos(rs.positive_roots.size(), rs.positive_roots.size());
  for (std::size_t k = 0; k < ord.sequence.size(); ++k) {
    auto it = std::find(rs.positive_roots.begin(), rs.positive_roots.end(), ord.sequence[k]);
    if (it == rs.positive_roots.end())
      throw Error(ErrorKind::NotAPermutation, ord.sequence[k].to_string() + " is not a positive root");
    auto r = static_cast<std::size_t>(it - rs.positive_roots.begin());
    if (pos[r] != rs.positive_roots.size())
      throw Error(ErrorKind::NotAPermutation, ord.sequence[k].to_string() + " occurs twice");
    pos[r] = k;
  }
  return pos;
}

}  // namespace

bool validate_normal_ordering(const NormalOrdering& ord, const RootSystem& rs) {
  positions(ord, rs);
  const auto& seq = ord.sequence;
  auto where = [&](const Weight& w) -> long {
    auto it = std::find(seq.begin(), seq.end(), w);
    return it == seq.end() ? -1 : static_cast<long>(it - seq.begin());
  };
  for (std::size_t i = 0; i < seq.size(); ++i) {
    Weight twice = Rational(2) * seq[i];
    long d = where(twice);
    if (d >= 0 && static_cast<std::size_t>(d) < i) return false;
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      long s = where(seq[i] + seq[j]);
      if (s < 0) continue;
      if (!(static_cast<std::size_t>(s) > i && static_cast<std::size_t>(s) < j)) return false;
    }
  }
  return true;
}

std::pair<Weight, Weight> decomposition_pair(const Weight& root, const NormalOrdering& ord,
                                             const RootSystem& rs) {
  positions(ord, rs);
  const auto& seq = ord.sequence;
  struct Candidate {
    std::size_t lo, hi;
  };
  std::vector<Candidate> pairs;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i; j < seq.size(); ++j)
      if (seq[i] + seq[j] == root) pairs.push_back({i, j});
  if (pairs.empty())
    throw Error(ErrorKind::NotDecomposable, root.to_string() + " is not a sum of two positive roots");

  auto admissible = [&](const Candidate& c) {
    for (const auto& o : pairs) {
      if (o.lo == c.lo && o.hi == c.hi) continue;
      if (o.lo > c.lo && o.hi < c.hi) return false;
    }
    return true;
  };
  const Candidate* best = nullptr;
  for (const auto& c : pairs) {
    if (!admissible(c)) continue;
    if (!best || (c.hi - c.lo) < (best->hi - best->lo) ||
        ((c.hi - c.lo) == (best->hi - best->lo) && c.lo < best->lo))
      best = &c;
  }
  if (!best) throw Error(ErrorKind::InvalidOrdering, "no admissible decomposition of " + root.to_string());
  return {seq[best->lo], seq[best->hi]};
}

}  // namespace qdyn
