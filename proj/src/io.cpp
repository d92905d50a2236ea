#include "qdyn/io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "qdyn/error.hpp"

namespace qdyn {

namespace {

// NaN is not representable in JSON; unevaluated residuals become null.
Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Rational parse_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw Error(ErrorKind::MalformedInput, "weight coordinates must be integers or \"p/q\" strings");
  const std::string s = j.get<std::string>();
  try {
    std::size_t pos = 0;
    const std::size_t slash = s.find('/');
    const std::int64_t p = std::stoll(s.substr(0, slash), &pos);
    if (pos != (slash == std::string::npos ? s.size() : slash)) throw std::invalid_argument(s);
    if (slash == std::string::npos) return Rational(p);
    const std::string den = s.substr(slash + 1);
    const std::int64_t d = std::stoll(den, &pos);
    if (pos != den.size() || d == 0) throw std::invalid_argument(s);
    return Rational(p, d);
  } catch (const std::exception&) {
    throw Error(ErrorKind::MalformedInput, "bad rational '" + s + "'");
  }
}

std::string rational_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::MalformedInput, std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json matrix_to_json(const OperatorMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

OperatorMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::MalformedInput, "matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index(0) : static_cast<Eigen::Index>(j.at(0).size());
  OperatorMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw Error(ErrorKind::DimensionMismatch, "ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k) {
      const Json& c = row.at(static_cast<std::size_t>(k));
      if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
        throw Error(ErrorKind::MalformedInput, "matrix entries must be [re, im] pairs");
      m(i, k) = Complex(c[0].get<double>(), c[1].get<double>());
    }
  }
  return m;
}

Json rep_to_json(const Representation& rep) {
  Json j;
  j["algebra"] = to_string(rep.rs->algebra_id);
  j["q"] = rep.q;
  j["dim"] = rep.dim();
  j["label"] = rep.label;
  Json weights = Json::array();
  for (const auto& w : rep.weights) {
    Json c = Json::array();
    for (const auto& x : w.coords()) c.push_back(rational_string(x));
    weights.push_back(std::move(c));
  }
  j["weights"] = std::move(weights);
  j["parities"] = rep.parities;
  j["e"] = Json::array();
  j["f"] = Json::array();
  for (const auto& m : rep.e) j["e"].push_back(matrix_to_json(m));
  for (const auto& m : rep.f) j["f"].push_back(matrix_to_json(m));
  return j;
}

Representation rep_from_json(const Json& j) {
  Representation rep;
  try {
    rep.rs = shared_root_system(parse_algebra(field(j, "algebra").get<std::string>()));
    rep.q = field(j, "q").get<double>();
    const auto dim = field(j, "dim").get<std::size_t>();
    if (!(rep.q > 0.0 && rep.q < 1.0)) throw Error(ErrorKind::MalformedInput, "q must lie in (0,1)");
    rep.label = j.contains("label") ? j.at("label").get<std::string>() : std::string("file");
    for (const auto& w : field(j, "weights")) {
      std::vector<Rational> c;
      for (const auto& x : w) c.push_back(parse_rational(x));
      if (c.size() != rep.rs->rank) throw Error(ErrorKind::DimensionMismatch, "weight has wrong rank");
      rep.weights.emplace_back(std::move(c));
    }
    for (const auto& p : field(j, "parities")) {
      const int v = p.get<int>();
      if (v != 0 && v != 1) throw Error(ErrorKind::MalformedInput, "parities must be 0 or 1");
      rep.parities.push_back(v);
    }
    for (const auto& m : field(j, "e")) rep.e.push_back(matrix_from_json(m));
    for (const auto& m : field(j, "f")) rep.f.push_back(matrix_from_json(m));
    if (rep.weights.size() != dim || rep.parities.size() != dim)
      throw Error(ErrorKind::DimensionMismatch, "weights/parities do not match dim");
    if (rep.e.size() != rep.rs->rank || rep.f.size() != rep.rs->rank)
      throw Error(ErrorKind::DimensionMismatch, "need one e and one f per simple root");
    for (const auto* set : {&rep.e, &rep.f})
      for (const auto& m : *set)
        if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim)
          throw Error(ErrorKind::DimensionMismatch, "generator matrix does not match dim");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedInput, e.what());
  }
  return rep;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedInput, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error(ErrorKind::MalformedInput, "cannot write " + path.string());
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

void write_json_file(const std::filesystem::path& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

Json to_json(const RepReport& r) {
  return Json{{"weight", num(r.weight)}, {"ef", num(r.ef)},          {"serre", num(r.serre)},
              {"parity", num(r.parity)}, {"tolerance", r.tolerance}, {"pass", r.pass},
              {"failed", r.failed}};
}

Json to_json(const StaticReport& r) {
  return Json{{"ybe", num(r.ybe_residual)},
              {"quasitri_left", num(r.quasitri_left)},
              {"quasitri_right", num(r.quasitri_right)},
              {"ordering_independence", num(r.ordering_independence)},
              {"tolerance", r.tolerance},
              {"pass", r.pass}};
}

Json to_json(const DynReport& r) {
  Json j{{"linear_eq", num(r.linear_eq)},
         {"product_vs_linear", num(r.product_vs_linear)},
         {"shift_lemma", num(r.shift_lemma)},
         {"cocycle", num(r.cocycle)},
         {"gnf", num(r.gnf)},
         {"abb", num(r.abb)},
         {"uvw", num(r.uvw)},
         {"product_terms", r.product_terms},
         {"tolerance", r.tolerance},
         {"pass", r.pass}};
  if (!r.failed_check.empty()) j["failed"] = r.failed_check + "/" + r.error;
  return j;
}

Json to_json(const MarginReport& r) {
  Json roots = Json::array();
  for (const auto& [root, m] : r.margins) roots.push_back(Json{{"root", root.to_string()}, {"margin", num(m)}});
  return Json{{"roots", roots}, {"min", num(r.min_margin)}, {"positive", r.positive}};
}

std::string convention_ledger() {
  std::ostringstream os;
  os << "form: (alpha_i|alpha_i)=2 short roots; B2 sym [[4,-2],[-2,2]]; osp(1|2) (alpha|alpha)=2\n"
     << "rep matrices: symmetric q-integers; q-exp: [n]_b=(1-b^n)/(1-b)\n"
     << "composite: e_{a+b}=e_a e_b - q^{-(a|b)} e_b e_a; f_{a+b}=f_b f_a - q^{(a|b)} f_a f_b\n"
     << "rhat: leftmost factor = last root of the ordering; base (-1)^deg q^{-(a|a)}; doubled odd roots skipped\n"
     << "koszul: (a(x)b)(v(x)w)=(-1)^{deg b deg v} av(x)bw\n"
     << "B: q^{(eta|eta)-(mu|eta)} on slot 2; shifts mu -> mu - 2 eta\n"
     << "gnf: R23(mu-2h1) R13 R12(mu-2h3) = R12 R13(mu-2h2) R23\n"
     << "closed form fit: s=" << kFrozenFit.s << " t=" << kFrozenFit.t << " sigma=" << kFrozenFit.sigma << "\n"
     << "residual: max|L-R| / max(1,max|L|,max|R|)\n";
  return os.str();
}

std::string ledger_hash() {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : convention_ledger()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace qdyn
