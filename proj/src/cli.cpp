#include "qdyn/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qdyn/error.hpp"
#include "qdyn/io.hpp"

namespace qdyn {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string algebra;
  std::string reps;
  double q = 0.5;
  std::string mu;
  std::string method = "linear";
  double tol = 1e-9;
  int max_terms = 200;
  double stop_tol = 1e-15;
  int ordering = 0;
  std::string out;
  std::vector<std::string> grid;
};

std::string sci(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) parts.push_back(cur);
  return parts;
}

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::MalformedInput, "not a number: '" + s + "'");
  }
}

Rational parse_spin(const std::string& s) {
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    if (s.substr(slash + 1) != "2") throw Error(ErrorKind::BadSpin, "spin denominator must be 2");
    const double n = parse_double(s.substr(0, slash));
    if (n != std::floor(n)) throw Error(ErrorKind::BadSpin, s);
    return Rational(static_cast<std::int64_t>(n), 2);
  }
  const double twice = 2.0 * parse_double(s);
  if (twice != std::floor(twice)) throw Error(ErrorKind::BadSpin, "spin must be a half-integer: " + s);
  return Rational(static_cast<std::int64_t>(twice), 2);
}

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnknownAlgebra:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::BadSpin:
    case ErrorKind::UnsupportedRank:
    case ErrorKind::AlgebraMismatch:
    case ErrorKind::InvalidOrdering:
    case ErrorKind::MalformedInput:
    case ErrorKind::NotAPermutation:
      return true;
    default:
      return false;
  }
}

DynParam make_mu(const std::vector<double>& m, double q) {
  DynParam p;
  p.q = q;
  for (double v : m) p.m.emplace_back(v, 0.0);
  return p;
}

std::vector<double> parse_mu(const std::string& text, std::size_t rank) {
  std::vector<double> m;
  for (const auto& s : split(text, ',')) m.push_back(parse_double(s));
  if (m.size() == 1) m.assign(rank, m[0]);
  if (m.size() != rank)
    throw Error(ErrorKind::DimensionMismatch, "--mu needs " + std::to_string(rank) + " pairings (mu|alpha_i)");
  return m;
}

std::vector<Method> parse_methods(const std::string& s) {
  if (s == "linear") return {Method::Linear};
  if (s == "product") return {Method::Product};
  if (s == "both") return {Method::Product, Method::Linear};
  throw Error(ErrorKind::MalformedInput, "--method must be product, linear or both");
}

// Everything a command needs once the flags are resolved.
struct Setup {
  RunConfig cfg;
  std::shared_ptr<const RootSystem> rs;
  std::vector<Representation> reps;
  NormalOrdering ord, ord2;
  TruncationPolicy pol;
  std::vector<Method> methods;
};

// Algebra and q default to those of the first file representation, if any.
void fill_defaults_from_files(RunConfig& cfg, bool q_given) {
  for (const auto& spec : split(cfg.reps, ',')) {
    if (spec.rfind("file:", 0) != 0) continue;
    const Json j = read_json_file(spec.substr(5));
    if (cfg.algebra.empty() && j.contains("algebra") && j["algebra"].is_string())
      cfg.algebra = j["algebra"].get<std::string>();
    if (!q_given && j.contains("q") && j["q"].is_number()) cfg.q = j["q"].get<double>();
    return;
  }
}

Setup resolve(RunConfig cfg, bool q_given, std::size_t min_reps, std::size_t max_reps, bool need_mu) {
  fill_defaults_from_files(cfg, q_given);
  if (cfg.algebra.empty()) throw Error(ErrorKind::MalformedInput, "--algebra is required");
  if (!(cfg.q > 0.0 && cfg.q < 1.0)) throw Error(ErrorKind::MalformedInput, "q must lie in (0,1)");
  if (!(cfg.tol > 0.0)) throw Error(ErrorKind::MalformedInput, "--tol must be positive");
  if (cfg.max_terms < 1) throw Error(ErrorKind::MalformedInput, "--max-terms must be >= 1");
  Setup s;
  s.rs = shared_root_system(parse_algebra(cfg.algebra));
  for (const auto& spec : split(cfg.reps, ',')) s.reps.push_back(parse_rep_spec(spec, s.rs->algebra_id, cfg.q));
  if (s.reps.size() < min_reps || s.reps.size() > max_reps)
    throw Error(ErrorKind::MalformedInput, "wrong number of representations in --reps");
  for (const auto& r : s.reps)
    if (!r.recipe) {
      const RepReport v = validate_rep(r);
      if (!v.pass) throw Error(ErrorKind::MalformedInput, "representation file fails relations");
    }
  if (cfg.ordering < 0 || static_cast<std::size_t>(cfg.ordering) >= s.rs->orderings.size())
    throw Error(ErrorKind::InvalidOrdering, "--ordering out of range (have " +
                                               std::to_string(s.rs->orderings.size()) + ")");
  s.ord = s.rs->orderings[static_cast<std::size_t>(cfg.ordering)];
  const std::size_t other = s.rs->orderings.size() > 1 && cfg.ordering == 0 ? 1 : 0;
  s.ord2 = s.rs->orderings[other];
  if (need_mu && cfg.mu.empty()) throw Error(ErrorKind::MalformedInput, "--mu is required");
  if (!cfg.mu.empty()) parse_mu(cfg.mu, s.rs->rank);
  s.pol.max_terms = cfg.max_terms;
  s.pol.stop_tol = cfg.stop_tol;
  s.methods = parse_methods(cfg.method);
  s.cfg = std::move(cfg);
  return s;
}

Json header(const Setup& s, const std::string& command) {
  Json labels = Json::array();
  for (const auto& r : s.reps) labels.push_back(r.label);
  Json j;
  j["command"] = command;
  j["timestamp"] = timestamp();
  j["algebra"] = to_string(s.rs->algebra_id);
  j["reps"] = labels;
  j["q"] = s.cfg.q;
  if (!s.cfg.mu.empty()) j["mu"] = parse_mu(s.cfg.mu, s.rs->rank);
  j["ordering"] = s.cfg.ordering;
  j["method"] = s.cfg.method;
  j["tolerance"] = s.cfg.tol;
  j["truncation"] = Json{{"max_terms", s.pol.max_terms}, {"stop_tol", s.pol.stop_tol}};
  j["ledger_hash"] = ledger_hash();
  j["ledger"] = convention_ledger();
  return j;
}

Json matrix_file(const std::string& name, const OperatorMatrix& m, const Setup& s) {
  Json j;
  j["name"] = name;
  j["algebra"] = to_string(s.rs->algebra_id);
  j["q"] = s.cfg.q;
  j["ledger_hash"] = ledger_hash();
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = matrix_to_json(m);
  return j;
}

int cmd_compute(const Setup& s, std::ostream& out) {
  const Representation& r1 = s.reps[0];
  const Representation& r2 = s.reps[1];
  const DynParam mu = make_mu(parse_mu(s.cfg.mu, s.rs->rank), s.cfg.q);
  std::vector<std::pair<std::string, OperatorMatrix>> objs;
  objs.emplace_back("rhat", rhat(r1, r2, s.ord));
  objs.emplace_back("k", k_matrix(r1, r2));
  objs.emplace_back("r", full_r(r1, r2, s.ord));
  objs.emplace_back("b", b_matrix(r2, mu));
  std::vector<std::string> notes(objs.size());
  for (Method m : s.methods) {
    const std::string tag = to_string(m);
    if (m == Method::Product) {
      const ProductResult p = f_product(r1, r2, s.ord, mu, s.pol);
      objs.emplace_back("f_" + tag, p.f);
      notes.push_back("terms=" + std::to_string(p.terms) + " tail=" + sci(p.tail));
    } else {
      objs.emplace_back("f_" + tag, f_linear(r1, r2, s.ord, mu));
      notes.emplace_back();
    }
    objs.emplace_back("rdyn_" + tag, r_dyn(r1, r2, s.ord, mu, m, s.pol));
    notes.emplace_back();
  }
  // all objects exist before any file is written
  const fs::path dir = s.cfg.out.empty() ? fs::path("qdyn_out") : fs::path(s.cfg.out);
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const auto& [name, m] = objs[i];
    write_json_file(dir / (name + ".json"), matrix_file(name, m, s));
    out << name << " " << m.rows() << "x" << m.cols() << " max|.|=" << sci(max_abs(m));
    if (!notes[i].empty()) out << " " << notes[i];
    out << "\n";
  }
  return kExitPass;
}

int cmd_verify(const Setup& s, std::ostream& out, std::ostream& err) {
  const Representation &r1 = s.reps[0], &r2 = s.reps[1], &r3 = s.reps[2];
  const DynParam mu = make_mu(parse_mu(s.cfg.mu, s.rs->rank), s.cfg.q);
  Json report = header(s, "verify");
  int code = kExitPass;
  std::string failure;
  try {
    const StaticReport st = static_checks(r1, r2, r3, s.ord, s.ord2, s.cfg.tol);
    report["static"] = to_json(st);
    out << "static ybe=" << sci(st.ybe_residual) << " quasitri=" << sci(std::max(st.quasitri_left, st.quasitri_right))
        << " ordering=" << sci(st.ordering_independence) << (st.pass ? " PASS" : " FAIL") << "\n";
    if (!st.pass) code = kExitFail;
  } catch (const Error& e) {
    report["static"] = Json{{"failed", "static/" + std::string(to_string(e.kind()))}};
    failure = "static/" + std::string(to_string(e.kind()));
  }
  report["margins"] = to_json(convergence_margin(r2, mu));
  Json dyn;
  for (Method m : s.methods) {
    const DynReport d = dynamic_checks(r1, r2, r3, s.ord, mu, s.pol, m, s.cfg.tol);
    dyn[to_string(m)] = to_json(d);
    out << "dynamic[" << to_string(m) << "] linear_eq=" << sci(d.linear_eq) << " cocycle=" << sci(d.cocycle)
        << " gnf=" << sci(d.gnf) << " abb=" << sci(d.abb) << " uvw=" << sci(d.uvw)
        << " shift=" << sci(d.shift_lemma) << " prod_vs_lin=" << sci(d.product_vs_linear)
        << " terms=" << d.product_terms << (d.pass ? " PASS" : " FAIL") << "\n";
    if (!d.failed_check.empty() && failure.empty()) failure = d.failed_check + "/" + d.error;
    if (!d.pass) code = kExitFail;
  }
  report["dynamic"] = dyn;
  if (!failure.empty()) {
    code = kExitEval;
    report["failed"] = failure;
    err << "evaluation failed: " << failure << "\n";
  }
  report["pass"] = code == kExitPass;
  report["exit_code"] = code;
  if (!s.cfg.out.empty()) write_json_file(s.cfg.out, report);
  return code;
}

struct SweepRow {
  double q = 0;
  std::vector<double> m;
  double min_margin = std::nan("");
  int terms = 0;
  double tail = std::nan("");
  double pvl = std::nan(""), lin = std::nan("");
  double coc = std::nan(""), gnf = std::nan(""), abb = std::nan(""), uvw = std::nan(""), shift = std::nan("");
  std::string status = "error";
  std::string error;
};

void eval_row(const Setup& s, SweepRow& row) {
  try {
    std::vector<Representation> reps;
    for (const auto& spec : split(s.cfg.reps, ',')) reps.push_back(parse_rep_spec(spec, s.rs->algebra_id, row.q));
    const DynParam mu = make_mu(row.m, row.q);
    row.min_margin = convergence_margin(reps[1], mu).min_margin;
    const Method method = s.methods.back();
    if (reps.size() == 3) {
      const DynReport d = dynamic_checks(reps[0], reps[1], reps[2], s.ord, mu, s.pol, method, s.cfg.tol);
      row.terms = d.product_terms;
      row.pvl = d.product_vs_linear;
      row.lin = d.linear_eq;
      row.coc = d.cocycle;
      row.gnf = d.gnf;
      row.abb = d.abb;
      row.uvw = d.uvw;
      row.shift = d.shift_lemma;
      if (!d.failed_check.empty()) {
        row.error = d.failed_check + "/" + d.error;
        return;
      }
      row.status = d.pass ? "pass" : "fail";
      return;
    }
    const OperatorMatrix fl = f_linear(reps[0], reps[1], s.ord, mu);
    const ProductResult p = f_product(reps[0], reps[1], s.ord, mu, s.pol);
    row.terms = p.terms;
    row.tail = p.tail;
    const auto d1 = static_cast<Eigen::Index>(reps[0].dim());
    const OperatorMatrix b2 = kron(OperatorMatrix::Identity(d1, d1), b_matrix(reps[1], mu));
    const OperatorMatrix rinv = rhat_inverse(reps[0], reps[1], s.ord);
    row.pvl = relative_residual(p.f, fl);
    row.lin = std::max(relative_residual(fl * b2, rinv * b2 * fl), relative_residual(p.f * b2, rinv * b2 * p.f));
    row.status = row.pvl <= s.cfg.tol && row.lin <= s.cfg.tol ? "pass" : "fail";
  } catch (const Error& e) {
    row.error = std::string(to_string(e.kind()));
  }
}

int cmd_sweep(const Setup& s, std::ostream& out) {
  std::vector<double> qs{s.cfg.q};
  std::vector<std::vector<double>> mus;
  bool mu_grid = false;
  if (!s.cfg.mu.empty()) mus.push_back(parse_mu(s.cfg.mu, s.rs->rank));
  for (const auto& g : s.cfg.grid) {
    const auto eq = g.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::MalformedInput, "--grid expects mu=a:b:s or q=a:b:s");
    const std::string key = g.substr(0, eq);
    const std::vector<double> vals = parse_range(g.substr(eq + 1));
    if (key == "q") {
      for (double v : vals)
        if (!(v > 0.0 && v < 1.0)) throw Error(ErrorKind::MalformedInput, "grid q outside (0,1)");
      qs = vals;
    } else if (key == "mu") {
      mus.clear();
      mu_grid = true;
      for (double v : vals) mus.emplace_back(s.rs->rank, v);
    } else {
      throw Error(ErrorKind::MalformedInput, "unknown grid axis '" + key + "'");
    }
  }
  if (mus.empty() && !mu_grid) throw Error(ErrorKind::MalformedInput, "sweep needs --mu or a mu grid");

  std::vector<SweepRow> rows;
  for (double q : qs)
    for (const auto& m : mus) {
      SweepRow r;
      r.q = q;
      r.m = m;
      rows.push_back(std::move(r));
    }
  std::atomic<std::size_t> next{0};
  const std::size_t nthreads =
      std::max<std::size_t>(1, std::min<std::size_t>(rows.size(), std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < nthreads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < rows.size(); i = next++) eval_row(s, rows[i]);
    });
  for (auto& th : pool) th.join();

  std::ostringstream csv;
  csv << "index,q,mu,x,min_margin,terms,tail,product_vs_linear,linear_eq,cocycle,gnf,abb,uvw,shift_lemma,status,error\n";
  bool any_error = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    std::string mu, x;
    for (std::size_t k = 0; k < r.m.size(); ++k) {
      mu += (k ? ";" : "") + num17(r.m[k]);
      x += (k ? ";" : "") + num17(std::pow(r.q, -r.m[k]));
    }
    csv << i << "," << num17(r.q) << "," << mu << "," << x << "," << num17(r.min_margin) << "," << r.terms << ","
        << sci(r.tail) << "," << sci(r.pvl) << "," << sci(r.lin) << "," << sci(r.coc) << "," << sci(r.gnf) << ","
        << sci(r.abb) << "," << sci(r.uvw) << "," << sci(r.shift) << "," << r.status << "," << r.error << "\n";
    any_error = any_error || r.status == "error";
  }
  if (s.cfg.out.empty())
    out << csv.str();
  else {
    write_text_file(s.cfg.out, csv.str());
    out << rows.size() << " rows -> " << s.cfg.out << "\n";
  }
  return any_error ? kExitEval : kExitPass;
}

int cmd_validate_rep(RunConfig cfg, bool q_given, std::ostream& out) {
  fill_defaults_from_files(cfg, q_given);
  if (cfg.algebra.empty()) throw Error(ErrorKind::MalformedInput, "--algebra is required");
  const auto specs = split(cfg.reps, ',');
  if (specs.size() != 1) throw Error(ErrorKind::MalformedInput, "validate-rep takes one representation");
  Representation rep;
  if (specs[0].rfind("file:", 0) == 0)
    rep = rep_from_json(read_json_file(specs[0].substr(5)));
  else
    rep = parse_rep_spec(specs[0], parse_algebra(cfg.algebra), cfg.q);
  if (rep.rs->algebra_id != parse_algebra(cfg.algebra))
    throw Error(ErrorKind::AlgebraMismatch, "file algebra differs from --algebra");
  const RepReport r = validate_rep(rep, std::min(cfg.tol, 1e-11));
  Json j;
  j["command"] = "validate-rep";
  j["timestamp"] = timestamp();
  j["algebra"] = to_string(rep.rs->algebra_id);
  j["label"] = rep.label;
  j["dim"] = rep.dim();
  j["ledger_hash"] = ledger_hash();
  j["report"] = to_json(r);
  if (!cfg.out.empty()) write_json_file(cfg.out, j);
  out << "weight=" << sci(r.weight) << " ef=" << sci(r.ef) << " serre=" << sci(r.serre) << " parity=" << sci(r.parity);
  for (const auto& f : r.failed) out << " failed:" << f;
  out << (r.pass ? " PASS" : " FAIL") << "\n";
  return r.pass ? kExitPass : kExitFail;
}

int cmd_export_rep(const Setup& s, std::ostream& out) {
  if (s.reps.size() != 1) throw Error(ErrorKind::MalformedInput, "export-rep takes one representation");
  if (s.cfg.out.empty()) throw Error(ErrorKind::MalformedInput, "export-rep needs --out");
  write_json_file(s.cfg.out, rep_to_json(s.reps[0]));
  out << s.reps[0].label << " dim=" << s.reps[0].dim() << " -> " << s.cfg.out << "\n";
  return kExitPass;
}

}  // namespace

Representation parse_rep_spec(const std::string& spec, AlgebraId id, double q) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  auto need = [&](AlgebraId want) {
    if (id != want) throw Error(ErrorKind::AlgebraMismatch, "'" + spec + "' is not a " + to_string(id) + " representation");
  };
  if (kind == "spin") {
    need(AlgebraId::A1);
    return spin_rep_sl2(parse_spin(arg), q);
  }
  if (kind == "vector") {
    switch (id) {
      case AlgebraId::A1: return vector_rep_sln(2, q);
      case AlgebraId::A2: return vector_rep_sln(3, q);
      case AlgebraId::A3: return vector_rep_sln(4, q);
      default: throw Error(ErrorKind::AlgebraMismatch, "vector representation needs an A-series algebra");
    }
  }
  if (kind == "osp3") {
    need(AlgebraId::OSP12);
    return osp12_rep(q);
  }
  if (kind == "spinor") {
    need(AlgebraId::B2);
    return spinor_rep_b2(q);
  }
  if (kind == "file") {
    Representation r = rep_from_json(read_json_file(arg));
    if (r.rs->algebra_id != id) throw Error(ErrorKind::AlgebraMismatch, arg + " holds a " + to_string(r.rs->algebra_id) + " representation");
    if (r.q != q) throw Error(ErrorKind::AlgebraMismatch, arg + " was built at a different q");
    return r;
  }
  throw Error(ErrorKind::MalformedInput, "unknown representation '" + spec + "'");
}

std::vector<double> parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw Error(ErrorKind::MalformedInput, "range must be a:b:step");
  const double a = parse_double(parts[0]), b = parse_double(parts[1]), step = parse_double(parts[2]);
  if (!(step > 0.0)) throw Error(ErrorKind::MalformedInput, "range step must be positive");
  std::vector<double> v;
  if (b < a) return v;
  const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
  for (std::size_t k = 0; k < n; ++k) v.push_back(a + static_cast<double>(k) * step);
  return v;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qdyn: quantum R-matrices and dynamical twists"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--algebra", cfg.algebra, "A1, A2, A3, B2 or OSP12 (aliases sl2, sl3, sl4, so5, osp(1|2))");
    sub->add_option("--reps", cfg.reps, "comma list: spin:J, vector, osp3, spinor, file:PATH");
    sub->add_option("--q", cfg.q, "deformation parameter in (0,1)");
    sub->add_option("--out", cfg.out, "output file or directory");
    sub->add_option("--tol", cfg.tol, "residual tolerance");
  };
  auto add_dyn = [&](CLI::App* sub) {
    sub->add_option("--mu", cfg.mu, "pairings (mu|alpha_i), comma list; one value is used for all i");
    sub->add_option("--method", cfg.method, "product, linear or both");
    sub->add_option("--max-terms", cfg.max_terms, "product truncation cap");
    sub->add_option("--stop-tol", cfg.stop_tol, "product stopping tolerance");
    sub->add_option("--ordering", cfg.ordering, "index of the shipped normal ordering");
  };
  CLI::App* compute = app.add_subcommand("compute", "write R-hat, K, R, B, F and R_dyn for two representations");
  CLI::App* verify = app.add_subcommand("verify", "run the static and dynamical identity checks on three representations");
  CLI::App* sweep = app.add_subcommand("sweep", "tabulate margins, truncation and residuals over a grid");
  CLI::App* validate = app.add_subcommand("validate-rep", "check the defining relations of a representation");
  CLI::App* exporter = app.add_subcommand("export-rep", "write a shipped representation to a file");
  for (auto* sub : {compute, verify, sweep, validate, exporter}) add_common(sub);
  for (auto* sub : {compute, verify, sweep}) add_dyn(sub);
  sweep->add_option("--grid", cfg.grid, "mu=a:b:step or q=a:b:step; repeat for a Cartesian product");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  CLI::App* sub = app.get_subcommands().front();
  const bool q_given = sub->count("--q") > 0;
  try {
    if (sub == validate) return cmd_validate_rep(cfg, q_given, out);
    if (sub == compute) return cmd_compute(resolve(cfg, q_given, 2, 2, true), out);
    if (sub == exporter) return cmd_export_rep(resolve(cfg, q_given, 1, 1, false), out);
    if (sub == sweep) {
      const Setup s = resolve(cfg, q_given, 2, 3, false);
      return cmd_sweep(s, out);
    }
    const Setup s = resolve(cfg, q_given, 3, 3, true);
    return cmd_verify(s, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? kExitInput : kExitEval;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitEval;
  }
}

}  // namespace qdyn
