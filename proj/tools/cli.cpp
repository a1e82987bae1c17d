#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>

#include "whmf/basis.hpp"
#include "whmf/cache.hpp"
#include "whmf/errors.hpp"
#include "whmf/theorems.hpp"
#include "whmf/zeros.hpp"

namespace whmf {

namespace {

using nlohmann::json;

struct ExpandOptions {
  std::string object;
  int level = 2;
  int weight = 0;
  std::string chi = "1";
  int m = 0;
  int precision = 200;
  std::string format = "text";
  bool no_cache = false;
};

struct VerifyOptions {
  std::string suite = "all";
  int level = 2;
  std::string chi;
  std::optional<int> weight;
  int precision = 200;
  std::string out_file;
  std::string format = "json";
  bool timing = false;
};

struct ZerosOptions {
  int level = 2;
  int weight = 4;
  std::string chi = "1";
  int grid = 200;
  int precision = 200;
  bool emit_csv = false;
};

json document(const std::string& schema) { return json{{"schema", "whmf/" + schema + "/1"}, {"version", artifact_version()}}; }

// The payload of a primary object, through the cache unless disabled.
json primary(const ExpandOptions& o, const CacheKey& key, const std::function<json()>& compute) {
  if (o.no_cache) return compute();
  return Cache::from_env().get_or_compute(key, compute);
}

json expand_payload(const ExpandOptions& o) {
  const LevelData level(o.level);
  const int p = o.precision;
  if (o.object == "delta") {
    return primary(o, {"delta", o.level, level.k1(), "psi^k1", 0, p}, [&] { return series_to_json(delta_N(level, p)); });
  }
  if (o.object == "j") {
    return primary(o, {"j", o.level, 0, "1", 0, p}, [&] {
      const Hauptmodul h = hauptmodul(level, p);
      json c = json::array();
      for (const Integer& x : h.c) c.push_back(x.get_str());
      json j = series_to_json(h.series);
      j["c"] = c;
      return j;
    });
  }
  const CharacterPlus chi = parse_character(level, o.chi);
  if (o.object == "eisenstein-plus") {
    return primary(o, {"eisenstein-plus", o.level, o.weight, chi.name(), 0, p}, [&] {
      ProjectionConfig config;
      config.precision = p;
      PlusEisenstein e;
      try {
        e = project_plus(level, o.weight, chi, config);
      } catch (const MathError& ex) {
        if (ex.kind() != ErrorKind::ReconstructionFailed) throw;
        const QuadraticSeries q = plus_series_quadratic(level, o.weight, chi, p, config);
        return json{{"sqrt", q.d}, {"rational_part", series_to_json(q.a)}, {"sqrt_part", series_to_json(q.b)}};
      }
      json j = series_to_json(e.series);
      const VerificationRecord& r = e.record;
      j["verification"] = {{"basis_size", r.basis_size},
                           {"independent_size", r.independent_size},
                           {"nullspace_dimension", r.nullspace_dimension},
                           {"span_membership", r.span_membership},
                           {"heldout_residual_below", config.residual_tolerance},
                           {"evaluation_terms", r.evaluation_terms}};
      if (r.closed_form_match) j["verification"]["closed_form_match"] = *r.closed_form_match;
      return j;
    });
  }
  if (o.object == "f") {
    return primary(o, {"f", o.level, o.weight, chi.name(), o.m, p}, [&] {
      const BasisElement f = f_basis(level, chi, o.weight, o.m, p);
      json j = series_to_json(f.series);
      json faber = json::array();
      for (const Rational& c : f.faber) faber.push_back(c.get_str());
      j["faber"] = faber;
      j["k_prime"] = f.k_prime;
      j["ell"] = f.ell;
      j["degree"] = f.degree;
      return j;
    });
  }
  if (o.object == "eisenstein-basis") {
    json rows = json::array();
    for (const EisBasisElement& b : eisenstein_basis(level, o.weight, chi.restriction(), p)) {
      json row = series_to_json(b.series);
      row["label"] = b.label();
      row["k"] = b.weight;
      row["chi1"] = b.chi1.to_string();
      row["chi2"] = b.chi2.to_string();
      row["scale"] = b.scale;
      rows.push_back(row);
    }
    return json{{"rows", rows}};
  }
  if (o.object == "holomorphic-basis") {
    json rows = json::array();
    for (const QSeries& s : holomorphic_basis(level, chi, o.weight, p)) rows.push_back(series_to_json(s));
    return json{{"rows", rows}, {"k_prime", k_min(level, chi, o.weight)}};
  }
  throw MathError(ErrorKind::Usage, "unknown object " + o.object);
}

std::string series_text(const json& s) {
  return series_from_json(s).to_string(s.at("precision").get<int>() - s.at("valuation").get<int>());
}

void print_series_text(std::ostream& out, const json& s) { out << series_text(s) << '\n'; }

void print_series_csv(std::ostream& out, const json& s) {
  const QSeries q = series_from_json(s);
  out << "n,coefficient\n";
  for (int n = q.valuation(); n < q.precision(); ++n) out << n << ',' << q.coeff(n).get_str() << '\n';
}

int run_expand(const ExpandOptions& o, std::ostream& out) {
  const json payload = expand_payload(o);
  if (o.format == "json") {
    json doc = document("expand");
    doc["object"] = o.object;
    doc["level"] = o.level;
    if (o.object != "delta" && o.object != "j") {
      doc["weight"] = o.weight;
      doc["chi"] = parse_character(LevelData(o.level), o.chi).name();
    }
    if (o.object == "f") doc["m"] = o.m;
    doc.update(payload);
    out << doc.dump(2) << '\n';
    return 0;
  }
  const bool csv = o.format == "csv";
  if (payload.contains("sqrt")) {
    const std::string root = "sqrt(" + std::to_string(payload["sqrt"].get<int>()) + ")";
    if (csv) {
      out << "# rational part\n";
      print_series_csv(out, payload["rational_part"]);
      out << "# " << root << " part\n";
      print_series_csv(out, payload["sqrt_part"]);
    } else {
      out << series_text(payload["rational_part"]) << "\n+ " << root << " * (" << series_text(payload["sqrt_part"]) << ")\n";
    }
    return 0;
  }
  if (payload.contains("rows")) {
    for (const json& row : payload["rows"]) {
      if (row.contains("label")) out << (csv ? "# " : "") << row["label"].get<std::string>() << '\n';
      csv ? print_series_csv(out, row) : print_series_text(out, row);
    }
    return 0;
  }
  csv ? print_series_csv(out, payload) : print_series_text(out, payload);
  if (!csv && payload.contains("faber")) {
    out << "faber:";
    for (const auto& c : payload["faber"]) out << ' ' << c.get<std::string>();
    out << '\n';
  }
  return 0;
}

int run_verify(const VerifyOptions& o, std::ostream& out) {
  const LevelData level(o.level);
  std::vector<std::string> suites;
  if (o.suite == "all") {
    suites = suite_names();
  } else {
    suites.push_back(o.suite);
  }
  json reports = json::array();
  bool passed = true;
  std::vector<VerificationReport> all;
  for (const std::string& s : suites) {
    for (VerificationReport& r : run_suite(s, level, o.chi, o.weight, o.precision)) {
      passed &= r.passed;
      reports.push_back(r.to_json(o.timing));
      all.push_back(std::move(r));
    }
  }
  std::string text;
  if (o.format == "text") {
    for (const auto& r : all) {
      text += r.suite + " " + r.parameters.dump() + " " + (r.passed ? "PASS" : "FAIL " + r.witness.dump()) + "\n";
    }
  } else {
    json doc = document("verify");
    doc["level"] = o.level;
    doc["suites"] = suites;
    doc["passed"] = passed;
    doc["reports"] = reports;
    text = doc.dump(2) + "\n";
  }
  if (o.out_file.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out_file);
    if (!f) throw MathError(ErrorKind::Usage, "cannot write " + o.out_file);
    f << text;
  }
  return passed ? 0 : 1;
}

int run_zeros(const ZerosOptions& o, std::ostream& out) {
  const LevelData level(o.level);
  const ArcSpec arc = arc_spec(o.level);
  const CharacterPlus chi = parse_character(level, o.chi);
  const QuadraticSeries e = plus_series_quadratic(level, o.weight, chi, o.precision);
  json doc = document("zeros");
  doc["level"] = o.level;
  doc["weight"] = o.weight;
  doc["chi"] = chi.name();
  bool passed = true;
  RealityReport r;
  try {
    r = reality_on_arc(e, o.weight, chi, arc, o.grid);
  } catch (const MathError& ex) {
    if (ex.kind() != ErrorKind::RealityFailure) throw;
    doc["reality"] = {{"passed", false}, {"error", ex.what()}};
    out << doc.dump(2) << '\n';
    return 1;
  }
  if (o.emit_csv) {
    out << "piece,theta,h\n";
    char buf[96];
    for (const ArcSample& s : r.samples) {
      std::snprintf(buf, sizeof buf, "%d,%.12f,%.15e\n", s.piece, s.angle, s.h.re.convert_to<double>());
      out << buf;
    }
    return 0;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1e", r.max_imag);
  doc["reality"] = {{"passed", true}, {"points", r.points}, {"max_imag", buf}};
  doc["sign_changes"] = count_sign_changes(r);
  const WindingReport w = certify_no_offarc_zeros(e, o.level);
  json cells = json::array();
  for (const auto& [x, y] : w.zero_cells) cells.push_back({x, y});
  std::snprintf(buf, sizeof buf, "%.3e", w.tail_above);
  doc["winding"] = {{"cells", w.cells},           {"arc_adjacent", w.arc_adjacent}, {"subdivided", w.subdivided},
                    {"nonzero_cells", cells},     {"tail_above", buf},              {"tail_certified", w.tail_certified},
                    {"domain", "|Re z| <= 1/2 above the arc circles, Im z <= 2 (an under-claim of the fundamental domain)"}};
  passed = w.zero_cells.empty() && w.tail_certified;
  doc["passed"] = passed;
  out << doc.dump(2) << '\n';
  return passed ? 0 : 1;
}

int run_cache(const std::string& action, std::ostream& out) {
  const Cache cache = Cache::from_env();
  if (action == "path") {
    out << cache.dir().string() << '\n';
    return 0;
  }
  if (action == "clear") {
    out << "removed " << cache.clear() << " entries\n";
    return 0;
  }
  bool ok = true;
  for (const auto& e : cache.entries()) {
    ok &= e.valid;
    if (action == "list" || !e.valid) out << (e.valid ? "ok      " : "corrupt ") << e.path.filename().string() << ' ' << e.key << '\n';
  }
  if (action == "verify") out << (ok ? "all entries valid\n" : "invalid entries found\n");
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weakly holomorphic modular forms for the genus zero groups Gamma_0(N)^+", "whmf"};
  app.require_subcommand(1);
  app.set_version_flag("--version", artifact_version());

  const std::vector<std::string> formats{"text", "json", "csv"};

  ExpandOptions eo;
  auto* expand = app.add_subcommand("expand", "Print the q-expansion of an object");
  expand->add_option("--object", eo.object, "delta, eisenstein-basis, eisenstein-plus, j, f, holomorphic-basis")
      ->required()
      ->check(CLI::IsMember({"delta", "eisenstein-basis", "eisenstein-plus", "j", "f", "holomorphic-basis"}));
  expand->add_option("--level", eo.level, "N in 2,3,5,6,7,11,14,15,23")->required();
  expand->add_option("--weight", eo.weight, "weight k");
  expand->add_option("--char", eo.chi, "1, psi, psi^r, psi^k1, xi7, psi^2*xi15, ...");
  expand->add_option("--m", eo.m, "index m of f_{k,m}");
  expand->add_option("--precision,--terms", eo.precision, "known to O(q^P)")->check(CLI::PositiveNumber);
  expand->add_option("--format", eo.format)->check(CLI::IsMember(formats));
  expand->add_flag("--no-cache", eo.no_cache, "bypass WHMF_CACHE_DIR");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Run theorem suites; exit 0 iff all pass");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("--suite", vo.suite)->check(CLI::IsMember(suites));
  verify->add_option("--level", vo.level)->required();
  verify->add_option("--char", vo.chi);
  verify->add_option("--weight", vo.weight);
  verify->add_option("--precision", vo.precision)->check(CLI::PositiveNumber);
  verify->add_option("--out", vo.out_file, "write the report here instead of standard output");
  verify->add_option("--format", vo.format)->check(CLI::IsMember({"text", "json"}));
  verify->add_flag("--timing", vo.timing, "include wall times (makes output time dependent)");

  ZerosOptions zo;
  auto* zeros = app.add_subcommand("zeros", "Zeros of low weight Eisenstein series on the arcs");
  zeros->add_option("--level", zo.level)->required()->check(CLI::IsMember({2, 3, 5}));
  zeros->add_option("--weight", zo.weight)->required();
  zeros->add_option("--char", zo.chi);
  zeros->add_option("--grid", zo.grid, "sample points per arc piece")->check(CLI::Range(2, 100000));
  zeros->add_flag("--emit-csv", zo.emit_csv, "print (theta, h(theta)) samples");

  std::string cache_action;
  auto* cache = app.add_subcommand("cache", "Inspect the on-disk cache");
  cache->add_option("action", cache_action)->required()->check(CLI::IsMember({"path", "list", "verify", "clear"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*expand) return run_expand(eo, out);
    if (*verify) return run_verify(vo, out);
    if (*zeros) return run_zeros(zo, out);
    if (*cache) return run_cache(cache_action, out);
  } catch (const MathError& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::Usage:
      case ErrorKind::BadCharacter:
      case ErrorKind::UnsupportedLevel:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace whmf
