#include "nilsoliton/cli.hpp"

#include "nilsoliton/catalog.hpp"
#include "nilsoliton/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace nilsoliton::cli {

namespace {

using io::Json;

void error_line(std::ostream& err, const std::string& code, const std::string& message) {
  err << Json{{"error", code}, {"message", message}}.dump() << "\n";
}

Tolerances tolerances_from_env() {
  Tolerances tol;
  const char* env = std::getenv("NILSOLITON_TOL");
  if (!env || !*env) return tol;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0)) throw LoadError(std::string("NILSOLITON_TOL is not a positive number: ") + env);
  tol.minimal = v;
  tol.structure = v;
  tol.spectrum = v;
  return tol;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw LoadError("cannot write '" + path + "'");
  f << text;
}

double jacobi_cutoff(const Bracket& b, const Tolerances& tol) {
  const double m = b.max_coefficient();
  return tol.structure * std::max(1.0, m * m);
}

void require_valid(const Bracket& b, const Tolerances& tol) {
  if (!validate(b, tol).valid(jacobi_cutoff(b, tol)))
    throw InvalidBracket("input is not a nilpotent Lie bracket");
}

// Residual the minimality decision is made on: that of the scal = -1 rescaling.
double normalized_residual(const Bracket& b, double residual) {
  const double norm2 = b.squared_norm();
  return norm2 > 0 ? residual * 4.0 / norm2 : residual;
}

int cmd_check(const std::string& file, const Tolerances& tol, std::ostream& out) {
  const io::Document doc = io::load_document(file);
  const ValidationReport report = validate(doc.bracket, tol);
  const StructureResiduals residuals = check_structure(doc.structure);
  const bool structure_ok = residuals.ok(tol.structure);
  Json structure;
  structure["kind"] = std::string(to_string(doc.structure.kind));
  structure["residuals"] = io::to_json(residuals);
  structure["well_formed"] = structure_ok;
  if (structure_ok) structure["classification"] = io::to_json(classify(doc.structure, doc.bracket, tol));
  const bool valid = report.valid(jacobi_cutoff(doc.bracket, tol)) && structure_ok;
  out << io::dump({{"valid", valid}, {"validation", io::to_json(report)}, {"structure", structure}});
  return valid ? ok : invalid;
}

int cmd_ricci(const std::string& file, const Tolerances& tol, std::ostream& out) {
  const io::Document doc = io::load_document(file);
  require_valid(doc.bracket, tol);
  out << io::dump(io::to_json(curvature(doc.bracket, doc.structure)));
  return ok;
}

int cmd_certify(const std::string& file, double threshold, const Tolerances& tol, std::ostream& out) {
  const io::Document doc = io::load_document(file);
  require_valid(doc.bracket, tol);
  const MinimalityCertificate cert = certify(doc.bracket, doc.structure, tol);
  const double normalized = normalized_residual(doc.bracket, cert.residual);
  Json report = io::to_json(cert);
  report["normalized_residual"] = normalized;
  report["minimal"] = normalized < threshold;
  out << io::dump(report);
  return normalized < threshold ? ok : not_minimal;
}

struct FlowArgs {
  std::string file;
  FlowOptions options;
  std::string out_path;
  std::string report_path;
};

int cmd_flow(const FlowArgs& args, const Tolerances& tol, std::ostream& out, std::ostream& err) {
  const io::Document doc = io::load_document(args.file);
  require_valid(doc.bracket, tol);
  FlowOptions options = args.options;
  options.tolerances = tol;
  const FlowTrace trace = flow_minimize(doc.bracket, doc.structure, options);

  std::ostringstream csv;
  io::write_trace_csv(csv, trace);
  Json report;
  report["stop"] = std::string(to_string(trace.stop));
  report["converged"] = trace.converged;
  report["iterations"] = trace.iterates.empty() ? 0 : trace.iterates.back().step;
  report["final_bracket"] = io::to_json(trace.final_bracket, doc.structure);
  report["certificate"] = io::to_json(trace.final_certificate);
  report["residual_gradient_ratio"] = trace.residual_gradient_ratio;
  double orbit = 0;
  for (const auto& it : trace.iterates) orbit = std::max(orbit, it.orbit_residual);
  report["max_orbit_residual"] = orbit;

  std::string report_path = args.report_path;
  if (report_path.empty() && !args.out_path.empty()) report_path = args.out_path + ".json";
  if (args.out_path.empty())
    out << csv.str();
  else
    write_file(args.out_path, csv.str());
  if (report_path.empty())
    err << io::dump(report);
  else
    write_file(report_path, io::dump(report));
  return trace.converged ? ok : not_minimal;
}

int cmd_extend(const std::string& file, const std::string& out_path, const Tolerances& tol, std::ostream& out,
               std::ostream& err) {
  const io::Document doc = io::load_document(file);
  require_valid(doc.bracket, tol);
  const MinimalityCertificate cert = certify(doc.bracket, StructureTensor::none(), tol);
  // Same decision as certify: the threshold applies at scal = -1.
  Tolerances scaled = tol;
  scaled.minimal = tol.minimal * std::max(doc.bracket.squared_norm(), 1e-300) / 4.0;
  MetricSolvableAlgebra s;
  try {
    s = rank_one_extension(doc.bracket, cert, scaled);
  } catch (const Error& e) {
    if (e.code() == "NotMinimal" || e.code() == "AbelianDerivation" || e.code() == "NonPositiveTrace") {
      error_line(err, e.code(), e.what());
      return not_minimal;
    }
    throw;
  }
  const EinsteinVerdict verdict = einstein_check(s);
  const Json bracket = io::to_json(s.bracket);
  if (!out_path.empty()) write_file(out_path, io::dump(bracket));
  out << io::dump({{"certificate", io::to_json(cert)}, {"extension", bracket}, {"einstein", io::to_json(verdict)}});
  return ok;
}

int cmd_compare(const std::string& first, const std::string& second, const Tolerances& tol, std::ostream& out) {
  const io::Document a = io::load_document(first);
  const io::Document b = io::load_document(second);
  require_valid(a.bracket, tol);
  require_valid(b.bracket, tol);
  const ComparisonReport report = compare(a.bracket, a.structure, b.bracket, b.structure, tol);
  out << io::dump(io::to_json(report));
  return report.verdict == Comparison::distinct ? ok : inconclusive;
}

int cmd_catalog(const std::vector<std::string>& words, const std::string& out_path, std::ostream& out) {
  if (words.empty()) {
    Json listing = Json::array();
    for (const auto& c : catalog::constructors())
      listing.push_back({{"name", c.name}, {"parameters", c.parameters}, {"domain", c.domain}, {"arity", c.arity}});
    out << io::dump(listing);
    return ok;
  }
  if (words[0] != "emit" || words.size() < 2) throw DomainError("usage: catalog [emit NAME PARAMS...]");
  std::vector<double> params;
  for (std::size_t i = 2; i < words.size(); ++i) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(words[i], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != words[i].size()) throw DomainError("parameter '" + words[i] + "' is not a number");
    params.push_back(v);
  }
  const catalog::Entry entry = catalog::emit(words[1], params);
  const std::string text = io::dump(io::to_json(entry.bracket, entry.structure));
  if (out_path.empty())
    out << text;
  else
    write_file(out_path, text);
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature, minimal metrics and Einstein extensions of nilpotent Lie brackets", "nilsoliton"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string file, second, out_path, report_path;
  double certify_tol = -1;
  FlowArgs flow;
  std::vector<std::string> catalog_words;

  auto* check = app.add_subcommand("check", "Validate a bracket file and its structure");
  check->add_option("FILE", file, "bracket file")->required();
  auto* ricci = app.add_subcommand("ricci", "Ricci and invariant Ricci operators");
  ricci->add_option("FILE", file, "bracket file")->required();
  auto* cert = app.add_subcommand("certify", "Minimality certificate Ric^gamma = cI + D");
  cert->add_option("FILE", file, "bracket file")->required();
  cert->add_option("--tol", certify_tol, "residual threshold (after scal = -1 normalization)");
  auto* fl = app.add_subcommand("flow", "Descend F inside the structure-group orbit");
  fl->add_option("FILE", flow.file, "bracket file")->required();
  fl->add_option("--step", flow.options.step0, "initial step");
  fl->add_option("--max-iter", flow.options.max_iter, "iteration limit");
  fl->add_option("--tol", flow.options.tol, "certificate residual to stop at");
  fl->add_option("--seed", flow.options.seed, "perturbation seed");
  fl->add_option("--perturb", flow.options.perturb, "size of the random start perturbation");
  fl->add_option("--out", flow.out_path, "CSV destination (default stdout)");
  fl->add_option("--report", flow.report_path, "report destination (default OUT.json, or stderr)");
  auto* ext = app.add_subcommand("extend", "Rank-one solvable extension and Einstein check");
  ext->add_option("FILE", file, "bracket file")->required();
  ext->add_option("--out", out_path, "write the extension bracket file here");
  auto* cmp = app.add_subcommand("compare", "Spectral non-isomorphism test");
  cmp->add_option("FILE1", file, "first bracket file")->required();
  cmp->add_option("FILE2", second, "second bracket file")->required();
  auto* cat = app.add_subcommand("catalog", "List catalog constructors or emit one");
  cat->add_option("WORDS", catalog_words, "emit NAME PARAMS...");
  cat->add_option("--out", out_path, "write the bracket file here");
  cat->allow_extras(false);

  std::vector<std::string> argv_storage{"nilsoliton"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    error_line(err, "UsageError", message);
    return malformed;
  }

  try {
    const Tolerances tol = tolerances_from_env();
    if (*check) return cmd_check(file, tol, out);
    if (*ricci) return cmd_ricci(file, tol, out);
    if (*cert) return cmd_certify(file, certify_tol > 0 ? certify_tol : tol.minimal, tol, out);
    if (*fl) return cmd_flow(flow, tol, out, err);
    if (*ext) return cmd_extend(file, out_path, tol, out, err);
    if (*cmp) return cmd_compare(file, second, tol, out);
    if (*cat) return cmd_catalog(catalog_words, out_path, out);
  } catch (const Error& e) {
    error_line(err, e.code(), e.what());
    const std::string code = e.code();
    return code == "InvalidBracket" || code == "NotIntegrable" ? invalid : malformed;
  } catch (const std::exception& e) {
    error_line(err, "InternalError", e.what());
    return malformed;
  }
  return malformed;
}

}  // namespace nilsoliton::cli
