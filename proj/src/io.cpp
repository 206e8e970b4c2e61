#include "nilsoliton/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace nilsoliton::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw LoadError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int integer_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw LoadError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

Operator parse_matrix(const Json& j, int n, const char* key) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw LoadError(std::string("'") + key + "' must be a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  Operator m(n, n);
  for (int r = 0; r < n; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw LoadError(std::string("'") + key + "' has a malformed row");
    for (int c = 0; c < n; ++c) {
      if (!row[c].is_number()) throw LoadError(std::string("'") + key + "' entries must be numbers");
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

StructureTensor parse_structure(const Json& j, int n) {
  if (!j.is_object()) throw LoadError("'structure' must be an object");
  const Json& kind_field = field(j, "kind");
  if (!kind_field.is_string()) throw LoadError("structure kind must be a string");
  const auto kind = parse_structure_kind(kind_field.get<std::string>());
  if (!kind) throw LoadError("unknown structure kind '" + kind_field.get<std::string>() + "'");
  switch (*kind) {
    case StructureKind::none: return StructureTensor::none();
    case StructureKind::symplectic: return StructureTensor::symplectic(parse_matrix(field(j, "J"), n, "J"));
    case StructureKind::complex: return StructureTensor::complex(parse_matrix(field(j, "J"), n, "J"));
    case StructureKind::hypercomplex:
      return StructureTensor::hypercomplex(parse_matrix(field(j, "J"), n, "J"), parse_matrix(field(j, "J2"), n, "J2"),
                                           parse_matrix(field(j, "J3"), n, "J3"));
  }
  return StructureTensor::none();
}

void dump_into(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      if (flat) {
        out << "{";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
          if (!first) out << ", ";
          first = false;
          out << Json(it.key()).dump() << ": ";
          dump_into(out, it.value(), indent + 1);
        }
        out << "}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << inner << Json(it.key()).dump() << ": ";
        dump_into(out, it.value(), indent + 1);
      }
      out << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      if (flat) {
        out << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out << ", ";
          dump_into(out, j[i], indent + 1);
        }
        out << "]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ",\n";
        out << inner;
        dump_into(out, j[i], indent + 1);
      }
      out << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float: out << format_number(j.get<double>()); return;
    default: out << j.dump(); return;
  }
}

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  // Keep floats recognisable as such after a round trip.
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

Document parse_document(const Json& j) {
  if (!j.is_object()) throw LoadError("bracket document must be a JSON object");
  const int n = integer_field(j, "dim");
  if (n <= 0) throw LoadError("'dim' must be positive");
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw LoadError("'terms' must be an array");
  std::vector<Term> parsed;
  parsed.reserve(terms.size());
  for (const Json& t : terms) {
    const int i = integer_field(t, "i");
    const int jj = integer_field(t, "j");
    const int k = integer_field(t, "k");
    const Json& c = field(t, "c");
    if (!c.is_number()) throw LoadError("term coefficient 'c' must be a number");
    parsed.push_back({i - 1, jj - 1, k - 1, c.get<double>()});
  }
  Document doc{Bracket(n), StructureTensor::none()};
  try {
    doc.bracket = Bracket(n, std::move(parsed));
  } catch (const InvalidTerm& e) {
    throw LoadError(e.what());
  }
  if (j.contains("structure") && !j.at("structure").is_null()) doc.structure = parse_structure(j.at("structure"), n);
  return doc;
}

Document parse_text(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw LoadError(std::string("invalid JSON: ") + e.what());
  }
  return parse_document(j);
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_text(text.str());
}

Json to_json(const Operator& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(number(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

Json to_json(const StructureTensor& gamma) {
  Json out;
  out["kind"] = std::string(to_string(gamma.kind));
  static const char* keys[] = {"J", "J2", "J3"};
  for (std::size_t i = 0; i < gamma.operators.size() && i < 3; ++i) out[keys[i]] = to_json(gamma.operators[i]);
  return out;
}

Json to_json(const Bracket& b, const StructureTensor& gamma) {
  Json out;
  out["dim"] = b.dim();
  Json terms = Json::array();
  for (const Term& t : b.terms()) terms.push_back({{"i", t.i + 1}, {"j", t.j + 1}, {"k", t.k + 1}, {"c", t.c}});
  out["terms"] = std::move(terms);
  if (gamma.kind != StructureKind::none) out["structure"] = to_json(gamma);
  return out;
}

Json to_json(const ValidationReport& r) {
  Json out;
  out["jacobi_residual"] = number(r.jacobi_residual);
  out["nilpotency_step"] = r.nilpotency_step ? Json(*r.nilpotency_step) : Json("not nilpotent");
  out["lcs_dims"] = r.lcs_dims;
  return out;
}

Json to_json(const StructureResiduals& r) {
  return {{"square", number(r.square)}, {"orthogonal", number(r.orthogonal)}, {"quaternion", number(r.quaternion)}};
}

Json to_json(const StructureClassification& c) {
  Json out = Json::object();
  auto put = [&](const char* key, const std::optional<Predicate>& p) {
    if (p) out[key] = {{"holds", p->holds}, {"residual", number(p->residual)}};
  };
  put("integrable", c.integrable);
  put("abelian", c.abelian);
  put("bi_invariant", c.bi_invariant);
  put("closed", c.closed);
  return out;
}

Json to_json(const CurvatureReport& r) {
  return {{"ricci", to_json(r.ricci)},
          {"invariant_ricci", to_json(r.invariant_ricci)},
          {"scal", number(r.scal)},
          {"kind", std::string(to_string(r.kind))}};
}

Json to_json(const MinimalityCertificate& c) {
  Json out;
  out["c"] = number(c.c);
  out["D"] = to_json(c.derivation);
  out["residual"] = number(c.residual);
  out["eigenvalue_type"] = c.eigenvalue_type ? Json(*c.eigenvalue_type) : Json(nullptr);
  out["derivation_spectrum"] = to_json(c.derivation_spectrum);
  out["kind"] = std::string(to_string(c.kind));
  out["integrability_residual"] = number(c.integrability_residual);
  return out;
}

Json to_json(const ComparisonReport& r) {
  return {{"verdict", std::string(to_string(r.verdict))},
          {"spectral_gap", number(r.spectral_gap)},
          {"spectrum_first", to_json(r.spectrum_first)},
          {"spectrum_second", to_json(r.spectrum_second)},
          {"residual_first", number(r.residual_first)},
          {"residual_second", number(r.residual_second)}};
}

Json to_json(const EinsteinVerdict& v) {
  return {{"einstein", v.einstein},
          {"constant", number(v.constant)},
          {"deviation", number(v.deviation)},
          {"ricci", to_json(v.ricci)}};
}

std::string dump(const Json& j) {
  std::ostringstream out;
  dump_into(out, j, 0);
  out << "\n";
  return out.str();
}

void write_trace_csv(std::ostream& out, const FlowTrace& trace) {
  out << "step,F,gradnorm\n";
  for (const auto& it : trace.iterates)
    out << it.step << "," << format_number(it.functional) << "," << format_number(it.gradient_norm) << "\n";
}

}  // namespace nilsoliton::io
