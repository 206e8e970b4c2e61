#ifndef NILSOLITON_IO_HPP
#define NILSOLITON_IO_HPP

#include "nilsoliton/extension.hpp"
#include "nilsoliton/flow.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace nilsoliton::io {

using Json = nlohmann::json;

/// Contents of a bracket file: the bracket and its (possibly trivial) structure.
struct Document {
  Bracket bracket;
  StructureTensor structure;
};

/// Parses {"dim", "terms": [{"i","j","k","c"}], "structure"} with 1-based
/// indices. Throws LoadError on malformed input or a repeated (i,j,k).
Document parse_document(const Json& j);
Document parse_text(std::string_view text);
Document load_document(const std::string& path);

Json to_json(const Bracket& b, const StructureTensor& gamma = {});
Json to_json(const StructureTensor& gamma);
Json to_json(const Operator& m);
Json to_json(const Vector& v);
Json to_json(const ValidationReport& r);
Json to_json(const StructureResiduals& r);
Json to_json(const StructureClassification& c);
Json to_json(const CurvatureReport& r);
Json to_json(const MinimalityCertificate& c);
Json to_json(const ComparisonReport& r);
Json to_json(const EinsteinVerdict& v);

/// Deterministic text: sorted keys, two-space indent, numbers as %.17g,
/// arrays of scalars on one line, non-finite numbers as null.
std::string dump(const Json& j);

/// Flow trace as CSV with header "step,F,gradnorm".
void write_trace_csv(std::ostream& out, const FlowTrace& trace);

/// %.17g, the number format used in every report.
std::string format_number(double x);

}  // namespace nilsoliton::io

#endif  // NILSOLITON_IO_HPP
